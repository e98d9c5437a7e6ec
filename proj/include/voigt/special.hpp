#pragma once

#include <complex>
#include <functional>
#include <span>

namespace voigt {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
inline constexpr double kSqrt2Pi = 2.50662827463100050241576528481104525;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;

// Error function family, W. J. Cody's rational Chebyshev approximations.
double erf(double x);
double erfc(double x);
/// exp(x^2) * erfc(x), finite for all x above about -26.6.
double erfcx(double x);

double std_normal_pdf(double x);
double std_normal_cdf(double x);
/// 1 - Phi(x) without cancellation for large positive x.
double std_normal_upper(double x);
/// log(1 - Phi(x)); stays finite far into both tails.
double log_std_normal_upper(double x);

/// Mills ratio R(t) = (1 - Phi(t)) / phi(t). Strictly positive.
double mills_ratio(double t);

/// Normal(mean_m, sd_s^2) truncated to [lower, +inf).
struct TruncNormSpec {
    double mean_m = 0.0;
    double sd_s = 1.0;
    double lower = 0.0;

    /// Standardized truncation point (lower - m) / s.
    double alpha() const { return (lower - mean_m) / sd_s; }
    void validate() const;
};

inline constexpr int kMaxTruncNormOrder = 8;

/// Raw moment E[T^order] by the two-term recursion seeded with the 0th and
/// 1st moments. Throws OrderTooHigh above kMaxTruncNormOrder.
double truncnorm_moment(const TruncNormSpec& spec, int order);

// Closed-form mean and variance, s^2 (1 + alpha*lambda - lambda^2) with
// lambda = 1 / R(alpha).
double truncnorm_mean(const TruncNormSpec& spec);
double truncnorm_variance(const TruncNormSpec& spec);

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 200;

    void validate() const;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature with global bisection. Either
/// bound may be infinite; infinite ranges are mapped onto finite ones with
/// t = x / (1 - x). Throws NonConvergence when the subdivision budget runs out.
QuadratureResult integrate_detailed(const std::function<double(double)>& f, double lower,
                                    double upper, const QuadratureConfig& cfg = {});

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureConfig& cfg = {});

/// Complex-valued integrand over [lower, +inf) or a finite range.
std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double lower, double upper,
    const QuadratureConfig& cfg = {});

/// Two-sample Kolmogorov-Smirnov statistic. Both inputs must be sorted.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// One-sample KS statistic of a sorted sample against a continuous cdf.
double ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Asymptotic critical value c * sqrt((n + m) / (n m)); c = 1.628 is the
/// alpha = 0.01 constant.
double ks_critical_two_sample(std::size_t n, std::size_t m, double c = 1.628);
double ks_critical_one_sample(std::size_t n, double c = 1.628);

}  // namespace voigt
