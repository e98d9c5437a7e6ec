#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace voigt {

/// S1 = sum |y_i|, S2 = sum y_i^2.
struct SufficientStats {
    double s1 = 0.0;
    double s2 = 0.0;
    std::size_t n = 0;

    double mean_abs() const { return s1 / static_cast<double>(n); }
    double mean_square() const { return s2 / static_cast<double>(n); }
};

SufficientStats sufficient_stats(std::span<const double> sample);

struct SimplexConfig {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Spread of function values across the simplex.
    double tol = 1e-8;
    /// Largest vertex distance from the best vertex (max norm).
    double xtol = 1e-9;
    int max_iter = 500;
    int restarts = 3;

    void validate() const;
};

struct SimplexResult {
    std::vector<double> argmin;
    double value = 0.0;
    int iterations = 0;
    int evaluations = 0;
    int restarts_used = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Nelder-Mead downhill simplex. Non-finite objective values are treated as
/// +inf; if every probe of an iteration is non-finite the search throws
/// NonFinite. After convergence the simplex is rebuilt around the incumbent
/// up to cfg.restarts times while that still improves the minimum.
SimplexResult nelder_mead(const Objective& objective, std::span<const double> start,
                          const SimplexConfig& cfg = {});

enum class FitMethod { kML, kMoM };

const char* fit_method_name(FitMethod method);

struct FitResult {
    double gamma_hat = 0.0;
    double sigma_hat = 0.0;
    FitMethod method = FitMethod::kML;
    /// Latent truncated-normal mean and variance of |y|.
    double latent_m = 0.0;
    double latent_var = 1.0;
    double objective_value = 0.0;
    int iterations = 0;
    /// Optimizer converged, gamma_hat > 0 and (MoM) the moment residual vanished.
    bool converged = false;
};

struct BackMapped {
    double gamma = 0.0;
    double sigma2 = 0.0;
};

/// gamma = -m / var, sigma^2 = 1 / var. Throws NonPositiveVariance.
BackMapped back_map(double latent_m, double latent_var);

/// Negative mean log-likelihood of TruncNorm(0, inf, m, s^2) given the
/// sufficient statistics of |y|.
double truncnorm_neg_loglik(const SufficientStats& stats, double m, double log_s);

/// Maximum likelihood via |y| -> truncated normal fit -> back-mapping.
FitResult fit_ml(std::span<const double> sample, const SimplexConfig& cfg = {});

/// Moment matching of the mean and variance of |y| with the same back-mapping.
FitResult fit_mom(std::span<const double> sample, const SimplexConfig& cfg = {});

FitResult fit(std::span<const double> sample, FitMethod method, const SimplexConfig& cfg = {});

inline constexpr std::size_t kMinFitSampleSize = 10;
inline constexpr double kMomResidualTolerance = 1e-6;

}  // namespace voigt
