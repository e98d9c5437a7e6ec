#include "voigt/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "voigt/error.hpp"

namespace voigt {
namespace {

// Cody, "Rational Chebyshev approximations for the error function",
// Math. Comp. 23 (1969). Coefficients from the netlib specfun CALERF routine.
constexpr std::array<double, 5> kA = {3.16112374387056560e00, 1.13864154151050156e02,
                                      3.77485237685302021e02, 3.20937758913846947e03,
                                      1.85777706184603153e-1};
constexpr std::array<double, 4> kB = {2.36012909523441209e01, 2.44024637934444173e02,
                                      1.28261652607737228e03, 2.84423683343917062e03};
constexpr std::array<double, 9> kC = {5.64188496988670089e-1, 8.88314979438837594e00,
                                      6.61191906371416295e01, 2.98635138197400131e02,
                                      8.81952221241769090e02, 1.71204761263407058e03,
                                      2.05107837782607147e03, 1.23033935479799725e03,
                                      2.15311535474403846e-8};
constexpr std::array<double, 8> kD = {1.57449261107098347e01, 1.17693950891312499e02,
                                      5.37181101862009858e02, 1.62138957456669019e03,
                                      3.29079923573345963e03, 4.36261909014324716e03,
                                      3.43936767414372164e03, 1.23033935480374942e03};
constexpr std::array<double, 6> kP = {3.05326634961232344e-1, 3.60344899949804439e-1,
                                      1.25781726111229246e-1, 1.60837851487422766e-2,
                                      6.58749161529837803e-4, 1.63153871373020978e-2};
constexpr std::array<double, 5> kQ = {2.56852019228982242e00, 1.87295284992346047e00,
                                      5.27905102951428412e-1, 6.05183413124413191e-2,
                                      2.33520497626869185e-3};

constexpr double kInvSqrtPi = 5.6418958354775628695e-1;
constexpr double kThresh = 0.46875;
constexpr double kXSmall = 1.11e-16;
constexpr double kXBig = 26.543;
constexpr double kXHuge = 6.71e7;
constexpr double kXMax = 2.53e307;
constexpr double kXNeg = -26.628;

enum class Kind { kErf, kErfc, kErfcx };

// exp(-y^2) split so the product does not lose digits for large y.
double exp_neg_square(double y) {
    const double ysq = std::trunc(y * 16.0) / 16.0;
    const double del = (y - ysq) * (y + ysq);
    return std::exp(-ysq * ysq) * std::exp(-del);
}

double calerf(double x, Kind kind) {
    const double y = std::fabs(x);
    double result = 0.0;

    if (y <= kThresh) {
        const double ysq = y > kXSmall ? y * y : 0.0;
        double xnum = kA[4] * ysq;
        double xden = ysq;
        for (int i = 0; i < 3; ++i) {
            xnum = (xnum + kA[i]) * ysq;
            xden = (xden + kB[i]) * ysq;
        }
        result = x * (xnum + kA[3]) / (xden + kB[3]);
        if (kind != Kind::kErf) result = 1.0 - result;
        if (kind == Kind::kErfcx) result *= std::exp(ysq);
        return result;
    }

    if (y <= 4.0) {
        double xnum = kC[8] * y;
        double xden = y;
        for (int i = 0; i < 7; ++i) {
            xnum = (xnum + kC[i]) * y;
            xden = (xden + kD[i]) * y;
        }
        result = (xnum + kC[7]) / (xden + kD[7]);
        if (kind != Kind::kErfcx) result *= exp_neg_square(y);
    } else if (y >= kXBig && (kind != Kind::kErfcx || y >= kXMax)) {
        result = 0.0;
    } else if (y >= kXHuge) {
        result = kInvSqrtPi / y;
    } else {
        const double ysq = 1.0 / (y * y);
        double xnum = kP[5] * ysq;
        double xden = ysq;
        for (int i = 0; i < 4; ++i) {
            xnum = (xnum + kP[i]) * ysq;
            xden = (xden + kQ[i]) * ysq;
        }
        result = ysq * (xnum + kP[4]) / (xden + kQ[4]);
        result = (kInvSqrtPi - result) / y;
        if (kind != Kind::kErfcx) result *= exp_neg_square(y);
    }

    switch (kind) {
        case Kind::kErf:
            result = (0.5 - result) + 0.5;
            return x < 0.0 ? -result : result;
        case Kind::kErfc:
            return x < 0.0 ? 2.0 - result : result;
        case Kind::kErfcx:
            if (x < 0.0) {
                if (x < kXNeg) return std::numeric_limits<double>::infinity();
                const double e = 1.0 / exp_neg_square(x);
                result = (e + e) - result;
            }
            return result;
    }
    return result;
}

}  // namespace

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::kInvalidArgument: return "InvalidArgument";
        case ErrorCode::kNonConvergence: return "NonConvergence";
        case ErrorCode::kEmptySample: return "EmptySample";
        case ErrorCode::kCenteredOnly: return "CenteredOnly";
        case ErrorCode::kProposalBudgetExceeded: return "ProposalBudgetExceeded";
        case ErrorCode::kOrderTooHigh: return "OrderTooHigh";
        case ErrorCode::kOptimizerFailed: return "OptimizerFailed";
        case ErrorCode::kDegenerateSample: return "DegenerateSample";
        case ErrorCode::kNonFinite: return "NonFinite";
        case ErrorCode::kNonPositiveVariance: return "NonPositiveVariance";
        case ErrorCode::kGridTooCoarse: return "GridTooCoarse";
        case ErrorCode::kParseError: return "ParseError";
        case ErrorCode::kEmptyFile: return "EmptyFile";
        case ErrorCode::kIo: return "Io";
    }
    return "Unknown";
}

double erf(double x) { return calerf(x, Kind::kErf); }
double erfc(double x) { return calerf(x, Kind::kErfc); }
double erfcx(double x) { return calerf(x, Kind::kErfcx); }

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) { return 0.5 * erfc(-x / kSqrt2); }

double std_normal_upper(double x) { return 0.5 * erfc(x / kSqrt2); }

double log_std_normal_upper(double x) {
    // Below -5 the tail is within 3e-7 of one and log1p is exact enough.
    if (x < -5.0) return std::log1p(-std_normal_cdf(x));
    return std::log(mills_ratio(x)) - 0.5 * x * x - std::log(kSqrt2Pi);
}

double mills_ratio(double t) {
    // (1 - Phi(t)) / phi(t) = sqrt(pi/2) * erfcx(t / sqrt(2)); the scaled
    // complementary error function never forms the small difference.
    return 0.5 * kSqrt2Pi * erfcx(t / kSqrt2);
}

void TruncNormSpec::validate() const {
    if (!(sd_s > 0.0) || !std::isfinite(sd_s) || !std::isfinite(mean_m) ||
        !std::isfinite(lower)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "truncated normal requires finite mean and lower bound and sd > 0");
    }
}

double truncnorm_moment(const TruncNormSpec& spec, int order) {
    spec.validate();
    if (order < 0) throw Error(ErrorCode::kInvalidArgument, "moment order must be >= 0");
    if (order > kMaxTruncNormOrder) {
        throw Error(ErrorCode::kOrderTooHigh,
                    "truncated normal moments are supported up to order " +
                        std::to_string(kMaxTruncNormOrder));
    }
    const double m = spec.mean_m;
    const double s = spec.sd_s;
    const double a = spec.lower;
    // phi(alpha) / (1 - Phi(alpha)) = 1 / R(alpha)
    const double hazard = 1.0 / mills_ratio(spec.alpha());

    double prev = 1.0;  // M_{k-2}
    double cur = m + s * hazard;  // M_{k-1}
    if (order == 0) return prev;
    double a_pow = 1.0;  // a^{k-1}
    for (int k = 2; k <= order; ++k) {
        a_pow *= a;
        const double next = m * cur + (k - 1) * s * s * prev + s * a_pow * hazard;
        prev = cur;
        cur = next;
    }
    return cur;
}

double truncnorm_mean(const TruncNormSpec& spec) {
    spec.validate();
    return spec.mean_m + spec.sd_s / mills_ratio(spec.alpha());
}

double truncnorm_variance(const TruncNormSpec& spec) {
    spec.validate();
    const double alpha = spec.alpha();
    const double lambda = 1.0 / mills_ratio(alpha);
    return spec.sd_s * spec.sd_s * (1.0 + alpha * lambda - lambda * lambda);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw Error(ErrorCode::kEmptySample, "KS statistic needs two nonempty samples");
    }
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf) {
    if (sorted.empty()) throw Error(ErrorCode::kEmptySample, "KS statistic needs a sample");
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

double ks_critical_two_sample(std::size_t n, std::size_t m, double c) {
    const double dn = static_cast<double>(n);
    const double dm = static_cast<double>(m);
    return c * std::sqrt((dn + dm) / (dn * dm));
}

double ks_critical_one_sample(std::size_t n, double c) {
    return c / std::sqrt(static_cast<double>(n));
}

}  // namespace voigt
