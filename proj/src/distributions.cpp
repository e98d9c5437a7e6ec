#include "voigt/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "voigt/error.hpp"

namespace voigt {
namespace {

using Complex = std::complex<double>;

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
    const double a = z.real();
    const double b = z.imag();
    const double half_sin = std::sin(0.5 * b);
    const double re = std::expm1(a) * std::cos(b) - 2.0 * half_sin * half_sin;
    const double im = std::exp(a) * std::sin(b);
    return {re, im};
}

void require_finite(double value, const char* what) {
    if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << what << " must be finite";
        throw Error(ErrorCode::kInvalidArgument, msg.str());
    }
}

}  // namespace

void VoigtParams::validate() const {
    require_finite(mu, "mu");
    require_finite(gamma, "gamma");
    require_finite(sigma, "sigma");
    if (!(gamma > 0.0) || !(sigma > 0.0)) {
        throw Error(ErrorCode::kInvalidArgument, "gamma and sigma must be positive");
    }
}

void LevyParams::validate() const {
    require_finite(location, "Levy location");
    require_finite(scale, "Levy scale");
    if (!(scale > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Levy scale must be positive");
}

double nonzero_normal(RngStream& rng) {
    double z = rng.normal();
    while (z == 0.0) z = rng.normal();
    return z;
}

// ---------------------------------------------------------------- Levy

Levy::Levy(LevyParams p) : p_(p) { p_.validate(); }

double Levy::pdf(double x) const {
    const double d = x - p_.location;
    if (!(d > 0.0)) return 0.0;
    if (std::isinf(d)) return 0.0;
    return std::sqrt(p_.scale / (2.0 * kPi)) * std::pow(d, -1.5) *
           std::exp(-p_.scale / (2.0 * d));
}

double Levy::cdf(double x) const {
    const double d = x - p_.location;
    if (!(d > 0.0)) return 0.0;
    // erfc(sqrt(c / 2d)) = 2 (1 - Phi(sqrt(c / d)))
    return 2.0 * std_normal_upper(std::sqrt(p_.scale / d));
}

double Levy::from_normal(double z) const {
    if (z == 0.0) throw Error(ErrorCode::kInvalidArgument, "Levy representation needs Z != 0");
    return p_.location + p_.scale / (z * z);
}

double Levy::sample(RngStream& rng) const { return from_normal(nonzero_normal(rng)); }

// ---------------------------------------------------------------- Cauchy

Cauchy::Cauchy(double gamma) : gamma_(gamma) {
    require_finite(gamma, "gamma");
    if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "Cauchy scale must be positive");
}

double Cauchy::pdf(double x) const { return gamma_ / (kPi * (gamma_ * gamma_ + x * x)); }

double Cauchy::cdf(double x) const { return 0.5 + std::atan(x / gamma_) / kPi; }

double Cauchy::sample(RngStream& rng) const {
    const double z1 = rng.normal();
    const double z2 = nonzero_normal(rng);
    return gamma_ * (z1 / z2);
}

// ---------------------------------------------------------------- TruncNormal

TruncNormal::TruncNormal(TruncNormSpec spec) : spec_(spec) { spec_.validate(); }

double TruncNormal::pdf(double x) const {
    if (x < spec_.lower) return 0.0;
    const double z = (x - spec_.mean_m) / spec_.sd_s;
    return std::exp(-0.5 * z * z - std::log(kSqrt2Pi * spec_.sd_s) -
                    log_std_normal_upper(spec_.alpha()));
}

double TruncNormal::cdf(double x) const {
    if (x <= spec_.lower) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double z = (x - spec_.mean_m) / spec_.sd_s;
    return -std::expm1(log_std_normal_upper(z) - log_std_normal_upper(spec_.alpha()));
}

double TruncNormal::sample(RngStream& rng) const {
    const double alpha = spec_.alpha();
    double z = 0.0;
    if (alpha < 0.0) {
        do {
            z = rng.normal();
        } while (z < alpha);
    } else {
        // Robert (1995), optimal exponential rate for the tail beyond alpha.
        const double rate = 0.5 * (alpha + std::sqrt(alpha * alpha + 4.0));
        while (true) {
            z = alpha + rng.exponential(rate);
            const double d = z - rate;
            if (rng.uniform() < std::exp(-0.5 * d * d)) break;
        }
    }
    return spec_.mean_m + spec_.sd_s * z;
}

// ---------------------------------------------------------------- Voigt

Voigt::Voigt(VoigtParams p) : p_(p) { p_.validate(); }

double Voigt::pdf(double u, const QuadratureConfig& cfg) const {
    cfg.validate();
    const double x = std::fabs(u - p_.mu);
    if (std::isinf(x)) return 0.0;
    const double g = p_.gamma;
    const double s2 = p_.sigma * p_.sigma;

    // exp(-g t - s2 t^2/2) = exp(-g t) + exp(-g t) expm1(-s2 t^2/2). The first
    // term transforms to the Cauchy density exactly; the second is integrated
    // along the ray t = r k e^{i theta}, which turns the oscillation e^{ixt}
    // into decay.
    const double shape = g * g / (g * g + x * x);
    const double cauchy = shape / (kPi * g);

    const double theta = x > 0.0 ? kPi / 8.0 : 0.0;
    const Complex dir = std::polar(1.0, theta);
    const double k = 1.0 / (g + x + p_.sigma);
    const Complex a = Complex(g, -x) * dir * k;
    const Complex b = -0.5 * s2 * k * k * dir * dir;
    auto integrand = [a, b](double r) { return std::exp(-a * r) * expm1(b * r * r); };

    QuadratureConfig inner = cfg;
    inner.abs_tol = std::max(cfg.abs_tol * shape * kPi / k, 1e-300);
    const Complex rem = integrate_complex(integrand, 0.0, INFINITY, inner) * dir * k;
    const double value = cauchy + rem.real() / kPi;
    return value > 0.0 ? value : 0.0;
}

double Voigt::mode_density() const { return mills_ratio(p_.ratio()) / (kPi * p_.sigma); }

double Voigt::sample_conv(RngStream& rng) const {
    const double cauchy = Cauchy(p_.gamma).sample(rng);
    const double centered = cauchy + p_.sigma * rng.normal();
    return p_.mu + centered;
}

double Voigt::sample_mix(RngStream& rng) const {
    const double variance = mixing().sample(rng);
    const double centered = std::sqrt(variance) * rng.normal();
    return p_.mu + centered;
}

double cauchy_via_levy_mixture(double gamma, RngStream& rng) {
    require_finite(gamma, "gamma");
    if (!(gamma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "gamma must be positive");
    const Levy levy({0.0, gamma * gamma});
    return std::sqrt(levy.sample(rng)) * rng.normal();
}

// ---------------------------------------------------------------- DualVoigt

DualVoigt::DualVoigt(VoigtParams p) : p_(p) {
    p_.validate();
    if (p_.mu != 0.0) {
        throw Error(ErrorCode::kCenteredOnly, "the dual is defined for the centered Voigt (mu = 0)");
    }
}

double DualVoigt::peak() const { return p_.sigma / (2.0 * mills_ratio(p_.ratio())); }

double DualVoigt::pdf(double u) const {
    const double a = std::fabs(u);
    return peak() * std::exp(-p_.gamma * a - 0.5 * p_.sigma * p_.sigma * a * a);
}

TruncNormal DualVoigt::magnitude() const {
    const double s2 = p_.sigma * p_.sigma;
    return TruncNormal({-p_.gamma / s2, 1.0 / p_.sigma, 0.0});
}

double DualVoigt::sample_reflect(RngStream& rng) const {
    const bool negative = rng.uniform() < 0.5;
    const double magnitude_draw = magnitude().sample(rng);
    return negative ? -magnitude_draw : magnitude_draw;
}

std::optional<double> DualVoigt::accept_reject_step(double candidate) const {
    const double shift = 2.0 * p_.gamma / (p_.sigma * p_.sigma);
    if (candidate > 0.0) return candidate;
    if (candidate <= -shift) return candidate + shift;
    return std::nullopt;
}

double DualVoigt::sample_ar(RngStream& rng, ProposalCounter* counter) const {
    const double mean = -p_.gamma / (p_.sigma * p_.sigma);
    const double sd = 1.0 / p_.sigma;
    for (std::uint64_t i = 0; i < kProposalBudget; ++i) {
        const double candidate = mean + sd * rng.normal();
        if (counter) ++counter->proposals;
        if (auto x = accept_reject_step(candidate)) {
            if (counter) ++counter->accepted;
            return *x;
        }
    }
    std::ostringstream msg;
    msg << "accept-reject sampler rejected " << kProposalBudget
        << " consecutive proposals (gamma/sigma = " << p_.ratio() << ")";
    throw Error(ErrorCode::kProposalBudgetExceeded, msg.str());
}

double DualVoigt::acceptance_probability() const { return 2.0 * std_normal_upper(p_.ratio()); }

double DualVoigt::moment(int n) const {
    if (n < 0) throw Error(ErrorCode::kInvalidArgument, "moment order must be >= 0");
    if (n > kMaxTruncNormOrder) {
        throw Error(ErrorCode::kOrderTooHigh, "dual Voigt moments are supported up to order 8");
    }
    if (n % 2 == 1) return 0.0;
    return magnitude().moment(n);
}

double DualVoigt::second_moment_closed_form() const {
    const double g = p_.gamma;
    const double s = p_.sigma;
    const double hazard = 1.0 / mills_ratio(g / s);
    return g * g / std::pow(s, 4) + 1.0 / (s * s) - g / std::pow(s, 3) * hazard;
}

double DualVoigt::fourth_moment_closed_form() const {
    const double g = p_.gamma;
    const double s = p_.sigma;
    const double hazard = 1.0 / mills_ratio(g / s);
    return std::pow(g, 4) / std::pow(s, 8) + 6.0 * g * g / std::pow(s, 6) + 3.0 / std::pow(s, 4) -
           (5.0 * g / std::pow(s, 5) + std::pow(g, 3) / std::pow(s, 7)) * hazard;
}

// ---------------------------------------------------------------- DualMixing

DualMixing::DualMixing(DualMixingParams p) : p_(p) { p_.base.validate(); }

double DualMixing::support_upper() const { return 1.0 / (p_.base.sigma * p_.base.sigma); }

Levy DualMixing::untruncated() const {
    const double s2 = p_.base.sigma * p_.base.sigma;
    const double a = p_.base.gamma / s2;
    return Levy({1.0 / s2, a * a});
}

double DualMixing::pdf(double v) const {
    const double upper = support_upper();
    if (!(v > 0.0) || !(v < upper)) return 0.0;
    const double a = p_.base.gamma / (p_.base.sigma * p_.base.sigma);
    const double gap = upper - v;
    const double log_density = -std::log(2.0) - log_std_normal_upper(p_.base.ratio()) +
                               std::log(a) - std::log(kSqrt2Pi) - 1.5 * std::log(gap) -
                               a * a / (2.0 * gap);
    return std::exp(log_density);
}

double DualMixing::cdf(double v) const {
    const double upper = support_upper();
    if (!(v > 0.0)) return 0.0;
    if (!(v < upper)) return 1.0;
    const Levy levy = untruncated();
    const double cut = levy.cdf(2.0 * upper);
    return (cut - levy.cdf(2.0 * upper - v)) / cut;
}

double DualMixing::sample(RngStream& rng, ProposalCounter* counter) const {
    const Levy levy = untruncated();
    const double upper = support_upper();
    const double cut = 2.0 * upper;
    for (std::uint64_t i = 0; i < kProposalBudget; ++i) {
        const double l = levy.sample(rng);
        if (counter) ++counter->proposals;
        if (l < cut) {
            const double v = cut - l;
            if (v > 0.0 && v < upper) {
                if (counter) ++counter->accepted;
                return v;
            }
        }
    }
    std::ostringstream msg;
    msg << "truncated Levy sampler rejected " << kProposalBudget
        << " consecutive proposals (gamma/sigma = " << p_.base.ratio() << ")";
    throw Error(ErrorCode::kProposalBudgetExceeded, msg.str());
}

double DualMixing::sample_scale_mixture(RngStream& rng, ProposalCounter* counter) const {
    const double v = sample(rng, counter);
    return std::sqrt(v) * rng.normal();
}

}  // namespace voigt
