#pragma once

#include <cstdint>
#include <optional>

#include "voigt/rng.hpp"
#include "voigt/special.hpp"

namespace voigt {

/// Location mu, Cauchy scale gamma and normal standard deviation sigma.
struct VoigtParams {
    double mu = 0.0;
    double gamma = 1.0;
    double sigma = 1.0;

    void validate() const;
    /// gamma / sigma, the ratio that fixes the shape of the dual.
    double ratio() const { return gamma / sigma; }
};

struct LevyParams {
    double location = 0.0;
    double scale = 1.0;

    void validate() const;
};

struct DualMixingParams {
    VoigtParams base;
};

/// Proposal accounting for the rejection samplers.
struct ProposalCounter {
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;

    double acceptance_rate() const {
        return proposals == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(proposals);
    }
};

/// Consecutive rejections after which a rejection sampler gives up.
inline constexpr std::uint64_t kProposalBudget = 1'000'000;

/// Standard normal draw conditioned away from exactly zero.
double nonzero_normal(RngStream& rng);

/// Levy(location, scale): location + scale / Z^2.
class Levy {
  public:
    explicit Levy(LevyParams p);

    const LevyParams& params() const { return p_; }

    double pdf(double x) const;
    /// erfc(sqrt(scale / (2 (x - location)))), zero at and below the location.
    double cdf(double x) const;
    double sample(RngStream& rng) const;
    /// The Lemma-style representation for a given normal draw z != 0.
    double from_normal(double z) const;

  private:
    LevyParams p_;
};

/// Centered Cauchy with scale gamma, sampled as gamma * Z1 / Z2.
class Cauchy {
  public:
    explicit Cauchy(double gamma);

    double gamma() const { return gamma_; }
    double pdf(double x) const;
    double cdf(double x) const;
    double sample(RngStream& rng) const;

  private:
    double gamma_;
};

/// Normal truncated below at spec.lower.
class TruncNormal {
  public:
    explicit TruncNormal(TruncNormSpec spec);

    const TruncNormSpec& spec() const { return spec_; }
    double pdf(double x) const;
    double cdf(double x) const;
    double moment(int order) const { return truncnorm_moment(spec_, order); }
    double mean() const { return truncnorm_mean(spec_); }
    double variance() const { return truncnorm_variance(spec_); }
    /// Plain normal rejection when the truncation point sits below the mean,
    /// Robert's translated-exponential proposal otherwise.
    double sample(RngStream& rng) const;

  private:
    TruncNormSpec spec_;
};

/// Voigt(mu, gamma, sigma^2): law of a Cauchy(mu_X, gamma) plus an
/// independent Normal(mu_Y, sigma^2).
class Voigt {
  public:
    explicit Voigt(VoigtParams p);

    const VoigtParams& params() const { return p_; }

    /// Density by the cosine transform of exp(-gamma|t| - sigma^2 t^2 / 2).
    double pdf(double u, const QuadratureConfig& cfg = {}) const;
    /// p(mu) = R(gamma/sigma) / (pi sigma).
    double mode_density() const;

    double sample_conv(RngStream& rng) const;
    double sample_mix(RngStream& rng) const;

    /// Levy(sigma^2, gamma^2) variance mixing law.
    Levy mixing() const { return Levy({p_.sigma * p_.sigma, p_.gamma * p_.gamma}); }

  private:
    VoigtParams p_;
};

/// sigma = 0 end of the product formula: Z * sqrt(Levy(0, gamma^2)), which is
/// Cauchy(0, gamma).
double cauchy_via_levy_mixture(double gamma, RngStream& rng);

/// Dual of the centered Voigt: density proportional to its characteristic
/// function exp(-gamma|u| - sigma^2 u^2 / 2).
class DualVoigt {
  public:
    /// Throws CenteredOnly unless p.mu == 0.
    explicit DualVoigt(VoigtParams p);

    const VoigtParams& params() const { return p_; }

    double pdf(double u) const;
    /// p'(0) = sigma / (2 R(gamma/sigma)).
    double peak() const;

    /// Law of |U'|: Normal(-gamma/sigma^2, 1/sigma^2) truncated below at 0.
    TruncNormal magnitude() const;

    /// Truncated-normal magnitude with a fair random sign.
    double sample_reflect(RngStream& rng) const;
    /// Accept-reject from the untruncated normal, accepting both tails.
    double sample_ar(RngStream& rng, ProposalCounter* counter = nullptr) const;
    /// One accept-reject step for a given candidate; nullopt means reject.
    std::optional<double> accept_reject_step(double candidate) const;
    /// 2 (1 - Phi(gamma/sigma)).
    double acceptance_probability() const;

    /// E[(U')^n]: zero for odd n, truncated-normal moment for even n.
    double moment(int n) const;
    double second_moment_closed_form() const;
    double fourth_moment_closed_form() const;

  private:
    VoigtParams p_;
};

/// Mixing law of the dual: V' = 2/sigma^2 - L given L < 2/sigma^2 with
/// L ~ Levy(1/sigma^2, gamma^2/sigma^4). Supported on (0, 1/sigma^2).
class DualMixing {
  public:
    explicit DualMixing(DualMixingParams p);

    const DualMixingParams& params() const { return p_; }

    double pdf(double v) const;
    double cdf(double v) const;
    double support_upper() const;
    double sample(RngStream& rng, ProposalCounter* counter = nullptr) const;
    /// sqrt(V') * Z, the normal scale mixture draw of the dual.
    double sample_scale_mixture(RngStream& rng, ProposalCounter* counter = nullptr) const;

    /// Levy(1/sigma^2, gamma^2/sigma^4) before truncation and reflection.
    Levy untruncated() const;

  private:
    DualMixingParams p_;
};

}  // namespace voigt
