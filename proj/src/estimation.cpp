#include "voigt/estimation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "voigt/error.hpp"
#include "voigt/special.hpp"

namespace voigt {
namespace {

struct Prepared {
    SufficientStats stats;
    double mean = 0.0;
    double plugin_var = 0.0;
};

Prepared prepare(std::span<const double> sample) {
    if (sample.size() < kMinFitSampleSize) {
        std::ostringstream msg;
        msg << "fitting needs at least " << kMinFitSampleSize << " observations, got "
            << sample.size();
        throw Error(ErrorCode::kInvalidArgument, msg.str());
    }
    Prepared p;
    p.stats = sufficient_stats(sample);
    p.mean = p.stats.mean_abs();
    p.plugin_var = p.stats.mean_square() - p.mean * p.mean;
    const double eps = std::numeric_limits<double>::epsilon();
    if (!(p.plugin_var > 8.0 * eps * p.stats.mean_square())) {
        throw Error(ErrorCode::kDegenerateSample, "all |y| values are equal");
    }
    return p;
}

FitResult finish(FitMethod method, const SimplexResult& nm) {
    if (!nm.converged) {
        std::ostringstream msg;
        msg << fit_method_name(method) << " fit: simplex did not converge after "
            << nm.iterations << " iterations and " << nm.restarts_used << " restarts";
        throw Error(ErrorCode::kOptimizerFailed, msg.str());
    }
    FitResult r;
    r.method = method;
    r.latent_m = nm.argmin[0];
    r.latent_var = std::exp(2.0 * nm.argmin[1]);
    const BackMapped bm = back_map(r.latent_m, r.latent_var);
    r.gamma_hat = bm.gamma;
    r.sigma_hat = std::sqrt(bm.sigma2);
    r.objective_value = nm.value;
    r.iterations = nm.iterations;
    r.converged = bm.gamma > 0.0;
    return r;
}

}  // namespace

SufficientStats sufficient_stats(std::span<const double> sample) {
    if (sample.empty()) throw Error(ErrorCode::kEmptySample, "sufficient statistics of an empty sample");
    SufficientStats s;
    for (double y : sample) {
        s.s1 += std::fabs(y);
        s.s2 += y * y;
    }
    s.n = sample.size();
    return s;
}

const char* fit_method_name(FitMethod method) {
    return method == FitMethod::kML ? "ML" : "MoM";
}

BackMapped back_map(double latent_m, double latent_var) {
    if (!(latent_var > 0.0) || !std::isfinite(latent_var)) {
        throw Error(ErrorCode::kNonPositiveVariance, "latent variance must be positive and finite");
    }
    return {-latent_m / latent_var, 1.0 / latent_var};
}

double truncnorm_neg_loglik(const SufficientStats& stats, double m, double log_s) {
    const double s = std::exp(log_s);
    const double n = static_cast<double>(stats.n);
    const double centered_sq = stats.s2 / n - 2.0 * m * stats.s1 / n + m * m;
    return log_s + centered_sq / (2.0 * s * s) + log_std_normal_upper(-m / s) +
           std::log(kSqrt2Pi);
}

FitResult fit_ml(std::span<const double> sample, const SimplexConfig& cfg) {
    const Prepared p = prepare(sample);
    const double sd = std::sqrt(p.plugin_var);
    const std::array<double, 2> start = {p.mean - sd, std::log(sd)};
    const SufficientStats stats = p.stats;
    auto objective = [&stats](std::span<const double> x) {
        return truncnorm_neg_loglik(stats, x[0], x[1]);
    };
    return finish(FitMethod::kML, nelder_mead(objective, start, cfg));
}

FitResult fit_mom(std::span<const double> sample, const SimplexConfig& cfg) {
    const Prepared p = prepare(sample);
    const double n = static_cast<double>(p.stats.n);
    const double target_mean = p.mean;
    const double target_var = p.plugin_var * n / (n - 1.0);
    const double target_sd = std::sqrt(target_var);

    auto objective = [=](std::span<const double> x) {
        const TruncNormSpec spec{x[0], std::exp(x[1]), 0.0};
        if (!(spec.sd_s > 0.0) || !std::isfinite(spec.sd_s)) {
            return std::numeric_limits<double>::infinity();
        }
        const double r1 = (truncnorm_mean(spec) - target_mean) / target_sd;
        const double r2 = (truncnorm_variance(spec) - target_var) / target_var;
        return r1 * r1 + r2 * r2;
    };
    const std::array<double, 2> start = {target_mean - target_sd, std::log(target_sd)};
    FitResult r = finish(FitMethod::kMoM, nelder_mead(objective, start, cfg));
    r.converged = r.converged && std::sqrt(r.objective_value) < kMomResidualTolerance;
    return r;
}

FitResult fit(std::span<const double> sample, FitMethod method, const SimplexConfig& cfg) {
    return method == FitMethod::kML ? fit_ml(sample, cfg) : fit_mom(sample, cfg);
}

}  // namespace voigt
