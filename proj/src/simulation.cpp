#include "voigt/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <thread>

#include "voigt/distributions.hpp"
#include "voigt/error.hpp"

namespace voigt {
namespace {

template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> draw_dual_sample(const DualVoigt& dual, std::size_t n, RngStream& rng) {
    std::vector<double> sample(n);
    for (double& y : sample) y = dual.sample_reflect(rng);
    return sample;
}

// results[method][replicate]
std::vector<std::vector<std::optional<FitResult>>> fit_replicates(
    double gamma, double sigma, std::size_t n, std::size_t replicates, std::uint64_t seed,
    const std::vector<FitMethod>& methods, unsigned threads) {
    const DualVoigt dual({0.0, gamma, sigma});
    std::vector<std::vector<std::optional<FitResult>>> results(
        methods.size(), std::vector<std::optional<FitResult>>(replicates));
    const std::uint64_t size_seed = derive_seed(seed, n);
    parallel_for(replicates, threads, [&](std::size_t r) {
        RngStream rng(size_seed, r);
        const std::vector<double> sample = draw_dual_sample(dual, n, rng);
        for (std::size_t k = 0; k < methods.size(); ++k) {
            try {
                results[k][r] = fit(sample, methods[k]);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::kOptimizerFailed && e.code() != ErrorCode::kNonFinite &&
                    e.code() != ErrorCode::kDegenerateSample) {
                    throw;
                }
            }
        }
    });
    return results;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v) {
    if (v.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

// ------------------------------------------------------------ estimation study

void StudyConfig::validate() const {
    VoigtParams{0.0, true_gamma, true_sigma}.validate();
    if (replicates < 1) throw Error(ErrorCode::kInvalidArgument, "replicates must be >= 1");
    if (sample_sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "no sample sizes given");
    for (std::size_t n : sample_sizes) {
        if (n < kMinFitSampleSize) {
            throw Error(ErrorCode::kInvalidArgument, "sample sizes must be >= 10");
        }
    }
    if (methods.empty()) throw Error(ErrorCode::kInvalidArgument, "no estimation method selected");
}

const SimRow* SimTable::find(std::size_t n, FitMethod method) const {
    for (const SimRow& row : rows) {
        if (row.n == n && row.method == method) return &row;
    }
    return nullptr;
}

std::vector<std::optional<FitResult>> replicate_fits(double gamma, double sigma, std::size_t n,
                                                     std::size_t replicates, std::uint64_t seed,
                                                     FitMethod method, unsigned threads) {
    return std::move(fit_replicates(gamma, sigma, n, replicates, seed, {method}, threads)[0]);
}

SimTable run_study(const StudyConfig& cfg) {
    cfg.validate();
    SimTable table;
    for (std::size_t n : cfg.sample_sizes) {
        const auto results = fit_replicates(cfg.true_gamma, cfg.true_sigma, n, cfg.replicates,
                                            cfg.seed, cfg.methods, cfg.threads);
        for (std::size_t k = 0; k < cfg.methods.size(); ++k) {
            std::vector<double> gammas;
            std::vector<double> sigmas;
            for (const auto& fit : results[k]) {
                if (fit && fit->converged) {
                    gammas.push_back(fit->gamma_hat);
                    sigmas.push_back(fit->sigma_hat);
                }
            }
            SimRow row;
            row.n = n;
            row.method = cfg.methods[k];
            row.mean_gamma_hat = mean_of(gammas);
            row.mean_sigma_hat = mean_of(sigmas);
            row.sd_gamma_hat = sd_of(gammas);
            row.sd_sigma_hat = sd_of(sigmas);
            row.n_ok = gammas.size();
            row.n_failed = cfg.replicates - row.n_ok;
            table.rows.push_back(row);
        }
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const SimRow& a, const SimRow& b) {
        return a.n != b.n ? a.n < b.n : a.method < b.method;
    });
    return table;
}

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void write_csv(std::ostream& out, const SimTable& table) {
    out << "n,method,mean_gamma_hat,mean_sigma_hat,sd_gamma_hat,sd_sigma_hat,n_ok,n_failed\n";
    for (const SimRow& r : table.rows) {
        out << r.n << ',' << fit_method_name(r.method) << ',' << format_number(r.mean_gamma_hat)
            << ',' << format_number(r.mean_sigma_hat) << ',' << format_number(r.sd_gamma_hat)
            << ',' << format_number(r.sd_sigma_hat) << ',' << r.n_ok << ',' << r.n_failed << '\n';
    }
}

// ------------------------------------------------------------ identity suite

std::vector<std::pair<double, double>> default_identity_grid() {
    const double values[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::pair<double, double>> grid;
    for (double g : values) {
        for (double s : values) grid.emplace_back(g, s);
    }
    return grid;
}

bool rejection_feasible(double acceptance_probability) {
    return acceptance_probability * static_cast<double>(kProposalBudget) >= 30.0;
}

namespace {

bool is_ks(const IdentityCheck& c) { return c.identity.rfind("ks_", 0) == 0; }

std::vector<IdentityCheck> checks_at(double gamma, double sigma, std::size_t index,
                                     const IdentitySuiteConfig& cfg) {
    std::vector<IdentityCheck> out;
    auto add = [&](std::string name, double measured, double threshold) {
        IdentityCheck c{std::move(name), gamma, sigma, measured, threshold, false, false};
        c.passed = measured <= threshold;
        out.push_back(std::move(c));
    };
    auto skip = [&](std::string name, double threshold) {
        IdentityCheck c{std::move(name), gamma, sigma, std::numeric_limits<double>::quiet_NaN(),
                        threshold, false, true};
        out.push_back(std::move(c));
    };

    const Voigt voigt({0.0, gamma, sigma});
    const DualVoigt dual({0.0, gamma, sigma});
    const DualMixing mixing(DualMixingParams{{0.0, gamma, sigma}});

    const double p0 = voigt.pdf(0.0, cfg.quadrature);
    add("duality", std::fabs(2.0 * kPi * p0 * dual.peak() - 1.0), 1e-6);
    add("peak_bound", p0 - 1.0 / (gamma * kPi), 1e-10);
    const double cut = 2.0 / (sigma * sigma);
    add("levy_truncation",
        std::fabs(mixing.untruncated().cdf(cut) - 2.0 * (1.0 - std_normal_cdf(gamma / sigma))),
        1e-12);

    if (cfg.normalization) {
        const auto& q = cfg.quadrature;
        add("norm_voigt",
            std::fabs(integrate([&](double u) { return voigt.pdf(u, q); }, -INFINITY, INFINITY, q) - 1.0),
            1e-8);
        add("norm_dual_voigt",
            std::fabs(integrate([&](double u) { return dual.pdf(u); }, -INFINITY, INFINITY, q) - 1.0),
            1e-8);
        add("norm_dual_mixing",
            std::fabs(integrate([&](double v) { return mixing.pdf(v); }, 0.0, mixing.support_upper(), q) - 1.0),
            1e-8);
    }

    const double crit = ks_critical_two_sample(cfg.n, cfg.n);
    const std::uint64_t point_seed = derive_seed(cfg.seed, index);
    {
        RngStream rng_conv(point_seed, 0);
        RngStream rng_mix(point_seed, 1);
        std::vector<double> conv(cfg.n);
        std::vector<double> mix(cfg.n);
        for (double& x : conv) x = voigt.sample_conv(rng_conv);
        for (double& x : mix) x = voigt.sample_mix(rng_mix);
        std::sort(conv.begin(), conv.end());
        std::sort(mix.begin(), mix.end());
        add("ks_conv_mix", ks_two_sample(conv, mix), crit);
    }

    RngStream rng_reflect(point_seed, 2);
    std::vector<double> reflect(cfg.n);
    for (double& x : reflect) x = dual.sample_reflect(rng_reflect);
    std::sort(reflect.begin(), reflect.end());
    if (rejection_feasible(dual.acceptance_probability())) {
        RngStream rng_ar(point_seed, 3);
        RngStream rng_scale(point_seed, 4);
        std::vector<double> ar(cfg.n);
        std::vector<double> scale(cfg.n);
        for (double& x : ar) x = dual.sample_ar(rng_ar);
        for (double& x : scale) x = mixing.sample_scale_mixture(rng_scale);
        std::sort(ar.begin(), ar.end());
        std::sort(scale.begin(), scale.end());
        add("ks_reflect_ar", ks_two_sample(reflect, ar), crit);
        add("ks_reflect_scale_mixture", ks_two_sample(reflect, scale), crit);
        add("ks_ar_scale_mixture", ks_two_sample(ar, scale), crit);
    } else {
        skip("ks_reflect_ar", crit);
        skip("ks_reflect_scale_mixture", crit);
        skip("ks_ar_scale_mixture", crit);
    }
    return out;
}

}  // namespace

IdentityReport run_identity_suite(const IdentitySuiteConfig& cfg) {
    if (cfg.grid.empty()) throw Error(ErrorCode::kInvalidArgument, "identity grid is empty");
    if (cfg.n < 1) throw Error(ErrorCode::kInvalidArgument, "sample size must be >= 1");
    std::vector<std::vector<IdentityCheck>> per_point(cfg.grid.size());
    parallel_for(cfg.grid.size(), 0, [&](std::size_t i) {
        per_point[i] = checks_at(cfg.grid[i].first, cfg.grid[i].second, i, cfg);
    });

    IdentityReport report;
    std::size_t ks_run = 0;
    for (auto& checks : per_point) {
        for (auto& c : checks) {
            if (!c.skipped) {
                if (is_ks(c)) {
                    ++ks_run;
                    if (!c.passed) ++report.ks_failures;
                } else if (!c.passed) {
                    ++report.exact_failures;
                }
            }
            report.checks.push_back(std::move(c));
        }
    }
    report.ks_allowance = ks_run / 20;
    return report;
}

void write_csv(std::ostream& out, const IdentityReport& report) {
    out << "identity,gamma,sigma,measured,threshold,status\n";
    for (const IdentityCheck& c : report.checks) {
        out << c.identity << ',' << format_number(c.gamma) << ',' << format_number(c.sigma) << ','
            << format_number(c.measured) << ',' << format_number(c.threshold) << ','
            << (c.skipped ? "skipped" : c.passed ? "pass" : "fail") << '\n';
    }
}

// ------------------------------------------------------------ figure data

std::optional<FigureKind> parse_figure_kind(const std::string& name) {
    if (name == "dual_density") return FigureKind::kDualDensity;
    if (name == "mixing_construction") return FigureKind::kMixingConstruction;
    if (name == "mixing_compare") return FigureKind::kMixingCompare;
    return std::nullopt;
}

const char* figure_kind_name(FigureKind kind) {
    switch (kind) {
        case FigureKind::kDualDensity: return "dual_density";
        case FigureKind::kMixingConstruction: return "mixing_construction";
        case FigureKind::kMixingCompare: return "mixing_compare";
    }
    return "unknown";
}

std::vector<double> GridSpec::values() const {
    if (points < kMinFigurePoints) {
        throw Error(ErrorCode::kGridTooCoarse,
                    "grid needs at least " + std::to_string(kMinFigurePoints) + " points");
    }
    if (!std::isfinite(from) || !std::isfinite(to) || !(from < to)) {
        throw Error(ErrorCode::kInvalidArgument, "grid bounds must be finite with from < to");
    }
    std::vector<double> xs(points);
    const double step = (to - from) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) xs[i] = from + step * static_cast<double>(i);
    xs.back() = to;
    return xs;
}

std::vector<std::pair<double, double>> default_figure_params(FigureKind kind) {
    switch (kind) {
        case FigureKind::kDualDensity:
            return {{0.25, 0.25}, {0.5, 0.5}, {2.0, 2.0}, {0.25, 1.0},
                    {0.5, 1.0},   {1.0, 1.0}, {2.0, 1.0}};
        case FigureKind::kMixingConstruction:
            return {{1.0, 1.0}};
        case FigureKind::kMixingCompare:
            return {{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.0}};
    }
    return {};
}

GridSpec default_figure_grid(FigureKind kind) {
    switch (kind) {
        case FigureKind::kDualDensity: return {-4.0, 4.0, 161};
        case FigureKind::kMixingConstruction: return {0.0, 3.0, 301};
        case FigureKind::kMixingCompare: return {0.0, 4.0, 401};
    }
    return {};
}

FigureTable figure_data(FigureKind kind, const std::vector<std::pair<double, double>>& params,
                        const GridSpec& grid) {
    const std::vector<double> xs = grid.values();
    if (params.empty()) throw Error(ErrorCode::kInvalidArgument, "no parameter pairs given");
    FigureTable table;
    table.kind = kind;
    for (const auto& [gamma, sigma] : params) {
        auto emit = [&](const char* series, auto&& fn) {
            for (double x : xs) table.rows.push_back({series, gamma, sigma, x, fn(x)});
        };
        switch (kind) {
            case FigureKind::kDualDensity: {
                const DualVoigt dual({0.0, gamma, sigma});
                emit("dual_voigt", [&](double x) { return dual.pdf(x); });
                break;
            }
            case FigureKind::kMixingConstruction: {
                const DualMixing mixing(DualMixingParams{{0.0, gamma, sigma}});
                const Levy levy = mixing.untruncated();
                const double cut = 2.0 / (sigma * sigma);
                const double mass = levy.cdf(cut);
                emit("levy", [&](double x) { return levy.pdf(x); });
                emit("truncated", [&](double x) { return x < cut ? levy.pdf(x) / mass : 0.0; });
                emit("reflected", [&](double x) { return mixing.pdf(x); });
                break;
            }
            case FigureKind::kMixingCompare: {
                const Voigt voigt({0.0, gamma, sigma});
                const Levy levy = voigt.mixing();
                const DualMixing mixing(DualMixingParams{{0.0, gamma, sigma}});
                emit("voigt_mixing", [&](double x) { return levy.pdf(x); });
                emit("dual_mixing", [&](double x) { return mixing.pdf(x); });
                break;
            }
        }
    }
    return table;
}

void write_csv(std::ostream& out, const FigureTable& table) {
    out << "figure,series,gamma,sigma,x,value\n";
    for (const FigureRow& r : table.rows) {
        out << figure_kind_name(table.kind) << ',' << r.series << ',' << format_number(r.gamma)
            << ',' << format_number(r.sigma) << ',' << format_number(r.x) << ','
            << format_number(r.value) << '\n';
    }
}

}  // namespace voigt
