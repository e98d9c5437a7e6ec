#include "voigt/voigt.h"

#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <variant>

#include "voigt/distributions.hpp"
#include "voigt/error.hpp"
#include "voigt/estimation.hpp"
#include "voigt/simulation.hpp"

struct voigt_rng {
    voigt::RngStream stream;
};

struct voigt_dist {
    std::variant<voigt::Voigt, voigt::DualVoigt, voigt::DualMixing, voigt::Levy, voigt::Cauchy,
                 voigt::TruncNormal>
        dist;
};

struct voigt_study {
    voigt::SimTable table;
    std::string csv;
};

struct voigt_report {
    voigt::IdentityReport report;
    std::string csv;
};

struct voigt_figure {
    voigt::FigureTable table;
    std::string csv;
};

namespace {

thread_local std::string g_last_error;

voigt_status to_status(voigt::ErrorCode code) {
    using voigt::ErrorCode;
    switch (code) {
        case ErrorCode::kInvalidArgument: return VOIGT_ERR_INVALID_ARGUMENT;
        case ErrorCode::kNonConvergence: return VOIGT_ERR_NON_CONVERGENCE;
        case ErrorCode::kEmptySample: return VOIGT_ERR_EMPTY_SAMPLE;
        case ErrorCode::kCenteredOnly: return VOIGT_ERR_CENTERED_ONLY;
        case ErrorCode::kProposalBudgetExceeded: return VOIGT_ERR_PROPOSAL_BUDGET_EXCEEDED;
        case ErrorCode::kOrderTooHigh: return VOIGT_ERR_ORDER_TOO_HIGH;
        case ErrorCode::kOptimizerFailed: return VOIGT_ERR_OPTIMIZER_FAILED;
        case ErrorCode::kDegenerateSample: return VOIGT_ERR_DEGENERATE_SAMPLE;
        case ErrorCode::kNonFinite: return VOIGT_ERR_NON_FINITE;
        case ErrorCode::kNonPositiveVariance: return VOIGT_ERR_NON_POSITIVE_VARIANCE;
        case ErrorCode::kGridTooCoarse: return VOIGT_ERR_GRID_TOO_COARSE;
        case ErrorCode::kParseError: return VOIGT_ERR_PARSE;
        case ErrorCode::kEmptyFile: return VOIGT_ERR_EMPTY_FILE;
        case ErrorCode::kIo: return VOIGT_ERR_IO;
    }
    return VOIGT_ERR_INTERNAL;
}

voigt_status fail(voigt_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

template <typename Fn>
voigt_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const voigt::Error& e) {
        return fail(to_status(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(VOIGT_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VOIGT_ERR_INTERNAL, e.what());
    }
}

#define VOIGT_REQUIRE(ptr)                                                         \
    do {                                                                           \
        if ((ptr) == nullptr) return fail(VOIGT_ERR_INVALID_ARGUMENT, #ptr " is NULL"); \
    } while (0)

template <typename T>
voigt_status make_dist(T&& dist, voigt_dist** out) {
    *out = new voigt_dist{std::forward<T>(dist)};
    return VOIGT_OK;
}

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

voigt_status unsupported(const char* what) { return fail(VOIGT_ERR_UNSUPPORTED, what); }

}  // namespace

extern "C" {

const char* voigt_last_error(void) { return g_last_error.c_str(); }

const char* voigt_status_name(voigt_status status) {
    switch (status) {
        case VOIGT_OK: return "Ok";
        case VOIGT_ERR_UNSUPPORTED: return "Unsupported";
        case VOIGT_ERR_INTERNAL: return "Internal";
        default: break;
    }
    if (status >= VOIGT_ERR_INVALID_ARGUMENT && status <= VOIGT_ERR_IO) {
        return voigt::error_code_name(static_cast<voigt::ErrorCode>(status));
    }
    return "Unknown";
}

voigt_status voigt_std_normal_cdf(double x, double* out) {
    VOIGT_REQUIRE(out);
    return guarded([&] {
        *out = voigt::std_normal_cdf(x);
        return VOIGT_OK;
    });
}

voigt_status voigt_mills_ratio(double t, double* out) {
    VOIGT_REQUIRE(out);
    return guarded([&] {
        *out = voigt::mills_ratio(t);
        return VOIGT_OK;
    });
}

voigt_status voigt_truncnorm_moment(double mean, double sd, double lower, int order, double* out) {
    VOIGT_REQUIRE(out);
    return guarded([&] {
        *out = voigt::truncnorm_moment({mean, sd, lower}, order);
        return VOIGT_OK;
    });
}

voigt_status voigt_rng_create(uint64_t seed, uint64_t stream_id, voigt_rng** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] {
        *out = new voigt_rng{voigt::RngStream(seed, stream_id)};
        return VOIGT_OK;
    });
}

void voigt_rng_destroy(voigt_rng* rng) { delete rng; }

voigt_status voigt_dist_create_voigt(double mu, double gamma, double sigma, voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::Voigt({mu, gamma, sigma}), out); });
}

voigt_status voigt_dist_create_dual_voigt(double gamma, double sigma, voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::DualVoigt({0.0, gamma, sigma}), out); });
}

voigt_status voigt_dist_create_dual_mixing(double gamma, double sigma, voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::DualMixing(voigt::DualMixingParams{{0.0, gamma, sigma}}), out); });
}

voigt_status voigt_dist_create_levy(double location, double scale, voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::Levy({location, scale}), out); });
}

voigt_status voigt_dist_create_cauchy(double gamma, voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::Cauchy(gamma), out); });
}

voigt_status voigt_dist_create_trunc_normal(double mean, double sd, double lower,
                                            voigt_dist** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] { return make_dist(voigt::TruncNormal({mean, sd, lower}), out); });
}

void voigt_dist_destroy(voigt_dist* dist) { delete dist; }

voigt_status voigt_dist_pdf(const voigt_dist* dist, double x, double* out) {
    VOIGT_REQUIRE(dist);
    VOIGT_REQUIRE(out);
    return guarded([&] {
        *out = std::visit([x](const auto& d) { return d.pdf(x); }, dist->dist);
        return VOIGT_OK;
    });
}

voigt_status voigt_dist_cdf(const voigt_dist* dist, double x, double* out) {
    VOIGT_REQUIRE(dist);
    VOIGT_REQUIRE(out);
    return guarded([&]() -> voigt_status {
        return std::visit(
            overloaded{
                [](const voigt::Voigt&) { return unsupported("the Voigt cdf is not provided"); },
                [](const voigt::DualVoigt&) {
                    return unsupported("the dual Voigt cdf is not provided");
                },
                [&](const auto& d) {
                    *out = d.cdf(x);
                    return VOIGT_OK;
                }},
            dist->dist);
    });
}

voigt_status voigt_dist_moment(const voigt_dist* dist, int order, double* out) {
    VOIGT_REQUIRE(dist);
    VOIGT_REQUIRE(out);
    return guarded([&]() -> voigt_status {
        if (const auto* d = std::get_if<voigt::DualVoigt>(&dist->dist)) {
            *out = d->moment(order);
            return VOIGT_OK;
        }
        if (const auto* d = std::get_if<voigt::TruncNormal>(&dist->dist)) {
            *out = d->moment(order);
            return VOIGT_OK;
        }
        return unsupported("moments are provided for the dual Voigt and truncated normal only");
    });
}

voigt_status voigt_dist_sample(const voigt_dist* dist, voigt_rng* rng, voigt_sampler sampler,
                               double* out, size_t n, voigt_proposal_counts* counts) {
    VOIGT_REQUIRE(dist);
    VOIGT_REQUIRE(rng);
    if (n > 0) VOIGT_REQUIRE(out);
    return guarded([&]() -> voigt_status {
        voigt::ProposalCounter counter;
        if (counts) counter = {counts->proposals, counts->accepted};
        auto& stream = rng->stream;
        auto fill = [&](auto&& draw) {
            for (size_t i = 0; i < n; ++i) out[i] = draw();
            return VOIGT_OK;
        };
        const voigt_status status = std::visit(
            overloaded{
                [&](const voigt::Voigt& d) -> voigt_status {
                    switch (sampler) {
                        case VOIGT_SAMPLER_DEFAULT:
                        case VOIGT_SAMPLER_CONVOLUTION:
                            return fill([&] { return d.sample_conv(stream); });
                        case VOIGT_SAMPLER_MIXTURE:
                            return fill([&] { return d.sample_mix(stream); });
                        default:
                            return unsupported("Voigt samplers: convolution or mixture");
                    }
                },
                [&](const voigt::DualVoigt& d) -> voigt_status {
                    switch (sampler) {
                        case VOIGT_SAMPLER_DEFAULT:
                        case VOIGT_SAMPLER_REFLECT:
                            return fill([&] { return d.sample_reflect(stream); });
                        case VOIGT_SAMPLER_ACCEPT_REJECT:
                            return fill([&] { return d.sample_ar(stream, &counter); });
                        case VOIGT_SAMPLER_MIXTURE: {
                            const voigt::DualMixing mixing({d.params()});
                            return fill([&] { return mixing.sample_scale_mixture(stream, &counter); });
                        }
                        default:
                            return unsupported("dual Voigt samplers: reflect, accept-reject or mixture");
                    }
                },
                [&](const voigt::DualMixing& d) -> voigt_status {
                    if (sampler != VOIGT_SAMPLER_DEFAULT) {
                        return unsupported("the dual mixing law has a single sampler");
                    }
                    return fill([&] { return d.sample(stream, &counter); });
                },
                [&](const auto& d) -> voigt_status {
                    if (sampler != VOIGT_SAMPLER_DEFAULT) {
                        return unsupported("this distribution has a single sampler");
                    }
                    return fill([&] { return d.sample(stream); });
                }},
            dist->dist);
        if (counts) *counts = {counter.proposals, counter.accepted};
        return status;
    });
}

voigt_status voigt_fit(const double* sample, size_t n, voigt_fit_method method,
                       voigt_fit_result* out) {
    VOIGT_REQUIRE(out);
    if (n > 0) VOIGT_REQUIRE(sample);
    return guarded([&] {
        const auto m = method == VOIGT_FIT_MOM ? voigt::FitMethod::kMoM : voigt::FitMethod::kML;
        const voigt::FitResult r = voigt::fit({sample, n}, m);
        *out = {r.gamma_hat, r.sigma_hat, r.latent_m,  r.latent_var,
                r.objective_value, r.iterations, r.converged ? 1 : 0, method};
        return VOIGT_OK;
    });
}

voigt_status voigt_study_run(const voigt_study_config* cfg, voigt_study** out) {
    VOIGT_REQUIRE(cfg);
    VOIGT_REQUIRE(out);
    return guarded([&] {
        voigt::StudyConfig sc;
        sc.true_gamma = cfg->true_gamma;
        sc.true_sigma = cfg->true_sigma;
        if (cfg->sample_sizes != nullptr) {
            sc.sample_sizes.assign(cfg->sample_sizes, cfg->sample_sizes + cfg->n_sample_sizes);
        }
        sc.replicates = cfg->replicates;
        sc.seed = cfg->seed;
        sc.methods.clear();
        if (cfg->include_ml) sc.methods.push_back(voigt::FitMethod::kML);
        if (cfg->include_mom) sc.methods.push_back(voigt::FitMethod::kMoM);
        auto study = std::make_unique<voigt_study>();
        study->table = voigt::run_study(sc);
        std::ostringstream csv;
        voigt::write_csv(csv, study->table);
        study->csv = csv.str();
        *out = study.release();
        return VOIGT_OK;
    });
}

voigt_status voigt_study_row_count(const voigt_study* study, size_t* out) {
    VOIGT_REQUIRE(study);
    VOIGT_REQUIRE(out);
    *out = study->table.rows.size();
    return VOIGT_OK;
}

voigt_status voigt_study_row_at(const voigt_study* study, size_t index, voigt_study_row* out) {
    VOIGT_REQUIRE(study);
    VOIGT_REQUIRE(out);
    if (index >= study->table.rows.size()) {
        return fail(VOIGT_ERR_INVALID_ARGUMENT, "row index out of range");
    }
    const voigt::SimRow& r = study->table.rows[index];
    *out = {r.n,
            r.method == voigt::FitMethod::kML ? VOIGT_FIT_ML : VOIGT_FIT_MOM,
            r.mean_gamma_hat,
            r.mean_sigma_hat,
            r.sd_gamma_hat,
            r.sd_sigma_hat,
            r.n_ok,
            r.n_failed};
    return VOIGT_OK;
}

voigt_status voigt_study_csv(const voigt_study* study, const char** out) {
    VOIGT_REQUIRE(study);
    VOIGT_REQUIRE(out);
    *out = study->csv.c_str();
    return VOIGT_OK;
}

void voigt_study_destroy(voigt_study* study) { delete study; }

voigt_status voigt_identity_suite(const double* gammas, const double* sigmas, size_t n_grid,
                                  size_t n, uint64_t seed, int normalization,
                                  voigt_report** out) {
    VOIGT_REQUIRE(out);
    return guarded([&] {
        voigt::IdentitySuiteConfig cfg;
        if (gammas != nullptr || sigmas != nullptr) {
            if (gammas == nullptr || sigmas == nullptr) {
                return fail(VOIGT_ERR_INVALID_ARGUMENT, "gammas and sigmas must both be given");
            }
            for (size_t i = 0; i < n_grid; ++i) cfg.grid.emplace_back(gammas[i], sigmas[i]);
        } else {
            cfg.grid = voigt::default_identity_grid();
        }
        cfg.n = n;
        cfg.seed = seed;
        cfg.normalization = normalization != 0;
        auto report = std::make_unique<voigt_report>();
        report->report = voigt::run_identity_suite(cfg);
        std::ostringstream csv;
        voigt::write_csv(csv, report->report);
        report->csv = csv.str();
        *out = report.release();
        return VOIGT_OK;
    });
}

voigt_status voigt_report_passed(const voigt_report* report, int* out) {
    VOIGT_REQUIRE(report);
    VOIGT_REQUIRE(out);
    *out = report->report.passed() ? 1 : 0;
    return VOIGT_OK;
}

voigt_status voigt_report_count(const voigt_report* report, size_t* out) {
    VOIGT_REQUIRE(report);
    VOIGT_REQUIRE(out);
    *out = report->report.checks.size();
    return VOIGT_OK;
}

voigt_status voigt_report_check_at(const voigt_report* report, size_t index, voigt_check* out) {
    VOIGT_REQUIRE(report);
    VOIGT_REQUIRE(out);
    if (index >= report->report.checks.size()) {
        return fail(VOIGT_ERR_INVALID_ARGUMENT, "check index out of range");
    }
    const voigt::IdentityCheck& c = report->report.checks[index];
    *out = {c.identity.c_str(), c.gamma, c.sigma, c.measured, c.threshold, c.passed ? 1 : 0,
            c.skipped ? 1 : 0};
    return VOIGT_OK;
}

voigt_status voigt_report_csv(const voigt_report* report, const char** out) {
    VOIGT_REQUIRE(report);
    VOIGT_REQUIRE(out);
    *out = report->csv.c_str();
    return VOIGT_OK;
}

void voigt_report_destroy(voigt_report* report) { delete report; }

voigt_status voigt_figure_data(const char* which, const double* gammas, const double* sigmas,
                               size_t n_pairs, double grid_from, double grid_to,
                               size_t grid_points, voigt_figure** out) {
    VOIGT_REQUIRE(which);
    VOIGT_REQUIRE(out);
    return guarded([&] {
        const auto kind = voigt::parse_figure_kind(which);
        if (!kind) return fail(VOIGT_ERR_INVALID_ARGUMENT, std::string("unknown figure: ") + which);
        std::vector<std::pair<double, double>> params;
        if (gammas != nullptr && sigmas != nullptr) {
            for (size_t i = 0; i < n_pairs; ++i) params.emplace_back(gammas[i], sigmas[i]);
        } else {
            params = voigt::default_figure_params(*kind);
        }
        voigt::GridSpec grid = voigt::default_figure_grid(*kind);
        if (grid_points != 0) grid = {grid_from, grid_to, grid_points};
        auto figure = std::make_unique<voigt_figure>();
        figure->table = voigt::figure_data(*kind, params, grid);
        std::ostringstream csv;
        voigt::write_csv(csv, figure->table);
        figure->csv = csv.str();
        *out = figure.release();
        return VOIGT_OK;
    });
}

voigt_status voigt_figure_csv(const voigt_figure* figure, const char** out) {
    VOIGT_REQUIRE(figure);
    VOIGT_REQUIRE(out);
    *out = figure->csv.c_str();
    return VOIGT_OK;
}

voigt_status voigt_figure_row_count(const voigt_figure* figure, size_t* out) {
    VOIGT_REQUIRE(figure);
    VOIGT_REQUIRE(out);
    *out = figure->table.rows.size();
    return VOIGT_OK;
}

void voigt_figure_destroy(voigt_figure* figure) { delete figure; }

}  // extern "C"
