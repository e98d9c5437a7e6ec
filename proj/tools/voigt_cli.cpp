// Command-line front end. Talks to the library only through voigt.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sample_csv.hpp"
#include "voigt/voigt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Failure {
    std::string code;
    std::string message;
    int exit_code;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

int report(const Failure& f) {
    std::cerr << "error: code=" << f.code << " message=" << quote(f.message) << "\n";
    return f.exit_code;
}

int exit_code_for(voigt_status status) {
    switch (status) {
        case VOIGT_ERR_NON_CONVERGENCE:
        case VOIGT_ERR_OPTIMIZER_FAILED:
        case VOIGT_ERR_NON_FINITE:
        case VOIGT_ERR_PROPOSAL_BUDGET_EXCEEDED:
        case VOIGT_ERR_NON_POSITIVE_VARIANCE:
        case VOIGT_ERR_INTERNAL:
            return kExitNumerical;
        default:
            return kExitUsage;
    }
}

void check(voigt_status status) {
    if (status == VOIGT_OK) return;
    throw Failure{voigt_status_name(status), voigt_last_error(), exit_code_for(status)};
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct DistDeleter {
    void operator()(voigt_dist* d) const { voigt_dist_destroy(d); }
};
struct RngDeleter {
    void operator()(voigt_rng* r) const { voigt_rng_destroy(r); }
};
using DistPtr = std::unique_ptr<voigt_dist, DistDeleter>;
using RngPtr = std::unique_ptr<voigt_rng, RngDeleter>;

struct Options {
    double mu = 0.0;
    double gamma = 1.0;
    double sigma = 1.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
    std::optional<double> grid_from;
    std::optional<double> grid_to;
    std::size_t grid_points = 0;

    std::string dist = "voigt";
    std::string sampler = "default";
    std::vector<double> at;
    std::string method = "ml";
    std::size_t replicates = 100;
    std::vector<std::size_t> sizes;
    bool normalization = false;
    std::string which;
};

class Output {
  public:
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw Failure{"Io", "cannot open " + path + " for writing", kExitUsage};
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

DistPtr make_dist(const Options& o) {
    voigt_dist* raw = nullptr;
    if (o.dist == "voigt") {
        check(voigt_dist_create_voigt(o.mu, o.gamma, o.sigma, &raw));
    } else if (o.dist == "dual-voigt") {
        if (o.mu != 0.0) throw Failure{"CenteredOnly", "dual-voigt requires --mu 0", kExitUsage};
        check(voigt_dist_create_dual_voigt(o.gamma, o.sigma, &raw));
    } else {
        if (o.mu != 0.0) throw Failure{"CenteredOnly", "dual-mixing requires --mu 0", kExitUsage};
        check(voigt_dist_create_dual_mixing(o.gamma, o.sigma, &raw));
    }
    return DistPtr(raw);
}

int run_pdf(const Options& o) {
    auto dist = make_dist(o);
    std::vector<double> xs = o.at;
    if (xs.empty()) {
        const std::size_t points = o.grid_points ? o.grid_points : 161;
        const double from = o.grid_from.value_or(-4.0);
        const double to = o.grid_to.value_or(4.0);
        if (points < 2 || !(to > from)) {
            throw Failure{"InvalidArgument", "grid needs --grid-to > --grid-from and >= 2 points",
                          kExitUsage};
        }
        for (std::size_t i = 0; i < points; ++i) {
            xs.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1));
        }
    }
    Output out(o.output);
    const bool single = o.at.size() == 1;
    if (!single) out.stream() << "x,density\n";
    for (double x : xs) {
        double p = 0.0;
        check(voigt_dist_pdf(dist.get(), x, &p));
        if (single) {
            out.stream() << fmt(p) << "\n";
        } else {
            out.stream() << fmt(x) << "," << fmt(p) << "\n";
        }
    }
    return kExitOk;
}

voigt_sampler parse_sampler(const std::string& s) {
    if (s == "conv") return VOIGT_SAMPLER_CONVOLUTION;
    if (s == "mix") return VOIGT_SAMPLER_MIXTURE;
    if (s == "reflect") return VOIGT_SAMPLER_REFLECT;
    if (s == "ar") return VOIGT_SAMPLER_ACCEPT_REJECT;
    return VOIGT_SAMPLER_DEFAULT;
}

int run_sample(const Options& o) {
    auto dist = make_dist(o);
    voigt_rng* raw = nullptr;
    check(voigt_rng_create(o.seed, 0, &raw));
    RngPtr rng(raw);
    std::vector<double> values(o.n);
    check(voigt_dist_sample(dist.get(), rng.get(), parse_sampler(o.sampler), values.data(),
                            values.size(), nullptr));
    Output out(o.output);
    for (double v : values) out.stream() << fmt(v) << "\n";
    return kExitOk;
}

int run_fit(const Options& o) {
    std::vector<double> sample;
    try {
        sample = voigt_cli::read_sample_csv(o.input);
    } catch (const voigt_cli::SampleCsvError& e) {
        using Kind = voigt_cli::SampleCsvError::Kind;
        const char* code = e.kind() == Kind::kParse ? "ParseError"
                           : e.kind() == Kind::kEmptyFile ? "EmptyFile"
                                                          : "Io";
        throw Failure{code, e.what(), kExitUsage};
    }
    voigt_fit_result r{};
    check(voigt_fit(sample.data(), sample.size(),
                    o.method == "mom" ? VOIGT_FIT_MOM : VOIGT_FIT_ML, &r));
    Output out(o.output);
    out.stream() << "method,n,gamma_hat,sigma_hat,latent_m,latent_var,converged\n"
                 << o.method << "," << sample.size() << "," << fmt(r.gamma_hat) << ","
                 << fmt(r.sigma_hat) << "," << fmt(r.latent_m) << "," << fmt(r.latent_var) << ","
                 << r.converged << "\n";
    if (!r.converged) {
        std::cerr << "warning: gamma_hat is not positive; the sample does not support a dual Voigt fit\n";
    }
    return kExitOk;
}

int run_table1(const Options& o) {
    voigt_study_config cfg{};
    cfg.true_gamma = o.gamma;
    cfg.true_sigma = o.sigma;
    cfg.sample_sizes = o.sizes.empty() ? nullptr : o.sizes.data();
    cfg.n_sample_sizes = o.sizes.size();
    cfg.replicates = o.replicates;
    cfg.seed = o.seed;
    cfg.include_ml = o.method != "mom";
    cfg.include_mom = o.method != "ml";
    voigt_study* study = nullptr;
    check(voigt_study_run(&cfg, &study));
    std::unique_ptr<voigt_study, void (*)(voigt_study*)> guard(study, voigt_study_destroy);
    const char* csv = nullptr;
    check(voigt_study_csv(study, &csv));
    Output out(o.output);
    out.stream() << csv;
    return kExitOk;
}

int run_verify(const Options& o) {
    voigt_report* report = nullptr;
    check(voigt_identity_suite(nullptr, nullptr, 0, o.n ? o.n : 10000, o.seed,
                               o.normalization ? 1 : 0, &report));
    std::unique_ptr<voigt_report, void (*)(voigt_report*)> guard(report, voigt_report_destroy);
    const char* csv = nullptr;
    check(voigt_report_csv(report, &csv));
    {
        Output out(o.output);
        out.stream() << csv;
    }
    int passed = 0;
    check(voigt_report_passed(report, &passed));
    if (!passed) {
        throw Failure{"VerificationFailed", "one or more identity checks failed", kExitNumerical};
    }
    return kExitOk;
}

int run_figures(const Options& o, bool params_given) {
    const bool any_grid = o.grid_from || o.grid_to || o.grid_points;
    if (any_grid && !(o.grid_from && o.grid_to && o.grid_points)) {
        throw Failure{"Usage", "--grid-from, --grid-to and --grid-points go together", kExitUsage};
    }
    const double g = o.gamma;
    const double s = o.sigma;
    voigt_figure* fig = nullptr;
    check(voigt_figure_data(o.which.c_str(), params_given ? &g : nullptr,
                            params_given ? &s : nullptr, params_given ? 1 : 0,
                            o.grid_from.value_or(0.0), o.grid_to.value_or(0.0), o.grid_points,
                            &fig));
    std::unique_ptr<voigt_figure, void (*)(voigt_figure*)> guard(fig, voigt_figure_destroy);
    const char* csv = nullptr;
    check(voigt_figure_csv(fig, &csv));
    Output out(o.output);
    out.stream() << csv;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voigt and dual Voigt distributions: densities, samplers, fitting, studies"};
    app.require_subcommand(1);
    Options o;

    const auto positive = CLI::PositiveNumber;
    auto add_shape = [&](CLI::App* sub) {
        sub->add_option("--mu", o.mu, "Location (default 0)");
        sub->add_option("--gamma", o.gamma, "Cauchy scale gamma > 0 (default 1)")->check(positive);
        sub->add_option("--sigma", o.sigma, "Normal scale sigma > 0 (default 1)")->check(positive);
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--grid-from", o.grid_from, "Grid start");
        sub->add_option("--grid-to", o.grid_to, "Grid end");
        sub->add_option("--grid-points", o.grid_points, "Number of grid points");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--output,-o", o.output, "Write to this file instead of stdout");
    };
    const std::vector<std::string> dists{"voigt", "dual-voigt", "dual-mixing"};

    auto* pdf = app.add_subcommand("pdf", "Evaluate a density at --at points or on a grid");
    add_shape(pdf);
    pdf->add_option("--dist", o.dist, "voigt | dual-voigt | dual-mixing")
        ->check(CLI::IsMember(dists));
    pdf->add_option("--at", o.at, "Evaluation point(s)");
    add_grid(pdf);
    add_output(pdf);

    auto* sample = app.add_subcommand("sample", "Draw variates, one per line");
    add_shape(sample);
    sample->add_option("--dist", o.dist, "voigt | dual-voigt | dual-mixing")
        ->check(CLI::IsMember(dists));
    sample->add_option("--sampler", o.sampler, "default | conv | mix | reflect | ar")
        ->check(CLI::IsMember({"default", "conv", "mix", "reflect", "ar"}));
    sample->add_option("--n", o.n, "Number of draws")->required();
    sample->add_option("--seed", o.seed, "Seed (default 0)");
    add_output(sample);

    auto* fit = app.add_subcommand("fit", "Fit a dual Voigt to a one-column sample file");
    fit->add_option("--input", o.input, "Sample file")->required();
    fit->add_option("--method", o.method, "ml | mom")->check(CLI::IsMember({"ml", "mom"}));
    add_output(fit);

    auto* table1 = app.add_subcommand("table1", "Replicated estimation study");
    table1->add_option("--gamma", o.gamma, "True gamma (default 1)")->check(positive);
    table1->add_option("--sigma", o.sigma, "True sigma (default 1)")->check(positive);
    table1->add_option("--replicates", o.replicates, "Replicates per sample size (default 100)")
        ->check(positive);
    table1->add_option("--sizes", o.sizes, "Sample sizes (default 100 500 1000 5000)")
        ->delimiter(',');
    table1->add_option("--seed", o.seed, "Seed (default 0)");
    table1->add_option("--method", o.method, "ml | mom | both (default both)")
        ->check(CLI::IsMember({"ml", "mom", "both"}));
    add_output(table1);

    auto* verify = app.add_subcommand("verify", "Run the identity suite; exit 2 if any check fails");
    verify->add_option("--n", o.n, "Draws per KS check (default 10000)");
    verify->add_option("--seed", o.seed, "Seed (default 0)");
    verify->add_flag("--normalization", o.normalization, "Also check densities integrate to 1");
    add_output(verify);

    auto* figures = app.add_subcommand("figures", "Emit figure data as CSV");
    figures->add_option("--which", o.which, "dual_density | mixing_construction | mixing_compare")
        ->required()
        ->check(CLI::IsMember({"dual_density", "mixing_construction", "mixing_compare"}));
    auto* fig_gamma = figures->add_option("--gamma", o.gamma, "Single gamma instead of defaults")
                          ->check(positive);
    auto* fig_sigma = figures->add_option("--sigma", o.sigma, "Single sigma instead of defaults")
                          ->check(positive);
    add_grid(figures);
    add_output(figures);

    bool table1_method_set = false;
    try {
        app.parse(argc, argv);
        table1_method_set = table1->count("--method") > 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report({"Usage", e.what(), kExitUsage});
    }

    try {
        if (*pdf) return run_pdf(o);
        if (*sample) return run_sample(o);
        if (*fit) return run_fit(o);
        if (*table1) {
            if (!table1_method_set) o.method = "both";
            return run_table1(o);
        }
        if (*verify) return run_verify(o);
        if (*figures) {
            if (fig_gamma->count() != fig_sigma->count()) {
                throw Failure{"Usage", "--gamma and --sigma must be given together", kExitUsage};
            }
            return run_figures(o, fig_gamma->count() > 0);
        }
    } catch (const Failure& f) {
        return report(f);
    } catch (const std::exception& e) {
        return report({"Internal", e.what(), kExitNumerical});
    }
    return kExitUsage;
}
