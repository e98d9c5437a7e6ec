#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "voigt/estimation.hpp"
#include "voigt/special.hpp"

namespace voigt {

// ------------------------------------------------------------ estimation study

struct StudyConfig {
    double true_gamma = 1.0;
    double true_sigma = 1.0;
    std::vector<std::size_t> sample_sizes = {100, 500, 1000, 5000};
    std::size_t replicates = 100;
    std::uint64_t seed = 0;
    std::vector<FitMethod> methods = {FitMethod::kML, FitMethod::kMoM};
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;

    void validate() const;
};

struct SimRow {
    std::size_t n = 0;
    FitMethod method = FitMethod::kML;
    double mean_gamma_hat = 0.0;
    double mean_sigma_hat = 0.0;
    double sd_gamma_hat = 0.0;
    double sd_sigma_hat = 0.0;
    std::size_t n_ok = 0;
    /// Fits excluded from the aggregates (optimizer failure or gamma_hat <= 0).
    std::size_t n_failed = 0;
};

struct SimTable {
    std::vector<SimRow> rows;

    const SimRow* find(std::size_t n, FitMethod method) const;
};

/// Replicate r at sample size n draws from the dual Voigt with
/// RngStream(derive_seed(seed, n), r). Failed fits are counted, never thrown.
SimTable run_study(const StudyConfig& cfg);

/// Per-replicate estimates for one sample size, in replicate order; failed
/// fits are std::nullopt.
std::vector<std::optional<FitResult>> replicate_fits(double gamma, double sigma, std::size_t n,
                                                     std::size_t replicates, std::uint64_t seed,
                                                     FitMethod method, unsigned threads = 0);

void write_csv(std::ostream& out, const SimTable& table);

// ------------------------------------------------------------ identity suite

struct IdentityCheck {
    std::string identity;
    double gamma = 0.0;
    double sigma = 0.0;
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = false;
    /// Not run, e.g. a rejection sampler whose acceptance is too small.
    bool skipped = false;
};

struct IdentityReport {
    std::vector<IdentityCheck> checks;
    std::size_t ks_failures = 0;
    std::size_t ks_allowance = 0;
    std::size_t exact_failures = 0;

    bool passed() const { return exact_failures == 0 && ks_failures <= ks_allowance; }
};

struct IdentitySuiteConfig {
    std::vector<std::pair<double, double>> grid;  // (gamma, sigma)
    std::size_t n = 10'000;
    std::uint64_t seed = 0;
    QuadratureConfig quadrature{};
    /// Include pdf normalization checks (nested quadrature, slower).
    bool normalization = false;
};

/// The 25-point grid {0.25, 0.5, 1, 2, 4}^2.
std::vector<std::pair<double, double>> default_identity_grid();

/// True when a rejection sampler with this acceptance probability is
/// practically guaranteed (failure odds below e^-30) to stay inside its
/// proposal budget.
bool rejection_feasible(double acceptance_probability);

/// KS checks may fail in at most floor(5%) of the KS comparisons run.
IdentityReport run_identity_suite(const IdentitySuiteConfig& cfg);

void write_csv(std::ostream& out, const IdentityReport& report);

// ------------------------------------------------------------ figure data

enum class FigureKind { kDualDensity, kMixingConstruction, kMixingCompare };

std::optional<FigureKind> parse_figure_kind(const std::string& name);
const char* figure_kind_name(FigureKind kind);

struct GridSpec {
    double from = 0.0;
    double to = 1.0;
    std::size_t points = 101;

    std::vector<double> values() const;
};

inline constexpr std::size_t kMinFigurePoints = 16;

struct FigureRow {
    std::string series;
    double gamma = 0.0;
    double sigma = 0.0;
    double x = 0.0;
    double value = 0.0;
};

struct FigureTable {
    FigureKind kind = FigureKind::kDualDensity;
    std::vector<FigureRow> rows;
};

/// Default (gamma, sigma) pairs and grids per figure.
std::vector<std::pair<double, double>> default_figure_params(FigureKind kind);
GridSpec default_figure_grid(FigureKind kind);

/// dual_density: p'(u) per pair. mixing_construction: Levy(1/s^2, g^2/s^4)
/// pdf ("levy"), its truncation below 2/s^2 ("truncated") and the reflected
/// dual mixing ("reflected"). mixing_compare: Levy(s^2, g^2) ("voigt_mixing")
/// against the dual mixing ("dual_mixing"). Throws GridTooCoarse below 16
/// points.
FigureTable figure_data(FigureKind kind, const std::vector<std::pair<double, double>>& params,
                        const GridSpec& grid);

void write_csv(std::ostream& out, const FigureTable& table);

/// 17 significant digits, '.' decimal separator.
std::string format_number(double value);

}  // namespace voigt
