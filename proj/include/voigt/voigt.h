/*
 * C interface to the Voigt / dual Voigt library.
 *
 * Every function returns a voigt_status. On failure the thread-local message
 * returned by voigt_last_error() describes the problem. Handles are opaque and
 * owned by the caller; release them with the matching *_destroy function.
 * Strings returned through out-parameters are owned by the handle and stay
 * valid until it is destroyed.
 */
#ifndef VOIGT_VOIGT_H
#define VOIGT_VOIGT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define VOIGT_API __declspec(dllexport)
#else
#define VOIGT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum voigt_status {
    VOIGT_OK = 0,
    VOIGT_ERR_INVALID_ARGUMENT = 1,
    VOIGT_ERR_NON_CONVERGENCE = 2,
    VOIGT_ERR_EMPTY_SAMPLE = 3,
    VOIGT_ERR_CENTERED_ONLY = 4,
    VOIGT_ERR_PROPOSAL_BUDGET_EXCEEDED = 5,
    VOIGT_ERR_ORDER_TOO_HIGH = 6,
    VOIGT_ERR_OPTIMIZER_FAILED = 7,
    VOIGT_ERR_DEGENERATE_SAMPLE = 8,
    VOIGT_ERR_NON_FINITE = 9,
    VOIGT_ERR_NON_POSITIVE_VARIANCE = 10,
    VOIGT_ERR_GRID_TOO_COARSE = 11,
    VOIGT_ERR_PARSE = 12,
    VOIGT_ERR_EMPTY_FILE = 13,
    VOIGT_ERR_IO = 14,
    VOIGT_ERR_UNSUPPORTED = 15,
    VOIGT_ERR_INTERNAL = 16
} voigt_status;

/* Message for the last failure on this thread ("" if none). */
VOIGT_API const char* voigt_last_error(void);
/* Stable name such as "NonConvergence". */
VOIGT_API const char* voigt_status_name(voigt_status status);

/* ---------------------------------------------------------------- scalars */

VOIGT_API voigt_status voigt_std_normal_cdf(double x, double* out);
VOIGT_API voigt_status voigt_mills_ratio(double t, double* out);
/* E[T^order], T ~ Normal(mean, sd^2) truncated to [lower, inf). */
VOIGT_API voigt_status voigt_truncnorm_moment(double mean, double sd, double lower, int order,
                                              double* out);

/* ---------------------------------------------------------------- rng */

typedef struct voigt_rng voigt_rng;

VOIGT_API voigt_status voigt_rng_create(uint64_t seed, uint64_t stream_id, voigt_rng** out);
VOIGT_API void voigt_rng_destroy(voigt_rng* rng);

/* ---------------------------------------------------------------- distributions */

typedef struct voigt_dist voigt_dist;

typedef enum voigt_sampler {
    VOIGT_SAMPLER_DEFAULT = 0,
    VOIGT_SAMPLER_CONVOLUTION = 1,   /* Voigt: Cauchy + Normal */
    VOIGT_SAMPLER_MIXTURE = 2,       /* Voigt: sqrt(Levy) * Z; dual: sqrt(V') * Z */
    VOIGT_SAMPLER_REFLECT = 3,       /* dual: signed truncated normal */
    VOIGT_SAMPLER_ACCEPT_REJECT = 4  /* dual: two-tail accept-reject */
} voigt_sampler;

typedef struct voigt_proposal_counts {
    uint64_t proposals;
    uint64_t accepted;
} voigt_proposal_counts;

VOIGT_API voigt_status voigt_dist_create_voigt(double mu, double gamma, double sigma,
                                               voigt_dist** out);
VOIGT_API voigt_status voigt_dist_create_dual_voigt(double gamma, double sigma, voigt_dist** out);
VOIGT_API voigt_status voigt_dist_create_dual_mixing(double gamma, double sigma, voigt_dist** out);
VOIGT_API voigt_status voigt_dist_create_levy(double location, double scale, voigt_dist** out);
VOIGT_API voigt_status voigt_dist_create_cauchy(double gamma, voigt_dist** out);
VOIGT_API voigt_status voigt_dist_create_trunc_normal(double mean, double sd, double lower,
                                                      voigt_dist** out);
VOIGT_API void voigt_dist_destroy(voigt_dist* dist);

VOIGT_API voigt_status voigt_dist_pdf(const voigt_dist* dist, double x, double* out);
/* VOIGT_ERR_UNSUPPORTED for the Voigt and dual Voigt. */
VOIGT_API voigt_status voigt_dist_cdf(const voigt_dist* dist, double x, double* out);
/* Dual Voigt and truncated normal only. */
VOIGT_API voigt_status voigt_dist_moment(const voigt_dist* dist, int order, double* out);
/* Draws n variates into out. counts may be NULL; it accumulates proposals of
 * the rejection samplers. */
VOIGT_API voigt_status voigt_dist_sample(const voigt_dist* dist, voigt_rng* rng,
                                         voigt_sampler sampler, double* out, size_t n,
                                         voigt_proposal_counts* counts);

/* ---------------------------------------------------------------- fitting */

typedef enum voigt_fit_method { VOIGT_FIT_ML = 0, VOIGT_FIT_MOM = 1 } voigt_fit_method;

typedef struct voigt_fit_result {
    double gamma_hat;
    double sigma_hat;
    double latent_m;
    double latent_var;
    double objective_value;
    int iterations;
    int converged;
    voigt_fit_method method;
} voigt_fit_result;

VOIGT_API voigt_status voigt_fit(const double* sample, size_t n, voigt_fit_method method,
                                 voigt_fit_result* out);

/* ---------------------------------------------------------------- estimation study */

typedef struct voigt_study voigt_study;

typedef struct voigt_study_config {
    double true_gamma;
    double true_sigma;
    const size_t* sample_sizes; /* NULL selects 100, 500, 1000, 5000 */
    size_t n_sample_sizes;
    size_t replicates;
    uint64_t seed;
    int include_ml;
    int include_mom;
} voigt_study_config;

typedef struct voigt_study_row {
    size_t n;
    voigt_fit_method method;
    double mean_gamma_hat;
    double mean_sigma_hat;
    double sd_gamma_hat;
    double sd_sigma_hat;
    size_t n_ok;
    size_t n_failed;
} voigt_study_row;

VOIGT_API voigt_status voigt_study_run(const voigt_study_config* cfg, voigt_study** out);
VOIGT_API voigt_status voigt_study_row_count(const voigt_study* study, size_t* out);
VOIGT_API voigt_status voigt_study_row_at(const voigt_study* study, size_t index,
                                          voigt_study_row* out);
VOIGT_API voigt_status voigt_study_csv(const voigt_study* study, const char** out);
VOIGT_API void voigt_study_destroy(voigt_study* study);

/* ---------------------------------------------------------------- identity suite */

typedef struct voigt_report voigt_report;

typedef struct voigt_check {
    const char* identity;
    double gamma;
    double sigma;
    double measured;
    double threshold;
    int passed;
    int skipped;
} voigt_check;

/* gammas/sigmas: n_grid parameter pairs, or NULL for the 5x5 default grid. */
VOIGT_API voigt_status voigt_identity_suite(const double* gammas, const double* sigmas,
                                            size_t n_grid, size_t n, uint64_t seed,
                                            int normalization, voigt_report** out);
VOIGT_API voigt_status voigt_report_passed(const voigt_report* report, int* out);
VOIGT_API voigt_status voigt_report_count(const voigt_report* report, size_t* out);
VOIGT_API voigt_status voigt_report_check_at(const voigt_report* report, size_t index,
                                             voigt_check* out);
VOIGT_API voigt_status voigt_report_csv(const voigt_report* report, const char** out);
VOIGT_API void voigt_report_destroy(voigt_report* report);

/* ---------------------------------------------------------------- figure data */

typedef struct voigt_figure voigt_figure;

/* which: "dual_density", "mixing_construction" or "mixing_compare".
 * gammas/sigmas NULL selects the figure's default pairs; grid_points 0
 * selects its default grid. */
VOIGT_API voigt_status voigt_figure_data(const char* which, const double* gammas,
                                         const double* sigmas, size_t n_pairs, double grid_from,
                                         double grid_to, size_t grid_points, voigt_figure** out);
VOIGT_API voigt_status voigt_figure_csv(const voigt_figure* figure, const char** out);
VOIGT_API voigt_status voigt_figure_row_count(const voigt_figure* figure, size_t* out);
VOIGT_API void voigt_figure_destroy(voigt_figure* figure);

#ifdef __cplusplus
}
#endif

#endif /* VOIGT_VOIGT_H */
