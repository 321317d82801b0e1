/* pmproc — projective-measurement Procrustes toolkit.
 *
 * C API over the core library: seeded generators, states and measurements,
 * manifold ascent, the suboptimality-ratio estimator, and the experiment
 * drivers (sweep / verify / plot / decompose).
 *
 * Conventions:
 *   - Complex matrices cross the boundary as interleaved doubles
 *     (re, im), row-major, so a dim x dim matrix occupies dim*dim*2
 *     doubles. Caller owns all buffers.
 *   - Functions returning pmproc_status never throw; on failure they return
 *     a nonzero code and pmproc_last_error() carries a human-readable
 *     message for the calling thread.
 */

#ifndef PMPROC_H
#define PMPROC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pmproc_status {
  PMPROC_OK = 0,
  PMPROC_ERR_INVALID_DIMENSION = 1,
  PMPROC_ERR_SHAPE = 2,
  PMPROC_ERR_INVALID_PERMUTATION = 3,
  PMPROC_ERR_DOMAIN = 4,
  PMPROC_ERR_SPECTRAL_DEGENERACY = 5,
  PMPROC_ERR_DEGENERATE_RETRACTION = 6,
  PMPROC_ERR_IO = 7,
  PMPROC_ERR_PARSE = 8,
  PMPROC_ERR_UNKNOWN_SELECTOR = 9,
  PMPROC_ERR_INVALID_CONFIG = 10,
  PMPROC_ERR_NULL_ARGUMENT = 11,
  PMPROC_ERR_BUFFER_TOO_SMALL = 12,
  PMPROC_ERR_UNKNOWN = 13
} pmproc_status;

/* ------------------------------------------------------------------ info */

const char* pmproc_version(void);
/* Name of the generator / normal-sampling algorithms baked into this build. */
const char* pmproc_rng_algorithm(void);
const char* pmproc_status_message(pmproc_status status);
/* Message for the most recent failure on the calling thread ("" if none). */
const char* pmproc_last_error(void);

/* ------------------------------------------------------------------- rng */

typedef struct pmproc_rng pmproc_rng;

pmproc_rng* pmproc_rng_new(uint64_t seed);
/* Child stream keyed by (parent seed, keys); independent of draw order. */
pmproc_rng* pmproc_rng_derive(const pmproc_rng* rng, const uint64_t* keys,
                              size_t num_keys);
void pmproc_rng_free(pmproc_rng* rng);
double pmproc_rng_uniform(pmproc_rng* rng);
double pmproc_rng_normal(pmproc_rng* rng);

/* ---------------------------------------------------- states and values */

/* Random density matrix: Haar unitary conjugating a uniform simplex. */
pmproc_status pmproc_random_density(pmproc_rng* rng, int32_t dim, double* out);
/* Haar-distributed unitary (measurement basis). */
pmproc_status pmproc_haar_unitary(pmproc_rng* rng, int32_t dim, double* out);

/* sum_i tr(P_i rho) tr(P_i tau) for the measurement with the given basis. */
pmproc_status pmproc_objective(int32_t dim, const double* basis,
                               const double* rho, const double* tau,
                               double* out_value);
/* Expected post-measurement state sum_i P_i rho P_i. */
pmproc_status pmproc_apply_pm(int32_t dim, const double* basis,
                              const double* rho, double* out);
pmproc_status pmproc_weighted_objective(int32_t dim, const double* basis,
                                        const double* weight,
                                        const double* rho, const double* tau,
                                        double* out_value);
/* Frobenius norm of [rho, P[tau]] - [P[rho], tau]. */
pmproc_status pmproc_stationarity_residual(int32_t dim, const double* basis,
                                           const double* rho,
                                           const double* tau,
                                           double* out_value);

/* ---------------------------------------------------------- optimization */

pmproc_status pmproc_riemannian_gradient(int32_t dim, const double* unitary,
                                         const double* rho, const double* tau,
                                         double* out);
pmproc_status pmproc_retract(int32_t dim, const double* unitary,
                             const double* direction, double step,
                             double* out);
/* Projected gradient ascent from u0; writes the best iterate and its value.
 * grad_tol = 0 disables early stopping. Any output pointer may be NULL. */
pmproc_status pmproc_ascend(int32_t dim, const double* rho, const double* tau,
                            const double* u0, int64_t t_max, double step,
                            double grad_tol, double* out_unitary,
                            double* out_best_value, int64_t* out_best_iter,
                            double* out_final_grad_norm);
/* Suboptimality-ratio estimate for one sampled state pair at (n, r). */
pmproc_status pmproc_estimate_k(int32_t n, int32_t r, int64_t t_max,
                                double step, double grad_tol,
                                int32_t restarts_full, int32_t restarts_sub,
                                uint64_t seed, double* out_numerator,
                                double* out_denominator, double* out_ratio);

/* -------------------------------------------------------------- drivers */

/* Runs the sweep described by the JSON config (see README for the schema)
 * and writes results.csv / results.json into its output_dir. The CSV path
 * is copied into out_csv_path when non-NULL. */
pmproc_status pmproc_run_sweep(const char* config_json, char* out_csv_path,
                               size_t out_capacity);
/* selector: "frames", "randomization", "inequalities" or "all". Writes a
 * JSON report; *out_failures receives the total failure count. */
pmproc_status pmproc_run_verify(const char* selector, uint64_t seed,
                                const char* report_path,
                                int64_t* out_failures);
/* Renders a results CSV as a self-contained SVG. */
pmproc_status pmproc_emit_plot(const char* csv_path, const char* svg_path);
/* Frame decomposition of a seeded Haar measurement, with a randomized
 * partition search of the given budget; dumps the weight list and its
 * variance-matrix norm as JSON. */
pmproc_status pmproc_decompose(int32_t n, int32_t r, uint64_t seed,
                               int64_t budget, const char* out_path);

#ifdef __cplusplus
}
#endif

#endif /* PMPROC_H */
