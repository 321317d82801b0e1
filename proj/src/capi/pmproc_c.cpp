#include "pmproc/pmproc.h"

#include <cstring>
#include <new>
#include <string>

#include "core/driver.hpp"
#include "core/frames.hpp"
#include "core/manifold.hpp"
#include "core/quantum.hpp"
#include "core/rng.hpp"
#include "core/types.hpp"

namespace {

using pmproc::Error;
using pmproc::ErrorCode;
using pmproc::Matrix;

thread_local std::string g_last_error;

pmproc_status map_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_dimension: return PMPROC_ERR_INVALID_DIMENSION;
    case ErrorCode::shape_error: return PMPROC_ERR_SHAPE;
    case ErrorCode::invalid_permutation: return PMPROC_ERR_INVALID_PERMUTATION;
    case ErrorCode::domain_error: return PMPROC_ERR_DOMAIN;
    case ErrorCode::spectral_degeneracy: return PMPROC_ERR_SPECTRAL_DEGENERACY;
    case ErrorCode::degenerate_retraction: return PMPROC_ERR_DEGENERATE_RETRACTION;
    case ErrorCode::io_error: return PMPROC_ERR_IO;
    case ErrorCode::parse_error: return PMPROC_ERR_PARSE;
    case ErrorCode::unknown_selector: return PMPROC_ERR_UNKNOWN_SELECTOR;
    case ErrorCode::invalid_config: return PMPROC_ERR_INVALID_CONFIG;
  }
  return PMPROC_ERR_UNKNOWN;
}

template <typename Fn>
pmproc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return PMPROC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PMPROC_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return PMPROC_ERR_UNKNOWN;
  }
}

pmproc_status require_nonnull(const void* p, const char* name) {
  if (p != nullptr) return PMPROC_OK;
  g_last_error = std::string(name) + " must not be NULL";
  return PMPROC_ERR_NULL_ARGUMENT;
}

Matrix from_buffer(int32_t dim, const double* data) {
  Matrix m(dim, dim);
  for (int32_t i = 0; i < dim; ++i) {
    for (int32_t j = 0; j < dim; ++j) {
      const double* slot = data + 2 * (static_cast<std::size_t>(i) * dim + j);
      m(i, j) = pmproc::Complex(slot[0], slot[1]);
    }
  }
  return m;
}

void to_buffer(const Matrix& m, double* out) {
  const int32_t rows = static_cast<int32_t>(m.rows());
  const int32_t cols = static_cast<int32_t>(m.cols());
  for (int32_t i = 0; i < rows; ++i) {
    for (int32_t j = 0; j < cols; ++j) {
      double* slot = out + 2 * (static_cast<std::size_t>(i) * cols + j);
      slot[0] = m(i, j).real();
      slot[1] = m(i, j).imag();
    }
  }
}

pmproc::DensityMatrix density_arg(int32_t dim, const double* data) {
  return pmproc::DensityMatrix::validated(from_buffer(dim, data));
}

pmproc::ProjectiveMeasurement pm_arg(int32_t dim, const double* data) {
  return pmproc::ProjectiveMeasurement::validated(from_buffer(dim, data));
}

void check_dim(int32_t dim) {
  if (dim < 1) {
    throw Error(ErrorCode::invalid_dimension,
                "dimension must be >= 1, got " + std::to_string(dim));
  }
}

}  // namespace

extern "C" {

struct pmproc_rng {
  pmproc::Rng impl;
};

const char* pmproc_version(void) { return pmproc::kVersion; }

const char* pmproc_rng_algorithm(void) { return "xoshiro256++/box-muller"; }

const char* pmproc_status_message(pmproc_status status) {
  switch (status) {
    case PMPROC_OK: return "ok";
    case PMPROC_ERR_INVALID_DIMENSION: return "invalid dimension";
    case PMPROC_ERR_SHAPE: return "shape mismatch";
    case PMPROC_ERR_INVALID_PERMUTATION: return "invalid permutation";
    case PMPROC_ERR_DOMAIN: return "domain error";
    case PMPROC_ERR_SPECTRAL_DEGENERACY: return "spectral degeneracy";
    case PMPROC_ERR_DEGENERATE_RETRACTION: return "degenerate retraction";
    case PMPROC_ERR_IO: return "i/o error";
    case PMPROC_ERR_PARSE: return "parse error";
    case PMPROC_ERR_UNKNOWN_SELECTOR: return "unknown selector";
    case PMPROC_ERR_INVALID_CONFIG: return "invalid configuration";
    case PMPROC_ERR_NULL_ARGUMENT: return "null argument";
    case PMPROC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case PMPROC_ERR_UNKNOWN: return "unknown error";
  }
  return "unrecognized status";
}

const char* pmproc_last_error(void) { return g_last_error.c_str(); }

pmproc_rng* pmproc_rng_new(uint64_t seed) {
  return new (std::nothrow) pmproc_rng{pmproc::Rng(seed)};
}

pmproc_rng* pmproc_rng_derive(const pmproc_rng* rng, const uint64_t* keys,
                              size_t num_keys) {
  if (rng == nullptr) return nullptr;
  pmproc::Rng child = rng->impl;
  for (size_t i = 0; i < num_keys; ++i) child = child.derive({keys[i]});
  return new (std::nothrow) pmproc_rng{child};
}

void pmproc_rng_free(pmproc_rng* rng) { delete rng; }

double pmproc_rng_uniform(pmproc_rng* rng) { return rng->impl.uniform(); }

double pmproc_rng_normal(pmproc_rng* rng) { return rng->impl.normal(); }

pmproc_status pmproc_random_density(pmproc_rng* rng, int32_t dim, double* out) {
  if (auto s = require_nonnull(rng, "rng"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out, "out"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    to_buffer(pmproc::random_density(dim, rng->impl).mat, out);
  });
}

pmproc_status pmproc_haar_unitary(pmproc_rng* rng, int32_t dim, double* out) {
  if (auto s = require_nonnull(rng, "rng"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out, "out"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    to_buffer(pmproc::haar_unitary(dim, rng->impl).basis, out);
  });
}

pmproc_status pmproc_objective(int32_t dim, const double* basis,
                               const double* rho, const double* tau,
                               double* out_value) {
  if (auto s = require_nonnull(basis, "basis"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(tau, "tau"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out_value, "out_value"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    *out_value = pmproc::objective(pm_arg(dim, basis), density_arg(dim, rho),
                                   density_arg(dim, tau));
  });
}

pmproc_status pmproc_apply_pm(int32_t dim, const double* basis,
                              const double* rho, double* out) {
  if (auto s = require_nonnull(basis, "basis"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out, "out"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    to_buffer(pmproc::apply_pm(pm_arg(dim, basis), density_arg(dim, rho)), out);
  });
}

pmproc_status pmproc_weighted_objective(int32_t dim, const double* basis,
                                        const double* weight,
                                        const double* rho, const double* tau,
                                        double* out_value) {
  if (auto s = require_nonnull(basis, "basis"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(weight, "weight"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(tau, "tau"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out_value, "out_value"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    *out_value = pmproc::weighted_objective(
        pm_arg(dim, basis), from_buffer(dim, weight), density_arg(dim, rho),
        density_arg(dim, tau));
  });
}

pmproc_status pmproc_stationarity_residual(int32_t dim, const double* basis,
                                           const double* rho,
                                           const double* tau,
                                           double* out_value) {
  if (auto s = require_nonnull(basis, "basis"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(tau, "tau"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out_value, "out_value"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    *out_value = pmproc::stationarity_residual(
        pm_arg(dim, basis), density_arg(dim, rho), density_arg(dim, tau));
  });
}

pmproc_status pmproc_riemannian_gradient(int32_t dim, const double* unitary,
                                         const double* rho, const double* tau,
                                         double* out) {
  if (auto s = require_nonnull(unitary, "unitary"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(tau, "tau"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out, "out"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    to_buffer(pmproc::riemannian_gradient(from_buffer(dim, unitary),
                                          density_arg(dim, rho),
                                          density_arg(dim, tau)),
              out);
  });
}

pmproc_status pmproc_retract(int32_t dim, const double* unitary,
                             const double* direction, double step,
                             double* out) {
  if (auto s = require_nonnull(unitary, "unitary"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(direction, "direction"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(out, "out"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    to_buffer(pmproc::retract(from_buffer(dim, unitary),
                              from_buffer(dim, direction), step),
              out);
  });
}

pmproc_status pmproc_ascend(int32_t dim, const double* rho, const double* tau,
                            const double* u0, int64_t t_max, double step,
                            double grad_tol, double* out_unitary,
                            double* out_best_value, int64_t* out_best_iter,
                            double* out_final_grad_norm) {
  if (auto s = require_nonnull(rho, "rho"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(tau, "tau"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(u0, "u0"); s != PMPROC_OK) return s;
  return guarded([&] {
    check_dim(dim);
    pmproc::OptConfig cfg;
    cfg.t_max = static_cast<long>(t_max);
    cfg.step = step;
    cfg.grad_tol = grad_tol;
    pmproc::OptTrace trace = pmproc::ascend(
        density_arg(dim, rho), density_arg(dim, tau), from_buffer(dim, u0), cfg);
    if (out_unitary != nullptr) to_buffer(trace.best_unitary, out_unitary);
    if (out_best_value != nullptr) *out_best_value = trace.best_value;
    if (out_best_iter != nullptr) *out_best_iter = trace.best_iter;
    if (out_final_grad_norm != nullptr) *out_final_grad_norm = trace.final_grad_norm;
  });
}

pmproc_status pmproc_estimate_k(int32_t n, int32_t r, int64_t t_max,
                                double step, double grad_tol,
                                int32_t restarts_full, int32_t restarts_sub,
                                uint64_t seed, double* out_numerator,
                                double* out_denominator, double* out_ratio) {
  return guarded([&] {
    pmproc::OptConfig cfg;
    cfg.t_max = static_cast<long>(t_max);
    cfg.step = step;
    cfg.grad_tol = grad_tol;
    cfg.seed = seed;
    pmproc::Rng rng(seed);
    pmproc::KEstimate est =
        pmproc::estimate_k(n, r, cfg, restarts_full, restarts_sub, rng);
    if (out_numerator != nullptr) *out_numerator = est.numerator;
    if (out_denominator != nullptr) *out_denominator = est.denominator;
    if (out_ratio != nullptr) *out_ratio = est.ratio;
  });
}

pmproc_status pmproc_run_sweep(const char* config_json, char* out_csv_path,
                               size_t out_capacity) {
  if (auto s = require_nonnull(config_json, "config_json"); s != PMPROC_OK) return s;
  return guarded([&] {
    pmproc::SweepConfig cfg = pmproc::SweepConfig::from_json_text(config_json);
    std::string path = pmproc::run_sweep(cfg);
    if (out_csv_path != nullptr) {
      if (path.size() + 1 > out_capacity) {
        throw Error(ErrorCode::io_error, "output path buffer too small");
      }
      std::memcpy(out_csv_path, path.c_str(), path.size() + 1);
    }
  });
}

pmproc_status pmproc_run_verify(const char* selector, uint64_t seed,
                                const char* report_path,
                                int64_t* out_failures) {
  if (auto s = require_nonnull(selector, "selector"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(report_path, "report_path"); s != PMPROC_OK) return s;
  return guarded([&] {
    std::int64_t failures = pmproc::run_verify(selector, seed, report_path);
    if (out_failures != nullptr) *out_failures = failures;
  });
}

pmproc_status pmproc_emit_plot(const char* csv_path, const char* svg_path) {
  if (auto s = require_nonnull(csv_path, "csv_path"); s != PMPROC_OK) return s;
  if (auto s = require_nonnull(svg_path, "svg_path"); s != PMPROC_OK) return s;
  return guarded([&] { pmproc::emit_plot(csv_path, svg_path); });
}

pmproc_status pmproc_decompose(int32_t n, int32_t r, uint64_t seed,
                               int64_t budget, const char* out_path) {
  if (auto s = require_nonnull(out_path, "out_path"); s != PMPROC_OK) return s;
  return guarded(
      [&] { pmproc::decompose_dump(n, r, seed, static_cast<long>(budget), out_path); });
}

}  // extern "C"
