#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/manifold.hpp"
#include "core/types.hpp"

namespace pmproc {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr const char* kCsvHeader =
    "r,n,seed,restart,numerator,denominator,k_hat,best_iter_num,"
    "best_iter_den,resid_num,resid_den,wall_ms";

struct SweepConfig {
  std::vector<int> r_values{2, 3, 4};
  std::vector<int> n_offsets{1, 2, 3};
  std::vector<std::uint64_t> seeds{42};
  OptConfig opt;           // opt.restarts is unused; the sides are split below
  int restarts_full = 3;   // ascents over the full space per (r, n, seed)
  int restarts_sub = 5;    // ascents over the subspace per (r, n, seed)
  int workers = 0;         // 0 = hardware concurrency
  /// When false (the default) the wall_ms column is written as 0 so that
  /// identical configs produce byte-identical files; measured timings are
  /// still reported on the progress stream.
  bool record_timing = false;
  std::string output_dir;

  void validate() const;
  static SweepConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct ResultRow {
  int r = 0;
  int n = 0;
  std::uint64_t seed = 0;
  int restart = 0;
  double numerator = 0.0;
  double denominator = 0.0;
  double k_hat = 0.0;
  long best_iter_num = 0;
  long best_iter_den = 0;
  double resid_num = 0.0;
  double resid_den = 0.0;
  std::int64_t wall_ms = 0;
};

/// Runs the (r, n, seed) grid and writes results.csv plus a results.json
/// sidecar into output_dir; returns the CSV path. Output bytes depend only
/// on the config, not on the worker count.
std::string run_sweep(const SweepConfig& cfg);

std::vector<ResultRow> parse_results_csv(const std::string& path);

struct MedianPoint {
  int r = 0;
  int n = 0;
  double median_ratio = 0.0;
};

/// Per (r, n): the best-of-restarts ratio for each seed, reduced to the
/// median over seeds.
std::vector<MedianPoint> median_ratios(const std::vector<ResultRow>& rows);

/// Runs the selected campaign, writes a JSON report, returns the total
/// failure count.
std::int64_t run_verify(const std::string& selector, std::uint64_t seed,
                        const std::string& out_path);

/// Renders the sweep results as a self-contained SVG (median ratio vs r,
/// one series per n-offset, reference line at 1); returns the SVG path.
std::string emit_plot(const std::string& csv_path, const std::string& svg_path);

/// Builds the frame decomposition of a Haar measurement for the given seed,
/// optionally runs the partition search, and dumps the weight list with its
/// variance-matrix norm to JSON.
std::string decompose_dump(int n, int r, std::uint64_t seed, long budget,
                           const std::string& out_path);

}  // namespace pmproc
