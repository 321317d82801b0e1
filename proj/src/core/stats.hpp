#pragma once

#include <cmath>
#include <cstdint>

namespace pmproc {

/// Sufficient statistics (count, sum, sum of squares) for a scalar sample.
/// Shards merge by exact summation in fixed order, so parallel campaigns
/// reproduce the sequential result.
struct RunningStat {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  void merge(const RunningStat& other) {
    count += other.count;
    sum += other.sum;
    sum_sq += other.sum_sq;
  }
  double mean() const { return count > 0 ? sum / count : 0.0; }
  double variance() const {
    if (count < 2) return 0.0;
    double m = mean();
    double v = (sum_sq - static_cast<double>(count) * m * m) / (count - 1);
    return v > 0.0 ? v : 0.0;
  }
  /// Standard error of the mean.
  double std_error() const {
    return count > 1 ? std::sqrt(variance() / count) : 0.0;
  }
};

struct MomentEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

}  // namespace pmproc
