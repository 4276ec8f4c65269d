// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/ensemble.hpp"
#include "bld/gaussian.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bld {

/// Seconds of device time per unit of simulated time (RC constant).
inline constexpr double kDefaultDeviceScale = 1.55e-8;

/// Identifies one run inside a sweep.
struct RunInfo {
  std::string run_id;
  std::string algo;
  std::size_t b = 1;
  double lambda = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
};

/// One time-stamped measurement. kl/w2 are empty when the estimate was
/// degenerate or the run diverged.
struct TraceRecord {
  RunInfo run;
  std::uint64_t block_step = 0;
  double cycle = 0.0;
  double time = 0.0;
  double device_time = 0.0;
  std::optional<double> kl;
  std::optional<double> w2;
  std::optional<double> kl_bound;
  bool diverged = false;
};

using Trace = std::vector<TraceRecord>;

/// Empirical mean and unbiased (N-1) covariance. Reductions use a fixed
/// pairwise tree, so the result depends only on the particle states.
GaussianEstimate estimate_gaussian(const Matrix& states);
GaussianEstimate estimate_gaussian(const Ensemble& ensemble);

/// Measures KL and W2 of the moment-matched Gaussian against a target.
class GaussianProbe {
 public:
  GaussianProbe(GaussianTarget target, RunInfo run, double device_scale = kDefaultDeviceScale);

  TraceRecord operator()(const Ensemble& ensemble) const;

  const GaussianTarget& target() const { return target_; }

 private:
  GaussianTarget target_;
  RunInfo run_;
  double device_scale_;
};

}  // namespace bld
