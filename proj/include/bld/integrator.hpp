// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/ensemble.hpp"
#include "bld/oracle.hpp"

#include <cstddef>

namespace bld {

/// Inner Euler-Maruyama steps covering one block duration: `count` steps of
/// size `step`, except the last which is `last_step` (<= step).
struct InnerSteps {
  std::size_t count = 0;
  double step = 0.0;
  double last_step = 0.0;

  static InnerSteps cover(double duration, double em_step);
  static InnerSteps single(double duration) { return {1, duration, duration}; }

  double size(std::size_t i) const { return i + 1 == count ? last_step : step; }
  /// Simulated time after the first n steps.
  double elapsed(std::size_t n) const;
};

/// Applies inner steps [first, last) of a block step to every particle:
///   x_B <- x_B - h g_B(x) + sqrt(2h/beta) xi,  xi ~ N(0, I_{|B|}).
/// Coordinates outside the block are never written. beta may be +inf
/// (noise off). Returns true if any particle diverged; a diverged particle
/// stops at the step where it crossed the threshold.
bool advance_block(Ensemble& ensemble, const Block& block, const InnerSteps& steps,
                   std::size_t first, std::size_t last, const GradientOracle& drift, double beta,
                   double divergence_threshold);

/// One full block step of duration lambda. Advances time by lambda, or sets
/// ensemble.diverged and leaves time and block_steps untouched.
void block_em_evolve(Ensemble& ensemble, const Block& block, double duration,
                     const GradientOracle& drift, double beta, const IntegratorConfig& cfg);

}  // namespace bld
