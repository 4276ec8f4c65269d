// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/gaussian.hpp"
#include "bld/philox.hpp"
#include "bld/types.hpp"

#include <cstdint>
#include <vector>

namespace bld {

/// N particle states in R^d with one counter-based noise stream per particle.
///
/// States are stored column-wise (one column per particle). `time` equals
/// the sum of completed block durations at every block-step boundary.
struct Ensemble {
  Matrix states;
  double time = 0.0;
  std::uint64_t block_steps = 0;
  std::vector<CounterStream> streams;
  CounterStream schedule_stream;
  bool diverged = false;

  Index dim() const { return states.rows(); }
  std::size_t size() const { return static_cast<std::size_t>(states.cols()); }

  /// Particle p uses stream (seed, p); the block-selection stream is
  /// (seed, kScheduleStream).
  static Ensemble from_states(Matrix states, std::uint64_t seed);

  /// Draws N particles from `init`, each from its own stream.
  static Ensemble from_gaussian(const GaussianLaw& init, std::size_t n, std::uint64_t seed);
};

struct IntegratorConfig {
  double em_step = 1e-3;
  /// Divergence when any |coordinate| exceeds this or goes non-finite.
  double divergence_threshold = 1e6;

  void validate(double lambda_min) const;
};

}  // namespace bld
