// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/ensemble.hpp"
#include "bld/metrics.hpp"
#include "bld/oracle.hpp"
#include "bld/partition.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace bld {

using Probe = std::function<TraceRecord(const Ensemble&)>;

/// When the probe fires. The initial state and the final state are always
/// probed. For the discrete samplers every update counts as one inner step.
struct ProbeSchedule {
  std::size_t every_inner_steps = 30;  // 0 disables
  std::size_t every_block_steps = 0;   // 0 disables
};

struct LmcConfig {
  double divergence_threshold = 1e6;
  /// Optional per-block smoothness L_i; when given, step sizes are checked
  /// against the discrete-chain preconditions (lambda_i <= sqrt(phi_min)/(4 L_i)
  /// randomized, lambda_i <= gamma/(4 L_i^2) cyclic) and violations are
  /// reported on std::clog.
  std::vector<double> block_smoothness;
  /// LSI constant for the cyclic check; 0 skips it.
  double gamma = 0.0;
};

/// Randomized block diffusion: each block step draws one block from the
/// schedule's pmf (shared by all particles) and evolves it for lambda_i.
Trace run_rbld(const GradientOracle& drift, const BlockPartition& partition,
               const Schedule& schedule, double beta, std::uint64_t block_steps,
               Ensemble& ensemble, const IntegratorConfig& cfg, const Probe& probe,
               ProbeSchedule when = {});

/// Cyclic block diffusion: `cycles` sweeps over the blocks in schedule order.
Trace run_cbld(const GradientOracle& drift, const BlockPartition& partition,
               const Schedule& schedule, double beta, std::uint64_t cycles, Ensemble& ensemble,
               const IntegratorConfig& cfg, const Probe& probe, ProbeSchedule when = {});

/// Randomized block Langevin Monte Carlo: one Euler step of size lambda_i
/// per block visit, noise sqrt(2 lambda_i / beta).
Trace run_rblmc(const GradientOracle& drift, const BlockPartition& partition,
                const Schedule& schedule, double beta, std::uint64_t steps, Ensemble& ensemble,
                const LmcConfig& cfg, const Probe& probe, ProbeSchedule when = {});

Trace run_cblmc(const GradientOracle& drift, const BlockPartition& partition,
                const Schedule& schedule, double beta, std::uint64_t cycles, Ensemble& ensemble,
                const LmcConfig& cfg, const Probe& probe, ProbeSchedule when = {});

/// Block indices visited by a randomized schedule for a given seed, in the
/// same order run_rbld / run_rblmc would draw them from a fresh ensemble.
std::vector<std::size_t> randomized_block_sequence(const Schedule& schedule, std::uint64_t seed,
                                                   std::uint64_t steps);

}  // namespace bld
