// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/harness/config.hpp"
#include "bld/metrics.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bld::harness {

struct RunArtifact {
  RunInfo run;
  std::filesystem::path csv;
  std::string target_checksum;
  bool diverged = false;
  std::size_t records = 0;
};

struct ExperimentResult {
  std::vector<RunArtifact> runs;
  std::filesystem::path manifest;
};

/// "{algo}_b{b}_lam{lambda}_delta{delta}_seed{seed}".
std::string run_id(const std::string& algo, std::size_t b, double lambda, double delta,
                   std::uint64_t seed);

/// Runs every (seed, b, lambda, delta, algorithm) combination and writes one
/// CSV per run, one target file per seed and manifest.json into
/// cfg.output. All runs of a seed share the target, the initial ensemble and
/// the perturbation pattern. Divergence is recorded and the sweep moves on;
/// I/O failures throw.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

}  // namespace bld::harness
