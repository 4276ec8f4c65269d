// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/gaussian.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bld::harness {

/// One sweep over (b, λ, Δ, seed, algorithm). See README for the key list.
struct ExperimentConfig {
  Index dim = 0;
  double beta = 1.0;
  std::size_t ensemble_size = 0;
  std::vector<std::size_t> block_counts;
  std::vector<std::string> algorithms{"rbld", "cbld"};
  std::vector<double> lambdas;
  double em_step_seconds = 1.6e-11;
  std::optional<double> em_step;  // simulation units; overrides em_step_seconds
  std::size_t probe_cadence = 30;
  bool probe_every_cycle = false;
  std::vector<double> deltas{0.0};
  std::vector<std::uint64_t> seeds;
  std::uint64_t cycles = 0;
  double device_time_scale = 1.55e-8;
  std::filesystem::path output{"bld-out"};
  EntryRange entry_range{-5.0, 5.0};
  double pd_margin = 1.2;
  double init_std = 0.5;
  double init_mean = 0.0;
  double divergence_threshold = 1e6;
  bool symmetrize_perturbation = true;
  std::optional<std::filesystem::path> target_file;

  /// Inner EM step in simulation units.
  double integrator_step() const;

  /// Canonical JSON text; the config hash is taken over this.
  std::string canonical() const;
  std::string hash() const;
};

/// Parses and validates a JSON config document. Unknown keys, missing
/// required keys and invariant violations throw std::invalid_argument naming
/// the field(s).
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace bld::harness
