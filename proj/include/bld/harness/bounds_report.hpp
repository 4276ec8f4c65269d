// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/variation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bld::harness {

/// Evaluation grid for the bound report.
struct BoundsGrid {
  std::vector<double> k{1.0, 10.0, 100.0};
  std::vector<double> lambda{0.1};
  std::vector<double> eps{0.1, 0.01};
};

/// Parses "k=1,10;lambda=0.1;eps=0.1,0.01" style assignments. Several
/// assignment strings may be given; later ones override earlier ones.
BoundsGrid parse_grid(const std::vector<std::string>& assignments);

/// Inputs of the report: constants plus the initial KL and block count.
struct BoundsInputs {
  AssumptionConstants constants;
  double kl0 = 0.0;
  std::size_t blocks = 1;
};

/// Constants file (JSON). Required symbols: gamma, L, m, c, M, B, kappa0,
/// d_max, beta, dim, kl0. Optional: G, frak_m, frak_c, b. A missing
/// required symbol throws std::invalid_argument listing all of them.
/// `kl0_override` stands in for a missing kl0.
BoundsInputs parse_constants(const std::string& text,
                             std::optional<double> kl0_override = std::nullopt);

/// JSON object text with every constant (frak_m is null when absent).
std::string constants_json(const AssumptionConstants& k);

/// Text report with one CSV table per section: constants, bias_constants,
/// kl_bounds, w2_bounds, epsilon_schedule, function_gap. Entries whose
/// preconditions fail are written as "n/a" with a trailing note.
std::string bounds_report(const BoundsInputs& inputs, const BoundsGrid& grid);

}  // namespace bld::harness
