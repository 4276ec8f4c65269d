// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/gaussian.hpp"
#include "bld/partition.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace bld {

/// Exact law of the linear block SDE dx = -U_i D (x - c) dt + U_i sqrt(2/beta) dW
/// over one block step of duration lambda_i.
///
/// Each block step is the affine Gaussian map m <- c + Phi (m - c),
/// C <- Phi C Phiᵀ + Q with Phi = exp(-lambda U_i D) and Q from the Van Loan
/// block exponential.
class ExactBlockPropagator {
 public:
  ExactBlockPropagator(const Matrix& drift, const Vector& center, double beta,
                       const BlockPartition& partition, std::span<const double> durations);

  /// Ideal dynamics of a target: D = precision, c = mean.
  ExactBlockPropagator(const GaussianTarget& target, const BlockPartition& partition,
                       std::span<const double> durations);

  GaussianLaw step(const GaussianLaw& law, std::size_t block) const;

  std::size_t num_blocks() const { return transitions_.size(); }
  const Matrix& transition(std::size_t block) const { return transitions_.at(block); }
  const Matrix& noise(std::size_t block) const { return noises_.at(block); }

 private:
  Vector center_;
  std::vector<Matrix> transitions_;
  std::vector<Matrix> noises_;
};

/// Law after `num_block_steps` block steps of a cyclic schedule started at
/// block step zero.
GaussianLaw exact_gaussian_moments(const GaussianTarget& target, const BlockPartition& partition,
                                   const Schedule& schedule, const GaussianLaw& initial,
                                   std::uint64_t num_block_steps);

/// Law after visiting the given block sequence.
GaussianLaw exact_gaussian_moments(const GaussianTarget& target, const BlockPartition& partition,
                                   std::span<const double> durations, const GaussianLaw& initial,
                                   std::span<const std::size_t> sequence);

/// Law of full (unblocked) Langevin diffusion at time t.
GaussianLaw exact_langevin_moments(const GaussianTarget& target, const GaussianLaw& initial,
                                   double t);

}  // namespace bld
