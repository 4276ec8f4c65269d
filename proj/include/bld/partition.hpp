// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace bld {

/// Disjoint, nonempty coordinate blocks covering {0..dim-1}.
class BlockPartition {
 public:
  BlockPartition(std::vector<Block> blocks, Index dim);

  Index dim() const { return dim_; }
  std::size_t size() const { return blocks_.size(); }
  const Block& block(std::size_t i) const { return blocks_.at(i); }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t max_block_dim() const;

  /// Diagonal 0/1 mask U_i.
  Matrix mask(std::size_t i) const;

 private:
  std::vector<Block> blocks_;
  Index dim_;
};

/// Contiguous split: the first (dim mod b) blocks get one extra coordinate.
BlockPartition make_partition(Index dim, std::size_t num_blocks);

/// Block selection rule plus per-block durations.
class Schedule {
 public:
  enum class Kind { randomized, cyclic };

  static Schedule randomized(std::vector<double> pmf, std::vector<double> durations);
  static Schedule cyclic(std::vector<std::size_t> order, std::vector<double> durations);
  static Schedule uniform_randomized(std::size_t num_blocks, double duration);
  static Schedule identity_cyclic(std::size_t num_blocks, double duration);

  Kind kind() const { return kind_; }
  std::size_t num_blocks() const { return durations_.size(); }
  std::span<const double> pmf() const { return pmf_; }
  std::span<const std::size_t> order() const { return order_; }
  std::span<const double> durations() const { return durations_; }
  double duration(std::size_t block) const { return durations_.at(block); }
  double lambda_min() const;
  double phi_min() const;

  /// Block chosen for a uniform draw u in [0, 1) (inverse CDF).
  std::size_t draw(double u) const;

 private:
  Schedule(Kind kind, std::vector<double> pmf, std::vector<std::size_t> order,
           std::vector<double> durations);

  Kind kind_;
  std::vector<double> pmf_;
  std::vector<std::size_t> order_;
  std::vector<double> durations_;
};

}  // namespace bld
