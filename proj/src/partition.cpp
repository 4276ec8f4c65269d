// SPDX-License-Identifier: Apache-2.0
#include "bld/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bld {

BlockPartition::BlockPartition(std::vector<Block> blocks, Index dim)
    : blocks_(std::move(blocks)), dim_(dim) {
  if (dim_ < 1) throw std::invalid_argument("BlockPartition: dim must be >= 1");
  if (blocks_.empty()) throw std::invalid_argument("BlockPartition: no blocks");
  std::vector<int> seen(static_cast<std::size_t>(dim_), 0);
  for (auto& block : blocks_) {
    if (block.empty()) throw std::invalid_argument("BlockPartition: empty block");
    std::sort(block.begin(), block.end());
    for (Index idx : block) {
      if (idx < 0 || idx >= dim_) {
        throw std::invalid_argument("BlockPartition: index " + std::to_string(idx) +
                                    " out of range");
      }
      if (seen[static_cast<std::size_t>(idx)]++) {
        throw std::invalid_argument("BlockPartition: index " + std::to_string(idx) +
                                    " appears in more than one block");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw std::invalid_argument("BlockPartition: blocks do not cover every coordinate");
  }
}

std::size_t BlockPartition::max_block_dim() const {
  std::size_t out = 0;
  for (const auto& block : blocks_) out = std::max(out, block.size());
  return out;
}

Matrix BlockPartition::mask(std::size_t i) const {
  Matrix u = Matrix::Zero(dim_, dim_);
  for (Index idx : block(i)) u(idx, idx) = 1.0;
  return u;
}

BlockPartition make_partition(Index dim, std::size_t num_blocks) {
  if (dim < 1) throw std::invalid_argument("make_partition: dim must be >= 1");
  if (num_blocks < 1 || static_cast<Index>(num_blocks) > dim) {
    throw std::invalid_argument("make_partition: need 1 <= num_blocks <= dim");
  }
  const auto b = static_cast<Index>(num_blocks);
  const Index base = dim / b;
  const Index extra = dim % b;
  std::vector<Block> blocks;
  Index next = 0;
  for (Index i = 0; i < b; ++i) {
    const Index size = base + (i < extra ? 1 : 0);
    Block block(static_cast<std::size_t>(size));
    std::iota(block.begin(), block.end(), next);
    next += size;
    blocks.push_back(std::move(block));
  }
  return BlockPartition(std::move(blocks), dim);
}

Schedule::Schedule(Kind kind, std::vector<double> pmf, std::vector<std::size_t> order,
                   std::vector<double> durations)
    : kind_(kind), pmf_(std::move(pmf)), order_(std::move(order)), durations_(std::move(durations)) {
  if (durations_.empty()) throw std::invalid_argument("Schedule: no blocks");
  for (double lambda : durations_) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw std::invalid_argument("Schedule: block durations must be positive");
    }
  }
}

Schedule Schedule::randomized(std::vector<double> pmf, std::vector<double> durations) {
  if (pmf.size() != durations.size()) {
    throw std::invalid_argument("Schedule: pmf and durations sizes differ");
  }
  double total = 0.0;
  for (double p : pmf) {
    if (!(p > 0.0)) throw std::invalid_argument("Schedule: every block probability must be > 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("Schedule: block probabilities must sum to 1");
  }
  return Schedule(Kind::randomized, std::move(pmf), {}, std::move(durations));
}

Schedule Schedule::cyclic(std::vector<std::size_t> order, std::vector<double> durations) {
  if (order.size() != durations.size()) {
    throw std::invalid_argument("Schedule: permutation and durations sizes differ");
  }
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) throw std::invalid_argument("Schedule: order is not a permutation");
  }
  return Schedule(Kind::cyclic, {}, std::move(order), std::move(durations));
}

Schedule Schedule::uniform_randomized(std::size_t num_blocks, double duration) {
  return randomized(std::vector<double>(num_blocks, 1.0 / static_cast<double>(num_blocks)),
                    std::vector<double>(num_blocks, duration));
}

Schedule Schedule::identity_cyclic(std::size_t num_blocks, double duration) {
  std::vector<std::size_t> order(num_blocks);
  std::iota(order.begin(), order.end(), std::size_t{0});
  return cyclic(std::move(order), std::vector<double>(num_blocks, duration));
}

double Schedule::lambda_min() const {
  return *std::min_element(durations_.begin(), durations_.end());
}

double Schedule::phi_min() const {
  if (kind_ == Kind::cyclic) return 1.0 / static_cast<double>(num_blocks());
  return *std::min_element(pmf_.begin(), pmf_.end());
}

std::size_t Schedule::draw(double u) const {
  if (kind_ != Kind::randomized) throw std::logic_error("Schedule::draw on a cyclic schedule");
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < pmf_.size(); ++i) {
    cumulative += pmf_[i];
    if (u < cumulative) return i;
  }
  return pmf_.size() - 1;
}

}  // namespace bld
