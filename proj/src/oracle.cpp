// SPDX-License-Identifier: Apache-2.0
#include "bld/oracle.hpp"

#include <numeric>
#include <stdexcept>

namespace bld {

Vector GradientOracle::gradient(const Vector& x) const {
  Block all(static_cast<std::size_t>(dim()));
  std::iota(all.begin(), all.end(), Index{0});
  Vector out(dim());
  block_gradient({x.data(), static_cast<std::size_t>(x.size())}, all,
                 {out.data(), static_cast<std::size_t>(out.size())});
  return out;
}

QuadraticOracle::QuadraticOracle(Matrix drift, Vector center)
    : rows_(std::move(drift)), center_(std::move(center)) {
  if (rows_.rows() != rows_.cols() || rows_.rows() != center_.size()) {
    throw std::invalid_argument("QuadraticOracle: dimension mismatch");
  }
  offset_ = rows_ * center_;
}

void QuadraticOracle::block_gradient(std::span<const double> x, const Block& block,
                                     std::span<double> out) const {
  const Eigen::Map<const Vector> state(x.data(), static_cast<Index>(x.size()));
  for (std::size_t n = 0; n < block.size(); ++n) {
    const Index r = block[n];
    out[n] = rows_.row(r).dot(state) - offset_(r);
  }
}

FunctionOracle::FunctionOracle(Index dim, std::function<Vector(const Vector&)> gradient)
    : dim_(dim), fn_(std::move(gradient)) {
  if (dim_ < 1 || !fn_) throw std::invalid_argument("FunctionOracle: invalid arguments");
}

void FunctionOracle::block_gradient(std::span<const double> x, const Block& block,
                                    std::span<double> out) const {
  const Vector full = fn_(Eigen::Map<const Vector>(x.data(), static_cast<Index>(x.size())));
  for (std::size_t n = 0; n < block.size(); ++n) out[n] = full(block[n]);
}

}  // namespace bld
