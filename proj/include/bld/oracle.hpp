// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/types.hpp"

#include <functional>
#include <span>

namespace bld {

/// Gradient oracle x -> g(x) evaluated one block at a time.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  virtual Index dim() const = 0;

  /// out[n] = g(x)[block[n]] for every n.
  virtual void block_gradient(std::span<const double> x, const Block& block,
                              std::span<double> out) const = 0;

  Vector gradient(const Vector& x) const;
};

/// g(x) = D (x - c). D need not be symmetric.
class QuadraticOracle final : public GradientOracle {
 public:
  QuadraticOracle(Matrix drift, Vector center);

  Index dim() const override { return rows_.rows(); }
  void block_gradient(std::span<const double> x, const Block& block,
                      std::span<double> out) const override;

  Matrix drift_matrix() const { return rows_; }
  const Vector& center() const { return center_; }

 private:
  RowMajorMatrix rows_;
  Vector center_;
  Vector offset_;  // D c
};

/// Wraps an arbitrary full-gradient function.
class FunctionOracle final : public GradientOracle {
 public:
  FunctionOracle(Index dim, std::function<Vector(const Vector&)> gradient);

  Index dim() const override { return dim_; }
  void block_gradient(std::span<const double> x, const Block& block,
                      std::span<double> out) const override;

 private:
  Index dim_;
  std::function<Vector(const Vector&)> fn_;
};

}  // namespace bld
