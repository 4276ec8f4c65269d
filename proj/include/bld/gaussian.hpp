// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/types.hpp"

#include <cstdint>

namespace bld {

/// Mean and covariance of a Gaussian law.
struct GaussianLaw {
  Vector mean;
  Matrix covariance;

  Index dim() const { return mean.size(); }
};

/// Gibbs target pi_beta ∝ exp(-beta * f) with f(x) = ½ (x-u)ᵀ A (x-u).
///
/// The precision A is symmetric positive definite. The target's covariance is
/// (beta A)⁻¹.
class GaussianTarget {
 public:
  /// Validates symmetry (1e-12 relative), positive definiteness and beta > 0.
  GaussianTarget(Matrix precision, Vector mean, double beta);

  Index dim() const { return mean_.size(); }
  const Matrix& precision() const { return precision_; }
  const Vector& mean() const { return mean_; }
  double beta() const { return beta_; }

  /// (beta A)⁻¹, exactly symmetric.
  const Matrix& covariance() const { return covariance_; }
  GaussianLaw law() const { return {mean_, covariance_}; }

  double potential(const Vector& x) const;
  Vector gradient(const Vector& x) const;

 private:
  Matrix precision_;
  Vector mean_;
  double beta_;
  Matrix covariance_;
};

/// Empirical mean and unbiased covariance of an ensemble.
struct GaussianEstimate {
  Vector mean;
  Matrix covariance;
  std::size_t sample_count = 0;

  GaussianLaw law() const { return {mean, covariance}; }
};

struct EntryRange {
  double lo = -5.0;
  double hi = 5.0;
};

/// Random SPD precision: i.i.d. uniform entries, symmetrized, then shifted by
/// pd_margin·|λ_min|·I when λ_min <= 0. Zero mean. Deterministic in seed.
GaussianTarget generate_target(Index dim, EntryRange range, double pd_margin, std::uint64_t seed,
                               double beta = 1.0);

/// KL(a ‖ b) in closed form. Throws std::domain_error("degenerate estimate")
/// when a's covariance is singular.
double gaussian_kl(const GaussianLaw& a, const GaussianLaw& b);
double gaussian_kl(const GaussianLaw& estimate, const GaussianTarget& target);

/// 2-Wasserstein distance between two Gaussians (Bures formula).
double gaussian_w2(const GaussianLaw& a, const GaussianLaw& b);

/// Symmetric square root of a PSD matrix; eigenvalues in
/// [-1e-10·trace/d, 0) are clamped to zero, anything lower throws.
Matrix psd_sqrt(const Matrix& m);

/// Eigenvalues of a symmetric matrix in ascending order.
Vector spectrum(const Matrix& m);

/// log det of an SPD matrix via Cholesky. Throws std::domain_error if not PD.
double log_det_spd(const Matrix& m);

}  // namespace bld
