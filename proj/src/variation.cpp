// SPDX-License-Identifier: Apache-2.0
#include "bld/variation.hpp"

#include "bld/philox.hpp"

#include <cmath>
#include <stdexcept>

namespace bld {
namespace {

Matrix symmetric_part(const Matrix& m) { return 0.5 * (m + m.transpose()); }

}  // namespace

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

PerturbedGradient perturb_precision(const GaussianTarget& target, double strength,
                                    std::uint64_t seed, bool symmetrize) {
  if (!(strength >= 0.0) || !std::isfinite(strength)) {
    throw std::invalid_argument("perturb_precision: strength must be >= 0");
  }
  const Index d = target.dim();
  CounterStream stream(seed, kPerturbationStream);
  Matrix delta(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) delta(i, j) = strength * stream.normal();
  }
  if (symmetrize) {
    for (Index i = 0; i < d; ++i) {
      for (Index j = i + 1; j < d; ++j) {
        const double v = 0.5 * (delta(i, j) + delta(j, i));
        delta(i, j) = v;
        delta(j, i) = v;
      }
    }
  }
  Matrix perturbed = target.precision().cwiseProduct((1.0 + delta.array()).matrix());
  const bool pd = spectrum(symmetric_part(perturbed))(0) > 0.0;
  return PerturbedGradient{QuadraticOracle(perturbed, target.mean()),
                           PerturbationModel{std::move(delta), strength, seed, symmetrize},
                           perturbed, pd};
}

double log_exp_second_moment(const GaussianLaw& initial) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric_part(initial.covariance));
  const Vector rotated = eig.eigenvectors().transpose() * initial.mean;
  double total = 0.0;
  for (Index i = 0; i < rotated.size(); ++i) {
    const double s = std::max(eig.eigenvalues()(i), 0.0);
    const double slack = 1.0 - 2.0 * s;
    if (!(slack > 0.0)) throw std::domain_error("initial law has no finite exp-second moment");
    total += -0.5 * std::log(slack) + rotated(i) * rotated(i) / slack;
  }
  return total;
}

std::vector<double> block_smoothness(const Matrix& precision, const BlockPartition& partition) {
  std::vector<double> out;
  out.reserve(partition.size());
  for (const Block& block : partition.blocks()) {
    const auto n = static_cast<Index>(block.size());
    Matrix sub(n, n);
    for (Index r = 0; r < n; ++r) {
      for (Index s = 0; s < n; ++s) sub(r, s) = precision(block[r], block[s]);
    }
    out.push_back(spectrum(symmetric_part(sub)).maxCoeff());
  }
  return out;
}

AssumptionConstants quadratic_constants(const GaussianTarget& target,
                                        const std::optional<Matrix>& perturbed,
                                        const GaussianLaw& initial,
                                        const BlockPartition& partition) {
  const Index d = target.dim();
  if (partition.dim() != d || initial.dim() != d) {
    throw std::invalid_argument("quadratic_constants: dimension mismatch");
  }
  const Matrix& a = target.precision();
  const Matrix& tilde = perturbed ? *perturbed : a;
  if (tilde.rows() != d || tilde.cols() != d) {
    throw std::invalid_argument("quadratic_constants: perturbed matrix has wrong shape");
  }
  const Vector& u = target.mean();
  const bool centered = u.isZero(0.0);

  AssumptionConstants k;
  k.beta = target.beta();
  k.dim = d;
  k.d_max = partition.max_block_dim();

  const Vector eig_a = spectrum(a);
  const double lambda_min = eig_a(0);
  k.L = eig_a(d - 1);
  k.gamma = target.beta() * lambda_min;
  // <A(x-u), x> >= (λ_min/2)‖x‖² - ‖Au‖²/(2λ_min) by Young's inequality.
  k.m = centered ? lambda_min : 0.5 * lambda_min;
  k.c = centered ? 0.0 : (a * u).squaredNorm() / (2.0 * lambda_min);

  const Matrix gap = tilde - a;
  k.M = spectral_norm(gap);
  k.B = (gap * u).norm();
  k.G = spectral_norm(tilde);

  const double sym_min = spectrum(symmetric_part(tilde))(0);
  if (sym_min > 0.0) {
    k.frak_m = centered ? sym_min : 0.5 * sym_min;
    k.frak_c = centered ? 0.0 : (tilde * u).squaredNorm() / (2.0 * sym_min);
  }

  k.kappa0 = log_exp_second_moment(initial);
  return k;
}

}  // namespace bld
