// SPDX-License-Identifier: Apache-2.0
#include "bld/exact_moments.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace bld {

ExactBlockPropagator::ExactBlockPropagator(const Matrix& drift, const Vector& center, double beta,
                                           const BlockPartition& partition,
                                           std::span<const double> durations)
    : center_(center) {
  const Index d = partition.dim();
  if (drift.rows() != d || drift.cols() != d || center.size() != d) {
    throw std::invalid_argument("ExactBlockPropagator: dimension mismatch");
  }
  if (durations.size() != partition.size()) {
    throw std::invalid_argument("ExactBlockPropagator: one duration per block required");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("ExactBlockPropagator: beta must be positive");
  const double diffusion = std::isfinite(beta) ? 2.0 / beta : 0.0;

  for (std::size_t i = 0; i < partition.size(); ++i) {
    const double lambda = durations[i];
    if (!(lambda > 0.0)) throw std::invalid_argument("ExactBlockPropagator: durations must be > 0");
    const Matrix mask = partition.mask(i);
    const Matrix a = -mask * drift;  // dx = a x dt + ...

    // Van Loan on a short sub-interval, then doubling. The top-right block
    // Φ⁻¹Q grows like e^{‖a‖λ}, so the exponential is only taken where
    // ‖a‖h <= 1/2.
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int doublings = 0;
    double h = lambda;
    while (norm * h > 0.5 && doublings < 60) {
      h *= 0.5;
      ++doublings;
    }
    Matrix vl = Matrix::Zero(2 * d, 2 * d);
    vl.topLeftCorner(d, d) = -a * h;
    vl.topRightCorner(d, d) = diffusion * mask * h;
    vl.bottomRightCorner(d, d) = a.transpose() * h;
    const Matrix e = vl.exp();
    Matrix phi = e.bottomRightCorner(d, d).transpose();
    Matrix q = phi * e.topRightCorner(d, d);
    q = 0.5 * (q + q.transpose()).eval();
    for (int n = 0; n < doublings; ++n) {
      q = (phi * q * phi.transpose() + q).eval();
      q = 0.5 * (q + q.transpose()).eval();
      phi = (phi * phi).eval();
    }
    transitions_.push_back(std::move(phi));
    noises_.push_back(std::move(q));
  }
}

ExactBlockPropagator::ExactBlockPropagator(const GaussianTarget& target,
                                           const BlockPartition& partition,
                                           std::span<const double> durations)
    : ExactBlockPropagator(target.precision(), target.mean(), target.beta(), partition,
                           durations) {}

GaussianLaw ExactBlockPropagator::step(const GaussianLaw& law, std::size_t block) const {
  const Matrix& phi = transitions_.at(block);
  GaussianLaw out;
  out.mean = center_ + phi * (law.mean - center_);
  out.covariance = phi * law.covariance * phi.transpose() + noises_[block];
  out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
  return out;
}

GaussianLaw exact_gaussian_moments(const GaussianTarget& target, const BlockPartition& partition,
                                   const Schedule& schedule, const GaussianLaw& initial,
                                   std::uint64_t num_block_steps) {
  if (schedule.kind() != Schedule::Kind::cyclic) {
    throw std::invalid_argument("exact_gaussian_moments: pass an explicit block sequence for "
                                "randomized schedules");
  }
  const ExactBlockPropagator prop(target, partition, schedule.durations());
  GaussianLaw law = initial;
  for (std::uint64_t k = 0; k < num_block_steps; ++k) {
    law = prop.step(law, schedule.order()[k % schedule.num_blocks()]);
  }
  return law;
}

GaussianLaw exact_gaussian_moments(const GaussianTarget& target, const BlockPartition& partition,
                                   std::span<const double> durations, const GaussianLaw& initial,
                                   std::span<const std::size_t> sequence) {
  const ExactBlockPropagator prop(target, partition, durations);
  GaussianLaw law = initial;
  for (std::size_t block : sequence) law = prop.step(law, block);
  return law;
}

GaussianLaw exact_langevin_moments(const GaussianTarget& target, const GaussianLaw& initial,
                                   double t) {
  if (t < 0.0) throw std::invalid_argument("exact_langevin_moments: t must be >= 0");
  if (t == 0.0) return initial;
  const BlockPartition whole = make_partition(target.dim(), 1);
  const double durations[] = {t};
  const ExactBlockPropagator prop(target, whole, durations);
  return prop.step(initial, 0);
}

}  // namespace bld
