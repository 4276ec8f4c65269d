// SPDX-License-Identifier: Apache-2.0
#include "bld/metrics.hpp"

#include <stdexcept>

namespace bld {
namespace {

constexpr Index kLeaf = 32;

// Sum of columns [begin, end) of `diffs`, summed pairwise.
Vector pairwise_sum(const Matrix& diffs, Index begin, Index end) {
  if (end - begin <= kLeaf) {
    Vector acc = Vector::Zero(diffs.rows());
    for (Index p = begin; p < end; ++p) acc += diffs.col(p);
    return acc;
  }
  const Index mid = begin + (end - begin) / 2;
  return pairwise_sum(diffs, begin, mid) + pairwise_sum(diffs, mid, end);
}

Matrix pairwise_scatter(const Matrix& centered, Index begin, Index end) {
  if (end - begin <= kLeaf) {
    const auto cols = centered.middleCols(begin, end - begin);
    Matrix acc = Matrix::Zero(centered.rows(), centered.rows());
    acc.selfadjointView<Eigen::Lower>().rankUpdate(cols);
    return acc;
  }
  const Index mid = begin + (end - begin) / 2;
  return pairwise_scatter(centered, begin, mid) + pairwise_scatter(centered, mid, end);
}

}  // namespace

GaussianEstimate estimate_gaussian(const Matrix& states) {
  const Index n = states.cols();
  if (n < 2) throw std::invalid_argument("estimate_gaussian: need at least two particles");
  // Shifting by the first particle keeps identical clouds exactly degenerate.
  const Vector anchor = states.col(0);
  Matrix diffs = states.colwise() - anchor;
  const Vector shift_mean = pairwise_sum(diffs, 0, n) / static_cast<double>(n);
  diffs.colwise() -= shift_mean;
  Matrix scatter = pairwise_scatter(diffs, 0, n);
  scatter.triangularView<Eigen::StrictlyUpper>() = scatter.transpose();
  return {anchor + shift_mean, scatter / static_cast<double>(n - 1),
          static_cast<std::size_t>(n)};
}

GaussianEstimate estimate_gaussian(const Ensemble& ensemble) {
  return estimate_gaussian(ensemble.states);
}

GaussianProbe::GaussianProbe(GaussianTarget target, RunInfo run, double device_scale)
    : target_(std::move(target)), run_(std::move(run)), device_scale_(device_scale) {
  if (!(device_scale_ > 0.0)) throw std::invalid_argument("GaussianProbe: device scale must be > 0");
}

TraceRecord GaussianProbe::operator()(const Ensemble& ensemble) const {
  TraceRecord rec;
  rec.run = run_;
  rec.block_step = ensemble.block_steps;
  rec.cycle = static_cast<double>(ensemble.block_steps) / static_cast<double>(run_.b);
  rec.time = ensemble.time;
  rec.device_time = ensemble.time * device_scale_;
  rec.diverged = ensemble.diverged;
  if (ensemble.diverged) return rec;
  const GaussianEstimate est = estimate_gaussian(ensemble);
  if (!est.mean.allFinite() || !est.covariance.allFinite()) return rec;
  try {
    rec.kl = gaussian_kl(est.law(), target_);
  } catch (const std::domain_error&) {
    rec.kl.reset();
  }
  try {
    rec.w2 = gaussian_w2(est.law(), target_.law());
  } catch (const std::domain_error&) {
    rec.w2.reset();
  }
  return rec;
}

}  // namespace bld
