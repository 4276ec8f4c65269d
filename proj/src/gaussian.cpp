// SPDX-License-Identifier: Apache-2.0
#include "bld/gaussian.hpp"

#include "bld/philox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bld {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument(std::string(what) + ": matrix must be square");
  }
}

Matrix symmetrized(const Matrix& m) {
  Matrix out = m;
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = i + 1; j < m.cols(); ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

double psd_tolerance(const Matrix& m) {
  const double scale = m.rows() > 0 ? m.trace() / static_cast<double>(m.rows()) : 0.0;
  return 1e-10 * std::abs(scale);
}

}  // namespace

GaussianTarget::GaussianTarget(Matrix precision, Vector mean, double beta)
    : precision_(std::move(precision)), mean_(std::move(mean)), beta_(beta) {
  require_square(precision_, "GaussianTarget");
  if (precision_.rows() != mean_.size() || mean_.size() == 0) {
    throw std::invalid_argument("GaussianTarget: precision and mean dimensions differ");
  }
  if (!(beta_ > 0.0) || !std::isfinite(beta_)) {
    throw std::invalid_argument("GaussianTarget: beta must be positive and finite");
  }
  const double asym = (precision_ - precision_.transpose()).norm();
  if (asym > 1e-12 * precision_.norm()) {
    throw std::invalid_argument("GaussianTarget: precision is not symmetric");
  }
  if (spectrum(precision_)(0) <= 0.0) {
    throw std::invalid_argument("GaussianTarget: precision is not positive definite");
  }
  Eigen::LLT<Matrix> llt(beta_ * precision_);
  covariance_ = symmetrized(llt.solve(Matrix::Identity(dim(), dim())));
}

double GaussianTarget::potential(const Vector& x) const {
  const Vector r = x - mean_;
  return 0.5 * r.dot(precision_ * r);
}

Vector GaussianTarget::gradient(const Vector& x) const { return precision_ * (x - mean_); }

GaussianTarget generate_target(Index dim, EntryRange range, double pd_margin, std::uint64_t seed,
                               double beta) {
  if (dim < 1) throw std::invalid_argument("generate_target: dim must be >= 1");
  if (!(range.hi > range.lo)) throw std::invalid_argument("generate_target: empty entry range");
  if (!(pd_margin > 1.0)) throw std::invalid_argument("generate_target: pd_margin must exceed 1");

  CounterStream stream(seed, kTargetStream);
  Matrix a(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      a(i, j) = range.lo + (range.hi - range.lo) * stream.uniform();
    }
  }
  a = symmetrized(a);
  const double lambda_min = spectrum(a)(0);
  if (lambda_min <= 0.0) {
    a.diagonal().array() += pd_margin * std::abs(lambda_min);
  }
  // λ_min == 0 exactly leaves the shift above at zero.
  if (spectrum(a)(0) <= 0.0) {
    a.diagonal().array() += pd_margin * std::max(std::abs(lambda_min), 1e-12);
  }
  return GaussianTarget(std::move(a), Vector::Zero(dim), beta);
}

double log_det_spd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw std::domain_error("matrix is not positive definite");
  const auto diag = llt.matrixLLT().diagonal();
  if ((diag.array() <= 0.0).any()) throw std::domain_error("matrix is not positive definite");
  return 2.0 * diag.array().log().sum();
}

double gaussian_kl(const GaussianLaw& a, const GaussianLaw& b) {
  const Index d = b.dim();
  if (a.dim() != d || a.covariance.rows() != d || b.covariance.rows() != d) {
    throw std::invalid_argument("gaussian_kl: dimension mismatch");
  }
  Eigen::LLT<Matrix> llt_b(b.covariance);
  if (llt_b.info() != Eigen::Success) {
    throw std::invalid_argument("gaussian_kl: reference covariance is not positive definite");
  }
  Eigen::LLT<Matrix> llt_a(a.covariance);
  if (llt_a.info() != Eigen::Success ||
      (llt_a.matrixLLT().diagonal().array() <= 0.0).any()) {
    throw std::domain_error("degenerate estimate");
  }
  const Matrix la = llt_a.matrixL();
  const Matrix lb = llt_b.matrixL();
  const double log_det_a = 2.0 * la.diagonal().array().log().sum();
  const double log_det_b = 2.0 * lb.diagonal().array().log().sum();
  if (!std::isfinite(log_det_a)) throw std::domain_error("degenerate estimate");

  const Matrix whitened = llt_b.matrixL().solve(la);
  const Vector shift = llt_b.matrixL().solve(a.mean - b.mean);
  const double kl = 0.5 * (log_det_b - log_det_a - static_cast<double>(d) +
                           whitened.squaredNorm() + shift.squaredNorm());
  return std::max(kl, 0.0);
}

double gaussian_kl(const GaussianLaw& estimate, const GaussianTarget& target) {
  return gaussian_kl(estimate, target.law());
}

double gaussian_w2(const GaussianLaw& a, const GaussianLaw& b) {
  const Index d = a.dim();
  if (b.dim() != d || a.covariance.rows() != d || b.covariance.rows() != d) {
    throw std::invalid_argument("gaussian_w2: dimension mismatch");
  }
  const Matrix root_b = psd_sqrt(b.covariance);
  const Matrix cross = psd_sqrt(symmetrized(root_b * a.covariance * root_b));
  const double w2sq = (a.mean - b.mean).squaredNorm() + a.covariance.trace() +
                      b.covariance.trace() - 2.0 * cross.trace();
  return std::sqrt(std::max(w2sq, 0.0));
}

Matrix psd_sqrt(const Matrix& m) {
  require_square(m, "psd_sqrt");
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetrized(m));
  const double tol = psd_tolerance(m);
  Vector values = eig.eigenvalues();
  if (values(0) < -tol) throw std::domain_error("not PSD");
  values = values.cwiseMax(0.0).cwiseSqrt();
  return symmetrized(eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().transpose());
}

Vector spectrum(const Matrix& m) {
  require_square(m, "spectrum");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues();
}

}  // namespace bld
