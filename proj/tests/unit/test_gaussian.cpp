// SPDX-License-Identifier: Apache-2.0
#include "bld/gaussian.hpp"
#include "bld/philox.hpp"

#include "support/oracles.hpp"

#include "doctest.h"

#include <cmath>

using namespace bld;

namespace {

Matrix random_spd(Index d, std::uint64_t seed, double shift = 0.5) {
  CounterStream s(seed, 0);
  Matrix g(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) g(i, j) = s.normal();
  Matrix out = g * g.transpose() / double(d) + shift * Matrix::Identity(d, d);
  return 0.5 * (out + out.transpose());
}

GaussianLaw law1(double m, double v) { return {Vector::Constant(1, m), Matrix::Constant(1, 1, v)}; }

}  // namespace

TEST_CASE("GaussianTarget validates its invariants") {
  CHECK_THROWS_AS(GaussianTarget(Matrix::Identity(2, 2), Vector::Zero(3), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GaussianTarget(Matrix::Identity(2, 2), Vector::Zero(2), 0.0), std::invalid_argument);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 1e-6;
  CHECK_THROWS_AS(GaussianTarget(asym, Vector::Zero(2), 1.0), std::invalid_argument);
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_THROWS_AS(GaussianTarget(indefinite, Vector::Zero(2), 1.0), std::invalid_argument);
}

TEST_CASE("target covariance is the inverse of beta times precision") {
  Matrix a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  const GaussianTarget t(a, Vector::Zero(2), 4.0);
  const Matrix expected = (4.0 * a).inverse();
  CHECK((t.covariance() - expected).norm() < 1e-14);
  CHECK(t.covariance() == t.covariance().transpose());
}

TEST_CASE("potential and gradient") {
  Matrix a(2, 2);
  a << 2.0, 0.5, 0.5, 1.0;
  Vector u(2);
  u << 1.0, -1.0;
  const GaussianTarget t(a, u, 1.0);
  Vector x(2);
  x << 0.5, 2.0;
  const Vector r = x - u;
  CHECK(t.potential(x) == doctest::Approx(0.5 * r.dot(a * r)));
  CHECK((t.gradient(x) - a * r).norm() < 1e-14);
}

TEST_CASE("generate_target: 50x50 matrix is symmetric PD") {
  const auto t = generate_target(50, {-5.0, 5.0}, 1.2, 0);
  CHECK(t.dim() == 50);
  CHECK((t.precision() - t.precision().transpose()).norm() == 0.0);
  CHECK(spectrum(t.precision())(0) > 0.0);
  CHECK(t.mean().isZero(0.0));
}

TEST_CASE("generate_target: dim 1 is a positive scalar") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto t = generate_target(1, {-5.0, 5.0}, 1.2, seed);
    CHECK(t.precision()(0, 0) > 0.0);
  }
}

TEST_CASE("generate_target: deterministic in the seed") {
  const auto a = generate_target(3, {-5.0, 5.0}, 1.2, 17);
  const auto b = generate_target(3, {-5.0, 5.0}, 1.2, 17);
  const auto c = generate_target(3, {-5.0, 5.0}, 1.2, 18);
  CHECK(a.precision() == b.precision());
  CHECK(a.precision() != c.precision());
}

TEST_CASE("generate_target: reconstruction of the three-step procedure") {
  // Uniform entries from the target stream, symmetrize, shift by 1.2|λ_min| when λ_min <= 0.
  int shifted = 0, unshifted = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const bool positive = seed % 2 == 1;
    const EntryRange range = positive ? EntryRange{1.0, 1.5} : EntryRange{-5.0, 5.0};
    const Index d = positive ? 2 : 5;
    CounterStream s(seed, kTargetStream);
    Matrix raw(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) raw(i, j) = range.lo + (range.hi - range.lo) * s.uniform();
    Matrix sym = 0.5 * (raw + raw.transpose());
    const double lmin = Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues()(0);
    if (lmin <= 0.0) {
      sym += 1.2 * std::abs(lmin) * Matrix::Identity(d, d);
      ++shifted;
    } else {
      ++unshifted;
    }
    const auto t = generate_target(d, range, 1.2, seed);
    CHECK((t.precision() - sym).norm() <= 1e-12 * sym.norm());
    CHECK(spectrum(t.precision())(0) > 0.0);
  }
  CHECK(shifted > 0);
  CHECK(unshifted > 0);
  CHECK_THROWS_AS(generate_target(0, {-5, 5}, 1.2, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_target(2, {1, 1}, 1.2, 0), std::invalid_argument);
  CHECK_THROWS_AS(generate_target(2, {-5, 5}, 1.0, 0), std::invalid_argument);
}

TEST_CASE("generate_target: entries stay in range apart from the diagonal shift") {
  const auto t = generate_target(6, {-5.0, 5.0}, 1.2, 4);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (i != j) {
        CHECK(t.precision()(i, j) >= -5.0);
        CHECK(t.precision()(i, j) <= 5.0);
      }
}

TEST_CASE("gaussian_kl examples") {
  const GaussianTarget std2(Matrix::Identity(2, 2), Vector::Zero(2), 1.0);
  CHECK(gaussian_kl(std2.law(), std2) == 0.0);

  const GaussianTarget std1(Matrix::Identity(1, 1), Vector::Zero(1), 1.0);
  const double expected = 0.5 * (1.0 - std::log(2.0));
  CHECK(gaussian_kl(law1(0, 2), std1) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.153426).epsilon(1e-6));
  CHECK(oracle::kl_quadrature_1d(0, 2, 0, 1) == doctest::Approx(expected).epsilon(1e-6));

  GaussianLaw shifted{Vector::Zero(2), Matrix::Identity(2, 2)};
  shifted.mean(0) = 1.0;
  CHECK(gaussian_kl(shifted, std2) == doctest::Approx(0.5).epsilon(1e-14));
  const double mc = oracle::kl_monte_carlo(shifted.mean, shifted.covariance, Vector::Zero(2),
                                           Matrix::Identity(2, 2), 1000000, 1);
  CHECK(std::abs(mc - 0.5) < 1e-2);
}

TEST_CASE("gaussian_kl agrees with quadrature in d=1") {
  const double cases[][4] = {{0.3, 0.7, -0.2, 1.5}, {1.0, 0.1, 0.0, 2.0}, {-2.0, 3.0, 1.0, 0.5}};
  for (const auto& c : cases) {
    const double kl = gaussian_kl(law1(c[0], c[1]), law1(c[2], c[3]));
    CHECK(std::abs(kl - oracle::kl_quadrature_1d(c[0], c[1], c[2], c[3])) < 1e-2);
    CHECK(kl == doctest::Approx(oracle::kl_textbook(Vector::Constant(1, c[0]), Matrix::Constant(1, 1, c[1]),
                                                    Vector::Constant(1, c[2]), Matrix::Constant(1, 1, c[3])))
                    .epsilon(1e-12));
  }
}

TEST_CASE("gaussian_kl agrees with Monte Carlo in d=2") {
  const Matrix ca = random_spd(2, 1), cb = random_spd(2, 2);
  Vector ma(2), mb(2);
  ma << 0.2, -0.4;
  mb << -0.1, 0.3;
  const double kl = gaussian_kl(GaussianLaw{ma, ca}, GaussianLaw{mb, cb});
  CHECK(kl == doctest::Approx(oracle::kl_textbook(ma, ca, mb, cb)).epsilon(1e-12));
  CHECK(std::abs(kl - oracle::kl_monte_carlo(ma, ca, mb, cb, 1000000, 7)) < 1e-2);
}

TEST_CASE("gaussian_kl properties") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index d = 1 + Index(s % 5);
    const GaussianLaw a{Vector::Random(d), random_spd(d, 100 + s)};
    const GaussianLaw b{Vector::Random(d), random_spd(d, 200 + s)};
    CHECK(gaussian_kl(a, b) >= 0.0);
    CHECK(gaussian_kl(a, a) == 0.0);
    CHECK(gaussian_kl(a, b) == doctest::Approx(oracle::kl_textbook(a.mean, a.covariance, b.mean, b.covariance)).epsilon(1e-9));
  }
}

TEST_CASE("gaussian_kl target uses the beta-scaled covariance") {
  const GaussianTarget t(Matrix::Identity(1, 1), Vector::Zero(1), 2.0);
  CHECK(gaussian_kl(law1(0, 0.5), t) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(gaussian_kl(law1(0, 1.0), t) == doctest::Approx(0.5 * (std::log(0.5) - 1 + 2)).epsilon(1e-14));
}

TEST_CASE("gaussian_kl errors") {
  const GaussianTarget t(Matrix::Identity(2, 2), Vector::Zero(2), 1.0);
  const GaussianLaw singular{Vector::Zero(2), Matrix::Zero(2, 2)};
  CHECK_THROWS_WITH_AS(gaussian_kl(singular, t), "degenerate estimate", std::domain_error);
  GaussianLaw rank1{Vector::Zero(2), Matrix::Ones(2, 2)};
  CHECK_THROWS_WITH_AS(gaussian_kl(rank1, t), "degenerate estimate", std::domain_error);
  CHECK_THROWS_AS(gaussian_kl(law1(0, 1), t), std::invalid_argument);
}

TEST_CASE("gaussian_w2 examples") {
  const GaussianLaw a{Vector::Zero(2), random_spd(2, 3)};
  CHECK(gaussian_w2(a, a) < 1e-7);
  GaussianLaw b = a;
  b.mean << 3.0, 4.0;
  CHECK(gaussian_w2(a, b) == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(gaussian_w2(law1(0, 1), law1(0, 4)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("gaussian_w2 is a metric on random triples") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Index d = 1 + Index(s % 4);
    const GaussianLaw a{Vector::Random(d), random_spd(d, 300 + s, 0.01)};
    const GaussianLaw b{Vector::Random(d), random_spd(d, 400 + s, 0.01)};
    const GaussianLaw c{Vector::Random(d), random_spd(d, 500 + s, 0.01)};
    CHECK(std::abs(gaussian_w2(a, b) - gaussian_w2(b, a)) < 1e-8);
    CHECK(gaussian_w2(a, c) <= gaussian_w2(a, b) + gaussian_w2(b, c) + 1e-8);
    CHECK(gaussian_w2(a, b) >= 0.0);
  }
}

TEST_CASE("gaussian_w2 matches the commuting closed form") {
  Matrix ca = Vector::Constant(3, 1.0).asDiagonal(), cb(3, 3);
  ca.diagonal() << 1.0, 4.0, 0.25;
  cb.setZero();
  cb.diagonal() << 9.0, 1.0, 1.0;
  const double expected = std::sqrt(4.0 + 1.0 + 0.25);  // Σ (√a - √b)²
  CHECK(gaussian_w2({Vector::Zero(3), ca}, {Vector::Zero(3), cb}) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("gaussian_w2 rejects non-PSD input") {
  Matrix bad = Matrix::Identity(2, 2);
  bad(1, 1) = -0.5;
  CHECK_THROWS_WITH_AS(gaussian_w2({Vector::Zero(2), bad}, {Vector::Zero(2), Matrix::Identity(2, 2)}),
                       "not PSD", std::domain_error);
  CHECK_THROWS_AS(gaussian_w2(law1(0, 1), {Vector::Zero(2), Matrix::Identity(2, 2)}), std::invalid_argument);
}

TEST_CASE("psd_sqrt") {
  CHECK(psd_sqrt(Matrix::Identity(3, 3)).isApprox(Matrix::Identity(3, 3), 1e-15));
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 4.0, 9.0;
  Matrix expected = Matrix::Zero(2, 2);
  expected.diagonal() << 2.0, 3.0;
  CHECK((psd_sqrt(d) - expected).norm() < 1e-14);
  Matrix g(3, 2);
  g << 1, 2, -1, 0.5, 0.3, 1;
  const Matrix p = g * g.transpose();  // rank 2
  const Matrix s = psd_sqrt(p);
  CHECK((s * s - p).norm() < 1e-10);
  CHECK((s - s.transpose()).norm() == 0.0);
  Matrix tiny = Matrix::Identity(2, 2);
  tiny(1, 1) = -1e-13;
  CHECK_NOTHROW(psd_sqrt(tiny));
  tiny(1, 1) = -1e-3;
  CHECK_THROWS_WITH_AS(psd_sqrt(tiny), "not PSD", std::domain_error);
}

TEST_CASE("spectrum") {
  const Vector ones = spectrum(Matrix::Identity(3, 3));
  CHECK(ones == Vector::Ones(3));
  Matrix m = Matrix::Zero(2, 2);
  m.diagonal() << 2.0, -1.0;
  const Vector ev = spectrum(m);
  CHECK(ev(0) == -1.0);
  CHECK(ev(1) == 2.0);
  const auto t = generate_target(5, {-5.0, 5.0}, 1.2, 8);
  CHECK((spectrum(t.precision()).array() > 0.0).all());
  CHECK(spectrum(t.precision()) == spectrum(t.precision()));
}

TEST_CASE("log_det_spd") {
  const Matrix m = random_spd(4, 9);
  CHECK(log_det_spd(m) == doctest::Approx(std::log(m.determinant())).epsilon(1e-12));
  const auto t = generate_target(50, {-5.0, 5.0}, 1.2, 1);
  CHECK(std::isfinite(log_det_spd(t.covariance())));
  CHECK_THROWS_AS(log_det_spd(-Matrix::Identity(2, 2)), std::domain_error);
}
