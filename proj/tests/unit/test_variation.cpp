// SPDX-License-Identifier: Apache-2.0
#include "bld/exact_moments.hpp"
#include "bld/philox.hpp"
#include "bld/variation.hpp"

#include "doctest.h"

#include <cmath>

using namespace bld;

namespace {

GaussianLaw quarter(Index d) { return {Vector::Zero(d), Matrix::Identity(d, d) * 0.25}; }

Vector random_point(CounterStream& s, Index d, double scale) {
  Vector x(d);
  for (Index i = 0; i < d; ++i) x(i) = scale * s.normal();
  return x;
}

}  // namespace

TEST_CASE("zero perturbation reproduces the ideal gradient") {
  const auto t = generate_target(5, {-5, 5}, 1.2, 3);
  const auto g = perturb_precision(t, 0.0, 1);
  CHECK(g.precision == t.precision());
  CHECK(g.positive_definite);
  CounterStream s(1, 1);
  for (int i = 0; i < 10; ++i) {
    const Vector x = random_point(s, 5, 2.0);
    CHECK(g.oracle.gradient(x) == QuadraticOracle(t.precision(), t.mean()).gradient(x));
    CHECK((g.oracle.gradient(x) - t.gradient(x)).norm() <= 1e-13 * t.gradient(x).norm());
  }
}

TEST_CASE("perturbation pattern is delta = strength times a shared normal draw") {
  const auto t = generate_target(4, {-5, 5}, 1.2, 0);
  const auto a = perturb_precision(t, 0.1, 9, false), b = perturb_precision(t, 0.3, 9, false);
  CHECK((a.model.delta * 3.0 - b.model.delta).norm() < 1e-14);
  CounterStream z(9, kPerturbationStream);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j) CHECK(a.model.delta(i, j) == doctest::Approx(0.1 * z.normal()).epsilon(1e-15));
  CHECK(a.precision == t.precision().cwiseProduct((1.0 + a.model.delta.array()).matrix()));
  CHECK(a.model.strength == 0.1);
  CHECK_FALSE(a.model.symmetrized);
  CHECK_THROWS_AS(perturb_precision(t, -0.1, 0), std::invalid_argument);
}

TEST_CASE("symmetrized perturbation and Weyl bound") {
  Matrix a(2, 2);
  a << 2.0, 0.7, 0.7, 1.0;
  const GaussianTarget t(a, Vector::Zero(2), 1.0);
  const auto g = perturb_precision(t, 0.2, 5, true);
  CHECK(g.model.delta == g.model.delta.transpose());
  CHECK(g.precision == g.precision.transpose());
  const Vector e0 = spectrum(a), e1 = spectrum(g.precision);
  const double weyl = spectrum(a.cwiseProduct(g.model.delta)).cwiseAbs().maxCoeff();
  CHECK((e1 - e0).cwiseAbs().maxCoeff() <= weyl + 1e-14);
}

TEST_CASE("large perturbation of a d=50 target breaks positive definiteness") {
  int broken = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = generate_target(50, {-5, 5}, 1.2, seed);
    broken += perturb_precision(t, 0.6, seed).positive_definite ? 0 : 1;
  }
  CHECK(broken >= 9);
}

TEST_CASE("constants of the standard Gaussian") {
  for (Index d : {1, 3, 8}) {
    const GaussianTarget t(Matrix::Identity(d, d), Vector::Zero(d), 1.0);
    const auto k = quadratic_constants(t, std::nullopt, quarter(d), make_partition(d, 1));
    CHECK(k.L == doctest::Approx(1.0));
    CHECK(k.m == doctest::Approx(1.0));
    CHECK(k.gamma == doctest::Approx(1.0));
    CHECK(k.M == 0.0);
    CHECK(k.B == 0.0);
    CHECK(k.c == 0.0);
    CHECK(k.kappa0 == doctest::Approx(d / 2.0 * std::log(2.0)).epsilon(1e-14));
    CHECK(k.d_max == std::size_t(d));
    CHECK(k.dissipative());
    CHECK(*k.frak_m == doctest::Approx(1.0));
    CHECK(k.dim == d);
  }
  const GaussianTarget t2(Matrix::Identity(4, 4) * 3.0, Vector::Zero(4), 2.0);
  const auto k2 = quadratic_constants(t2, std::nullopt, quarter(4), make_partition(4, 3));
  CHECK(k2.gamma == doctest::Approx(6.0));
  CHECK(k2.d_max == 2);
}

TEST_CASE("initial law too wide for the exp-second moment") {
  const GaussianTarget t(Matrix::Identity(2, 2), Vector::Zero(2), 1.0);
  const GaussianLaw wide{Vector::Zero(2), Matrix::Identity(2, 2) * 0.5};
  CHECK_THROWS_WITH_AS(quadratic_constants(t, std::nullopt, wide, make_partition(2, 1)),
                       "initial law has no finite exp-second moment", std::domain_error);
}

TEST_CASE("kappa0 with a nonzero mean matches the scalar product formula") {
  const GaussianLaw law{Vector::Constant(1, 0.7), Matrix::Constant(1, 1, 0.1)};
  // E exp(w²), w ~ N(a, s): (1-2s)^{-1/2} exp(a²/(1-2s)).
  CHECK(log_exp_second_moment(law) == doctest::Approx(-0.5 * std::log(0.8) + 0.49 / 0.8).epsilon(1e-14));
}

TEST_CASE("eigenvalue flipped negative loses dissipativity") {
  Matrix a = Matrix::Zero(2, 2);
  a.diagonal() << 1.0, 2.0;
  const GaussianTarget t(a, Vector::Zero(2), 1.0);
  Matrix flipped = a;
  flipped(0, 0) = -0.5;
  const auto k = quadratic_constants(t, flipped, quarter(2), make_partition(2, 1));
  CHECK_FALSE(k.dissipative());
  CHECK(k.M == doctest::Approx(1.5));
  CHECK(k.G == doctest::Approx(2.0));
}

TEST_CASE("assumption constants are certified on random points") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const bool centered = seed % 2 == 0;
    const auto base = generate_target(6, {-5, 5}, 1.2, seed);
    Vector u = Vector::Zero(6);
    if (!centered) u << 1.0, -0.5, 0.3, 2.0, 0.0, -1.0;
    const GaussianTarget t(base.precision(), u, 1.0);
    const auto g = perturb_precision(t, 0.05, seed);
    const auto k = quadratic_constants(t, g.precision, quarter(6), make_partition(6, 2));
    CounterStream s(seed, 77);
    for (int i = 0; i < 10000; ++i) {
      const Vector x = random_point(s, 6, 3.0), y = random_point(s, 6, 3.0);
      const Vector gap = t.gradient(x) - g.oracle.gradient(x);
      CHECK(gap.squaredNorm() <= k.M * k.M * (x - u).squaredNorm() + k.B * k.B + 1e-9);
      CHECK((g.oracle.gradient(x) - g.oracle.gradient(y)).norm() <= k.G * (x - y).norm() * (1 + 1e-12));
      CHECK((t.gradient(x) - t.gradient(y)).norm() <= k.L * (x - y).norm() * (1 + 1e-12));
      CHECK(t.gradient(x).dot(x) >= k.m * x.squaredNorm() - k.c - 1e-9);
      if (k.dissipative()) CHECK(g.oracle.gradient(x).dot(x) >= *k.frak_m * x.squaredNorm() - k.frak_c - 1e-9);
    }
    if (centered) CHECK(k.B == 0.0);
    if (!centered) CHECK(k.c > 0.0);
  }
}

TEST_CASE("unperturbed constants have no gradient gap") {
  const auto t = generate_target(5, {-5, 5}, 1.2, 1);
  const auto k = quadratic_constants(t, t.precision(), quarter(5), make_partition(5, 5));
  CHECK(k.M == 0.0);
  CHECK(k.B == 0.0);
  CHECK(k.G == doctest::Approx(k.L).epsilon(1e-12));
  CHECK(k.d_max == 1);
}

TEST_CASE("block smoothness is the top eigenvalue of each diagonal block") {
  Matrix a(3, 3);
  a << 2.0, 1.0, 0.3, 1.0, 2.0, 0.1, 0.3, 0.1, 5.0;
  const auto ls = block_smoothness(a, BlockPartition({{0, 1}, {2}}, 3));
  CHECK(ls[0] == doctest::Approx(3.0));
  CHECK(ls[1] == doctest::Approx(5.0));
  CHECK(spectral_norm(-a) == doctest::Approx(spectrum(a).maxCoeff()));
}

TEST_CASE("exact Langevin KL decays at least at the Bakry-Emery rate") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto base = generate_target(4, {-5, 5}, 1.2, seed);
    const GaussianTarget t(base.precision(), Vector::Zero(4), 0.5 + double(seed));
    const auto k = quadratic_constants(t, std::nullopt, quarter(4), make_partition(4, 1));
    CHECK(k.gamma == doctest::Approx(t.beta() * spectrum(t.precision())(0)));
    const GaussianLaw init{Vector::Constant(4, 1.0), Matrix::Identity(4, 4) * 0.1};
    const double kl0 = gaussian_kl(init, t);
    for (double time = 0.05; time < 3.0; time += 0.05) {
      const double kl = gaussian_kl(exact_langevin_moments(t, init, time), t);
      CHECK(kl <= std::exp(-2.0 * k.gamma / t.beta() * time) * kl0 * (1 + 1e-10));
    }
  }
}
