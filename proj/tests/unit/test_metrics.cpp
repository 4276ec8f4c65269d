// SPDX-License-Identifier: Apache-2.0
#include "bld/metrics.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace bld;

namespace {

Matrix draws(const GaussianLaw& law, Index n, std::uint64_t seed) {
  return Ensemble::from_gaussian(law, std::size_t(n), seed).states;
}

GaussianTarget target3() {
  Matrix a(3, 3);
  a << 2.0, 0.4, 0.1, 0.4, 1.0, -0.2, 0.1, -0.2, 1.5;
  return GaussianTarget(a, Vector::Zero(3), 1.0);
}

}  // namespace

TEST_CASE("estimate_gaussian examples") {
  Matrix same(2, 5);
  same.colwise() = Vector::Constant(2, 0.1234567);
  const auto e = estimate_gaussian(same);
  CHECK(e.covariance.isZero(0.0));
  CHECK(e.mean == Vector::Constant(2, 0.1234567));

  Matrix pm(1, 2);
  pm << 1.0, -1.0;
  const auto two = estimate_gaussian(pm);
  CHECK(two.mean(0) == 0.0);
  CHECK(two.covariance(0, 0) == 2.0);
  CHECK(two.sample_count == 2);

  CHECK_THROWS_AS(estimate_gaussian(Matrix::Zero(2, 1)), std::invalid_argument);
}

TEST_CASE("estimate_gaussian matches the textbook unbiased formulas") {
  const Matrix x = draws(target3().law(), 777, 4);
  const Vector mean = x.rowwise().mean();
  const Matrix centered = x.colwise() - mean;
  const Matrix cov = centered * centered.transpose() / 776.0;
  const auto e = estimate_gaussian(x);
  CHECK((e.mean - mean).norm() < 1e-13);
  CHECK((e.covariance - cov).norm() < 1e-13);
  CHECK(e.covariance == e.covariance.transpose());
}

TEST_CASE("estimate_gaussian is permutation invariant and translation equivariant") {
  const Matrix x = draws(target3().law(), 500, 5);
  std::vector<Index> order(500);
  std::iota(order.begin(), order.end(), 0);
  std::reverse(order.begin(), order.end());
  std::rotate(order.begin(), order.begin() + 123, order.end());
  Matrix permuted(3, 500);
  for (Index p = 0; p < 500; ++p) permuted.col(p) = x.col(order[std::size_t(p)]);
  const auto a = estimate_gaussian(x), b = estimate_gaussian(permuted);
  CHECK((a.mean - b.mean).norm() < 1e-13);
  CHECK((a.covariance - b.covariance).norm() < 1e-13);

  Vector v(3);
  v << 10.0, -3.0, 0.5;
  const auto c = estimate_gaussian(Matrix(x.colwise() + v));
  CHECK((c.mean - (a.mean + v)).norm() < 1e-12);
  CHECK((c.covariance - a.covariance).norm() < 1e-12);
}

TEST_CASE("plug-in KL bias is O(d^2/N)") {
  const auto t = target3();
  const double d = 3, n = 1e5;
  const double kl = gaussian_kl(estimate_gaussian(draws(t.law(), Index(n), 1)).law(), t);
  CHECK(kl >= 0.0);
  CHECK(kl < 2.0 * d * (d + 1) / (4 * n) + 5.0 * std::sqrt(d * (d + 1) / 4) / n * 2);
}

TEST_CASE("stationary probe KL stays under the estimator ceiling across 20 seeds") {
  const auto t = target3();
  const double d = 3;
  const Index n = 2000;
  std::vector<double> kls;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto e = Ensemble::from_gaussian(t.law(), std::size_t(n), seed);
    const GaussianProbe probe(t, {"s", "cbld", 1, 0.1, 0.0, seed});
    kls.push_back(*probe(e).kl);
  }
  const double mean = std::accumulate(kls.begin(), kls.end(), 0.0) / 20;
  double var = 0.0;
  for (double k : kls) var += (k - mean) * (k - mean);
  const double se = std::sqrt(var / 19 / 20);
  CHECK(mean <= d * (d + 1) / (2.0 * double(n)) + 5.0 * se);
  CHECK(mean > 0.0);
}

TEST_CASE("probe stamps times and metadata") {
  const auto t = target3();
  auto e = Ensemble::from_gaussian(t.law(), 100, 1);
  e.time = 2.0;
  e.block_steps = 10;
  const GaussianProbe probe(t, {"r", "rbld", 5, 0.2, 0.1, 7}, 1e-8);
  const auto r = probe(e);
  CHECK(r.run.run_id == "r");
  CHECK(r.run.b == 5);
  CHECK(r.cycle == 2.0);
  CHECK(r.time == 2.0);
  CHECK(r.device_time == 2e-8);
  CHECK(r.kl.has_value());
  CHECK(*r.w2 >= 0.0);
  CHECK_FALSE(r.kl_bound.has_value());
  CHECK_THROWS_AS(GaussianProbe(t, {}, 0.0), std::invalid_argument);
}

TEST_CASE("probe on diverged or degenerate ensembles") {
  const auto t = target3();
  auto e = Ensemble::from_gaussian(t.law(), 100, 1);
  e.diverged = true;
  const GaussianProbe probe(t, {"r", "cbld", 1, 0.1, 0.0, 1});
  const auto r = probe(e);
  CHECK(r.diverged);
  CHECK_FALSE(r.kl.has_value());
  CHECK_FALSE(r.w2.has_value());

  auto flat = Ensemble::from_states(Matrix::Ones(3, 10), 0);
  const auto f = probe(flat);
  CHECK_FALSE(f.diverged);
  CHECK_FALSE(f.kl.has_value());
  CHECK(f.w2.has_value());
}

TEST_CASE("d=50 probe every 30 steps gives a finite series") {
  const auto t = generate_target(50, {-5, 5}, 1.2, 0);
  const GaussianLaw init{Vector::Zero(50), Matrix::Identity(50, 50) * 0.25};
  auto e = Ensemble::from_gaussian(init, 10000, 3);
  const auto r = GaussianProbe(t, {"p", "cbld", 1, 0.1, 0, 3})(e);
  CHECK(std::isfinite(*r.kl));
  CHECK(std::isfinite(*r.w2));
  CHECK(*r.kl == doctest::Approx(gaussian_kl(init, t)).epsilon(0.02));
}
