// SPDX-License-Identifier: Apache-2.0
#include "bld/ensemble.hpp"

#include <cmath>
#include <stdexcept>

namespace bld {

Ensemble Ensemble::from_states(Matrix states, std::uint64_t seed) {
  if (states.cols() < 1 || states.rows() < 1) {
    throw std::invalid_argument("Ensemble: need at least one particle of dimension >= 1");
  }
  Ensemble ens;
  ens.streams.reserve(static_cast<std::size_t>(states.cols()));
  for (Index p = 0; p < states.cols(); ++p) {
    ens.streams.emplace_back(seed, static_cast<std::uint64_t>(p));
  }
  ens.schedule_stream = CounterStream(seed, kScheduleStream);
  ens.states = std::move(states);
  return ens;
}

Ensemble Ensemble::from_gaussian(const GaussianLaw& init, std::size_t n, std::uint64_t seed) {
  const Index d = init.dim();
  Ensemble ens = from_states(Matrix::Zero(d, static_cast<Index>(n)), seed);
  const Matrix root = psd_sqrt(init.covariance);
  Vector z(d);
  for (std::size_t p = 0; p < n; ++p) {
    auto& stream = ens.streams[p];
    for (Index j = 0; j < d; ++j) z(j) = stream.normal();
    ens.states.col(static_cast<Index>(p)) = init.mean + root * z;
  }
  return ens;
}

void IntegratorConfig::validate(double lambda_min) const {
  if (!(em_step > 0.0) || !std::isfinite(em_step)) {
    throw std::invalid_argument("IntegratorConfig: em_step must be positive");
  }
  if (em_step > lambda_min * (1.0 + 1e-12)) {
    throw std::invalid_argument("IntegratorConfig: em_step exceeds the shortest block duration");
  }
  if (!(divergence_threshold > 0.0)) {
    throw std::invalid_argument("IntegratorConfig: divergence_threshold must be positive");
  }
}

}  // namespace bld
