// SPDX-License-Identifier: Apache-2.0
#include "bld/integrator.hpp"

#include "bld/parallel.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace bld {

InnerSteps InnerSteps::cover(double duration, double em_step) {
  if (!(duration > 0.0) || !(em_step > 0.0)) {
    throw std::invalid_argument("InnerSteps: duration and em_step must be positive");
  }
  const double ratio = duration / em_step;
  auto full = static_cast<std::size_t>(std::floor(ratio + 1e-9));
  const double remainder = duration - static_cast<double>(full) * em_step;
  if (full == 0) return {1, duration, duration};
  if (remainder > 1e-9 * duration) return {full + 1, em_step, remainder};
  return {full, em_step, em_step};
}

double InnerSteps::elapsed(std::size_t n) const {
  if (n >= count) return static_cast<double>(count - 1) * step + last_step;
  return static_cast<double>(n) * step;
}

bool advance_block(Ensemble& ensemble, const Block& block, const InnerSteps& steps,
                   std::size_t first, std::size_t last, const GradientOracle& drift, double beta,
                   double divergence_threshold) {
  if (drift.dim() != ensemble.dim()) {
    throw std::invalid_argument("advance_block: oracle and ensemble dimensions differ");
  }
  if (!(beta > 0.0)) throw std::invalid_argument("advance_block: beta must be positive");
  const bool noisy = std::isfinite(beta);
  const std::size_t d = static_cast<std::size_t>(ensemble.dim());
  const std::size_t width = block.size();
  std::atomic<bool> diverged{false};

  parallel_for(ensemble.size(), [&](std::size_t begin, std::size_t end) {
    std::vector<double> grad(width);
    for (std::size_t p = begin; p < end; ++p) {
      double* x = ensemble.states.col(static_cast<Index>(p)).data();
      CounterStream& stream = ensemble.streams[p];
      for (std::size_t s = first; s < last; ++s) {
        const double h = steps.size(s);
        const double noise = noisy ? std::sqrt(2.0 * h / beta) : 0.0;
        drift.block_gradient({x, d}, block, grad);
        bool bad = false;
        for (std::size_t n = 0; n < width; ++n) {
          double& xi = x[block[n]];
          xi -= h * grad[n];
          if (noisy) xi += noise * stream.normal();
          bad |= !(std::abs(xi) <= divergence_threshold);
        }
        if (bad) {
          diverged.store(true, std::memory_order_relaxed);
          break;
        }
      }
    }
  });
  return diverged.load();
}

void block_em_evolve(Ensemble& ensemble, const Block& block, double duration,
                     const GradientOracle& drift, double beta, const IntegratorConfig& cfg) {
  cfg.validate(duration);
  const InnerSteps steps = InnerSteps::cover(duration, cfg.em_step);
  const double start = ensemble.time;
  if (advance_block(ensemble, block, steps, 0, steps.count, drift, beta,
                    cfg.divergence_threshold)) {
    ensemble.diverged = true;
    return;
  }
  ensemble.time = start + duration;
  ++ensemble.block_steps;
}

}  // namespace bld
