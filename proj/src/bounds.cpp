// SPDX-License-Identifier: Apache-2.0
#include "bld/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bld {
namespace {

void require_rate(const AssumptionConstants& k) {
  if (!(k.gamma > 0.0) || !(k.beta > 0.0)) {
    throw std::invalid_argument("bounds: gamma and beta must be positive");
  }
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0)) throw std::invalid_argument(std::string("bounds: ") + what + " must be >= 0");
}

double lambda_min_of(std::span<const BlockStep> blocks) {
  if (blocks.empty()) throw std::invalid_argument("bounds: no blocks");
  double out = blocks[0].lambda;
  for (const auto& b : blocks) out = std::min(out, b.lambda);
  if (!(out > 0.0)) throw std::invalid_argument("bounds: block steps must be positive");
  return out;
}

double phi_min_of(std::span<const BlockStep> blocks) {
  double out = 1.0;
  double total = 0.0;
  for (const auto& b : blocks) {
    if (!(b.prob > 0.0)) throw std::invalid_argument("bounds: block probabilities must be > 0");
    out = std::min(out, b.prob);
    total += b.prob;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("bounds: block probabilities must sum to 1");
  }
  return out;
}

}  // namespace

double ld_kl_bound(const AssumptionConstants& k, double kl0, double t) {
  require_rate(k);
  if (t < 0.0) throw std::invalid_argument("ld_kl_bound: t must be >= 0");
  require_nonnegative(kl0, "kl0");
  return std::exp(-2.0 * k.gamma / k.beta * t) * kl0;
}

double rbld_kl_bound(const AssumptionConstants& k, double phi_min, double lambda_min,
                     double steps, double kl0) {
  require_rate(k);
  if (!(phi_min > 0.0 && phi_min <= 1.0)) {
    throw std::invalid_argument("rbld_kl_bound: phi_min must lie in (0, 1]");
  }
  if (!(lambda_min > 0.0)) throw std::invalid_argument("rbld_kl_bound: lambda_min must be > 0");
  require_nonnegative(steps, "k");
  require_nonnegative(kl0, "kl0");
  return std::exp(-2.0 * k.gamma / k.beta * phi_min * lambda_min * steps) * kl0;
}

double cbld_kl_bound(const AssumptionConstants& k, double lambda_min, double cycles, double kl0) {
  require_rate(k);
  if (!(lambda_min > 0.0)) throw std::invalid_argument("cbld_kl_bound: lambda_min must be > 0");
  require_nonnegative(cycles, "k");
  require_nonnegative(kl0, "kl0");
  return std::exp(-2.0 * k.gamma / k.beta * lambda_min * cycles) * kl0;
}

double rblmc_bias(const AssumptionConstants& k, std::span<const BlockStep> blocks) {
  require_rate(k);
  const double phi_min = phi_min_of(blocks);
  const double lambda_min = lambda_min_of(blocks);
  double expectation = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.lambda > std::sqrt(phi_min) / (4.0 * b.smoothness)) {
      throw std::invalid_argument("rblmc_kl_bound: block " + std::to_string(i) +
                                  " violates lambda_i <= sqrt(phi_min)/(4 L_i)");
    }
    expectation += b.prob * static_cast<double>(b.dim) * b.smoothness * b.smoothness *
                   b.lambda * b.lambda;
  }
  return 4.0 / (k.gamma * phi_min * lambda_min) * expectation;
}

double rblmc_kl_bound(const AssumptionConstants& k, std::span<const BlockStep> blocks,
                      double steps, double kl0) {
  require_nonnegative(steps, "k");
  require_nonnegative(kl0, "kl0");
  const double bias = rblmc_bias(k, blocks);
  return std::exp(-k.gamma * phi_min_of(blocks) * lambda_min_of(blocks) * steps) * kl0 + bias;
}

double cblmc_bias(const AssumptionConstants& k, std::span<const BlockStep> blocks) {
  require_rate(k);
  const double lambda_min = lambda_min_of(blocks);
  double sum = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    if (b.lambda > k.gamma / (4.0 * b.smoothness * b.smoothness)) {
      throw std::invalid_argument("cblmc_kl_bound: block " + std::to_string(i) +
                                  " violates lambda_i <= gamma/(4 L_i^2)");
    }
    sum += b.smoothness * b.smoothness * static_cast<double>(b.dim) * b.lambda * b.lambda;
  }
  return 4.0 / (k.gamma * lambda_min) * sum;
}

double cblmc_kl_bound(const AssumptionConstants& k, std::span<const BlockStep> blocks,
                      double cycles, double kl0) {
  require_nonnegative(cycles, "k");
  require_nonnegative(kl0, "kl0");
  const double bias = cblmc_bias(k, blocks);
  const double b = static_cast<double>(blocks.size());
  return std::exp(-k.gamma * lambda_min_of(blocks) * cycles * b) * kl0 + bias;
}

BiasConstants bias_constants(const AssumptionConstants& k) {
  if (!(k.m > 0.0)) throw std::invalid_argument("bias_constants: m must be > 0");
  if (!(k.beta > 2.0 / k.m)) throw std::invalid_argument("bias_constants: requires beta > 2/m");
  require_nonnegative(k.kappa0, "kappa0");
  require_nonnegative(k.c, "c");
  const double dmax = static_cast<double>(k.d_max);
  BiasConstants out;
  out.C0 = 12.0 + 8.0 * (k.kappa0 + (2.0 * k.c + dmax / k.beta));
  out.C1 = k.M * k.M * k.beta * k.kappa0 / 4.0 + k.beta * k.B * k.B / 4.0;
  out.C2 = k.M * k.M * (dmax + k.beta * k.c) / 4.0;
  return out;
}

double w2_variation_distance(const BiasConstants& bias, double lambda, double cycles) {
  if (!(lambda > 0.0)) throw std::invalid_argument("w2_variation_distance: lambda must be > 0");
  require_nonnegative(cycles, "k");
  const double inner = (bias.C1 + std::sqrt(bias.C1)) + (bias.C2 + std::sqrt(bias.C2)) * std::sqrt(lambda);
  return std::sqrt(bias.C0 * inner) * cycles * lambda;
}

double w2_convergence_bound(const AssumptionConstants& k, const BiasConstants& bias,
                            double lambda, double cycles, double kl0) {
  require_rate(k);
  require_nonnegative(kl0, "kl0");
  const double contraction =
      std::sqrt(2.0 / k.gamma) * std::exp(-k.gamma / k.beta * lambda * cycles) * std::sqrt(kl0);
  return contraction + w2_variation_distance(bias, lambda, cycles);
}

EpsilonSchedule epsilon_schedule(const AssumptionConstants& k, double kl0, double epsilon) {
  require_rate(k);
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon_schedule: epsilon must be > 0");
  if (!(kl0 > 0.0)) throw std::invalid_argument("epsilon_schedule: kl0 must be > 0");
  const double log_term = std::log(2.0 * std::sqrt(2.0 * kl0) / (epsilon * std::sqrt(k.gamma)));
  if (!(log_term > 0.0)) {
    throw std::invalid_argument("epsilon_schedule: epsilon too large for kl0 (non-positive horizon)");
  }
  const BiasConstants bias = bias_constants(k);
  EpsilonSchedule out;
  out.k_lambda_total = k.beta / k.gamma * log_term;
  out.lambda_max = std::pow(epsilon * k.gamma, 4) * std::pow(k.beta * log_term, -4);
  out.bias_value = epsilon / 2.0 +
                   std::sqrt(bias.C0) * (std::sqrt(bias.C1 + std::sqrt(bias.C1)) * out.k_lambda_total +
                                         epsilon * std::sqrt(bias.C2 + std::sqrt(bias.C2)));
  return out;
}

double second_moment_bound(const AssumptionConstants& k) {
  if (!k.dissipative() || !(*k.frak_m > 0.0)) {
    throw std::domain_error("g_δ is not dissipative");
  }
  if (!(k.m > 0.0)) throw std::invalid_argument("second_moment_bound: m must be > 0");
  const double d = static_cast<double>(k.dim);
  return k.kappa0 + std::max((k.c + d / k.beta) / k.m, (k.frak_c + d / k.beta) / *k.frak_m);
}

FunctionGap function_gap_bound(const AssumptionConstants& k, double sigma2, double w2) {
  if (!k.dissipative() || !(*k.frak_m > 0.0)) {
    throw std::domain_error("g_δ is not dissipative");
  }
  if (!(k.m > 0.0) || !(k.L > 0.0)) {
    throw std::invalid_argument("function_gap_bound: m and L must be > 0");
  }
  if (!(k.beta >= 2.0 / k.m)) {
    throw std::invalid_argument("function_gap_bound: requires beta >= 2/m");
  }
  require_nonnegative(sigma2, "sigma2");
  require_nonnegative(w2, "w2");
  const double d = static_cast<double>(k.dim);
  FunctionGap out;
  out.empirical_gap = (k.M * std::sqrt(sigma2) + k.B) * w2;
  out.gibbs_gap =
      d / (2.0 * k.beta) * std::log(std::numbers::e * k.L / k.m * (k.c * k.beta / d + 1.0));
  out.total = out.empirical_gap + out.gibbs_gap;
  return out;
}

}  // namespace bld
