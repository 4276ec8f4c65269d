// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/variation.hpp"

#include <span>

namespace bld {

/// Coefficients of the finite-variation Wasserstein bias.
struct BiasConstants {
  double C0 = 0.0;
  double C1 = 0.0;
  double C2 = 0.0;
};

/// Per-block inputs of the discrete-chain bounds.
struct BlockStep {
  double smoothness = 0.0;  // L_i
  std::size_t dim = 1;      // d_i
  double lambda = 0.0;      // λ_i
  double prob = 0.0;        // φ_i (randomized only)
};

/// e^{-2γt/β}·kl0 for full Langevin diffusion.
double ld_kl_bound(const AssumptionConstants& k, double kl0, double t);

/// e^{-2γ φ_min λ_min k / β}·kl0 after k randomized block steps.
double rbld_kl_bound(const AssumptionConstants& k, double phi_min, double lambda_min,
                     double steps, double kl0);

/// e^{-2γ λ_min k / β}·kl0 after k full cycles.
double cbld_kl_bound(const AssumptionConstants& k, double lambda_min, double cycles, double kl0);

/// e^{-γ φ_min λ_min k}·kl0 + 4/(γ φ_min λ_min)·E_φ[d_i L_i² λ_i²].
/// Requires λ_i <= sqrt(φ_min)/(4 L_i); the constants assume beta = 1.
double rblmc_kl_bound(const AssumptionConstants& k, std::span<const BlockStep> blocks,
                      double steps, double kl0);
double rblmc_bias(const AssumptionConstants& k, std::span<const BlockStep> blocks);

/// e^{-γ λ_min k b}·kl0 + 4/(γ λ_min)·Σ_i L_i² d_i λ_i² after k cycles.
/// Requires λ_i <= γ/(4 L_i²); the constants assume beta = 1.
double cblmc_kl_bound(const AssumptionConstants& k, std::span<const BlockStep> blocks,
                      double cycles, double kl0);
double cblmc_bias(const AssumptionConstants& k, std::span<const BlockStep> blocks);

/// C0 = 12 + 8(κ₀ + 2c + d_max/β), C1 = M²βκ₀/4 + βB²/4, C2 = M²(d_max + βc)/4.
/// Requires β > 2/m.
BiasConstants bias_constants(const AssumptionConstants& k);

/// sqrt(C0[(C1 + √C1) + (C2 + √C2)√λ])·kλ. The guarantee needs kλ > 1; the
/// formula itself is evaluated for any k >= 0.
double w2_variation_distance(const BiasConstants& bias, double lambda, double cycles);

/// sqrt(2/γ)·e^{-γλk/β}·sqrt(kl0) + w2_variation_distance(bias, λ, k).
double w2_convergence_bound(const AssumptionConstants& k, const BiasConstants& bias,
                            double lambda, double cycles, double kl0);

struct EpsilonSchedule {
  double k_lambda_total = 0.0;  // kλ = (β/γ) log(2 sqrt(2 kl0) / (ε sqrt(γ)))
  double lambda_max = 0.0;      // (εγ)⁴ (β log(...))⁻⁴
  double bias_value = 0.0;      // right-hand side of the ε-bound
};

/// Throws when ε is so large that the logarithm is not positive.
EpsilonSchedule epsilon_schedule(const AssumptionConstants& k, double kl0, double epsilon);

struct FunctionGap {
  double empirical_gap = 0.0;  // (M σ + B)·W2
  double gibbs_gap = 0.0;      // (d/2β) log((eL/m)(cβ/d + 1))
  double total = 0.0;
};

/// σ² = κ₀ + max{(c + d/β)/m, (𝔠 + d/β)/𝔪}. Throws when g is not dissipative.
double second_moment_bound(const AssumptionConstants& k);

/// Throws std::domain_error when g is not dissipative.
FunctionGap function_gap_bound(const AssumptionConstants& k, double sigma2, double w2);

}  // namespace bld
