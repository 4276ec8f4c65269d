// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/gaussian.hpp"
#include "bld/oracle.hpp"
#include "bld/partition.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace bld {

/// Fixed multiplicative device variation delta with entries ~ N(0, Δ²).
struct PerturbationModel {
  Matrix delta;
  double strength = 0.0;
  std::uint64_t seed = 0;
  bool symmetrized = true;
};

/// Biased oracle g(x) = (A ∘ (1 + delta)) (x - u) and its matrix.
struct PerturbedGradient {
  QuadraticOracle oracle;
  PerturbationModel model;
  Matrix precision;          // A ∘ (1 + delta)
  bool positive_definite;    // symmetric part still PD
};

/// delta = Δ·Z with Z i.i.d. standard normal drawn from (seed, perturbation
/// stream), so sweeps over Δ share one perturbation pattern. With
/// `symmetrize`, delta <- ½(delta + deltaᵀ).
PerturbedGradient perturb_precision(const GaussianTarget& target, double strength,
                                    std::uint64_t seed, bool symmetrize = true);

/// Constants of the smoothness, dissipativity, gradient-gap and initial-law
/// assumptions for a quadratic potential and its (optionally) perturbed
/// oracle.
struct AssumptionConstants {
  double gamma = 0.0;   // LSI constant of pi_beta
  double L = 0.0;       // smoothness of f
  double G = 0.0;       // Lipschitz constant of g
  double m = 0.0;       // (m, c) dissipativity of f
  double c = 0.0;
  std::optional<double> frak_m;  // empty when g is not dissipative
  double frak_c = 0.0;
  double M = 0.0;       // ‖∇f - g‖² <= M²‖x - u‖² + B²
  double B = 0.0;
  double kappa0 = 0.0;  // log E exp‖w‖² under the initial law
  std::size_t d_max = 1;
  double beta = 1.0;
  Index dim = 1;

  bool dissipative() const { return frak_m.has_value(); }
};

/// Derives every constant in closed form. `perturbed` is the matrix behind g
/// (std::nullopt for the ideal device). Throws std::domain_error when the
/// initial covariance has an eigenvalue >= ½.
AssumptionConstants quadratic_constants(const GaussianTarget& target,
                                        const std::optional<Matrix>& perturbed,
                                        const GaussianLaw& initial,
                                        const BlockPartition& partition);

/// log E[exp ‖w‖²] for w ~ initial.
double log_exp_second_moment(const GaussianLaw& initial);

/// Largest eigenvalue of each diagonal block of a symmetric matrix.
std::vector<double> block_smoothness(const Matrix& precision, const BlockPartition& partition);

/// Spectral norm (largest singular value).
double spectral_norm(const Matrix& m);

}  // namespace bld
