// SPDX-License-Identifier: Apache-2.0
#include "bld/harness/experiment.hpp"

#include "bld/bounds.hpp"
#include "bld/format.hpp"
#include "bld/harness/bounds_report.hpp"
#include "bld/harness/target_io.hpp"
#include "bld/harness/trace_csv.hpp"
#include "bld/samplers.hpp"
#include "bld/variation.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>

namespace bld::harness {
namespace {

using nlohmann::json;

bool randomized(const std::string& algo) { return algo == "rbld" || algo == "rblmc"; }
bool discrete(const std::string& algo) { return algo == "rblmc" || algo == "cblmc"; }

std::optional<double> theory_bound(const std::string& algo, const AssumptionConstants& k,
                                   const Schedule& schedule, std::span<const BlockStep> steps,
                                   std::uint64_t block_step, double kl0) {
  const double nb = static_cast<double>(schedule.num_blocks());
  const double cycles = std::floor(static_cast<double>(block_step) / nb);
  try {
    if (algo == "rbld") {
      return rbld_kl_bound(k, schedule.phi_min(), schedule.lambda_min(),
                           static_cast<double>(block_step), kl0);
    }
    if (algo == "cbld") return cbld_kl_bound(k, schedule.lambda_min(), cycles, kl0);
    if (algo == "rblmc") return rblmc_kl_bound(k, steps, static_cast<double>(block_step), kl0);
    return cblmc_kl_bound(k, steps, cycles, kl0);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

}  // namespace

std::string run_id(const std::string& algo, std::size_t b, double lambda, double delta,
                   std::uint64_t seed) {
  return algo + "_b" + std::to_string(b) + "_lam" + shortest(lambda) + "_delta" + shortest(delta) +
         "_seed" + std::to_string(seed);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.output, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + cfg.output.string());

  ExperimentResult result;
  json manifest;
  manifest["config_hash"] = cfg.hash();
  manifest["config"] = json::parse(cfg.canonical());
  manifest["targets"] = json::array();
  manifest["runs"] = json::array();

  for (const std::uint64_t seed : cfg.seeds) {
    const GaussianTarget target =
        cfg.target_file ? read_target(*cfg.target_file, cfg.beta)
                        : generate_target(cfg.dim, cfg.entry_range, cfg.pd_margin, seed, cfg.beta);
    const Index d = target.dim();
    const std::string checksum = target_checksum(target);
    const std::string target_name = "target-seed" + std::to_string(seed) + ".txt";
    write_target(cfg.output / target_name, target);

    const GaussianLaw initial{Vector::Constant(d, cfg.init_mean),
                              Matrix::Identity(d, d) * (cfg.init_std * cfg.init_std)};
    const double kl0 = gaussian_kl(initial, target);
    manifest["targets"].push_back(
        {{"seed", seed}, {"file", target_name}, {"checksum", checksum}, {"dim", d}, {"kl0", kl0}});

    for (const std::size_t b : cfg.block_counts) {
      if (static_cast<Index>(b) > d) {
        throw std::invalid_argument("config field 'block_counts': b exceeds target dimension");
      }
      const BlockPartition partition = make_partition(d, b);
      const std::vector<double> smoothness = block_smoothness(target.precision(), partition);

      for (const double lambda : cfg.lambdas) {
        for (const double delta : cfg.deltas) {
          std::optional<PerturbedGradient> perturbed;
          if (delta > 0.0) {
            perturbed = perturb_precision(target, delta, seed, cfg.symmetrize_perturbation);
          }
          const QuadraticOracle ideal(target.precision(), target.mean());
          const GradientOracle& drift = perturbed ? perturbed->oracle : ideal;
          const bool pd_flag = perturbed ? perturbed->positive_definite : true;

          std::optional<AssumptionConstants> constants;
          std::string constants_error;
          try {
            constants = quadratic_constants(
                target, perturbed ? std::optional<Matrix>(perturbed->precision) : std::nullopt,
                initial, partition);
          } catch (const std::exception& e) {
            constants_error = e.what();
          }

          for (const auto& algo : cfg.algorithms) {
            const Schedule schedule = randomized(algo) ? Schedule::uniform_randomized(b, lambda)
                                                       : Schedule::identity_cyclic(b, lambda);
            std::vector<BlockStep> steps;
            for (std::size_t i = 0; i < b; ++i) {
              steps.push_back({smoothness[i], partition.block(i).size(), lambda,
                               schedule.kind() == Schedule::Kind::randomized ? schedule.pmf()[i]
                                                                             : 1.0 / double(b)});
            }

            RunInfo info{run_id(algo, b, lambda, delta, seed), algo, b, lambda, delta, seed};
            const GaussianProbe measure(target, info, cfg.device_time_scale);
            Probe probe = [&](const Ensemble& e) {
              TraceRecord r = measure(e);
              if (constants && delta == 0.0) {
                r.kl_bound = theory_bound(algo, *constants, schedule, steps, e.block_steps, kl0);
              }
              return r;
            };
            ProbeSchedule when;
            if (cfg.probe_every_cycle) {
              when = {0, b};
            } else {
              when = {cfg.probe_cadence, 0};
            }

            Ensemble ensemble = Ensemble::from_gaussian(initial, cfg.ensemble_size, seed);
            Trace trace;
            if (discrete(algo)) {
              LmcConfig lmc;
              lmc.divergence_threshold = cfg.divergence_threshold;
              if (delta == 0.0) {
                lmc.block_smoothness = smoothness;
                lmc.gamma = constants ? constants->gamma : 0.0;
              }
              trace = algo == "rblmc" ? run_rblmc(drift, partition, schedule, cfg.beta,
                                                  cfg.cycles * b, ensemble, lmc, probe, when)
                                      : run_cblmc(drift, partition, schedule, cfg.beta,
                                                  cfg.cycles, ensemble, lmc, probe, when);
            } else {
              IntegratorConfig integ{cfg.integrator_step(), cfg.divergence_threshold};
              trace = algo == "rbld" ? run_rbld(drift, partition, schedule, cfg.beta,
                                                cfg.cycles * b, ensemble, integ, probe, when)
                                     : run_cbld(drift, partition, schedule, cfg.beta, cfg.cycles,
                                                ensemble, integ, probe, when);
            }

            const std::string csv_name = info.run_id + ".csv";
            write_trace(cfg.output / csv_name, trace);

            json entry{{"run_id", info.run_id},
                       {"csv", csv_name},
                       {"algo", algo},
                       {"b", b},
                       {"lambda", lambda},
                       {"delta", delta},
                       {"seed", seed},
                       {"config_hash", cfg.hash()},
                       {"target_checksum", checksum},
                       {"pd_flag", pd_flag},
                       {"diverged", ensemble.diverged},
                       {"records", trace.size()},
                       {"kl0", kl0}};
            if (constants) {
              entry["constants"] = json::parse(constants_json(*constants));
              entry["dissipative"] = constants->dissipative();
              try {
                const auto bias = bias_constants(*constants);
                entry["bias_constants"] = {{"C0", bias.C0}, {"C1", bias.C1}, {"C2", bias.C2}};
                entry["w2_bound"] = w2_convergence_bound(*constants, bias, lambda,
                                                         static_cast<double>(cfg.cycles), kl0);
              } catch (const std::exception& e) {
                entry["bias_constants"] = nullptr;
                entry["bias_note"] = e.what();
              }
            } else {
              entry["constants"] = nullptr;
              entry["dissipative"] = nullptr;
              entry["constants_note"] = constants_error;
            }
            manifest["runs"].push_back(std::move(entry));
            result.runs.push_back(
                {info, cfg.output / csv_name, checksum, ensemble.diverged, trace.size()});
          }
        }
      }
    }
  }

  result.manifest = cfg.output / "manifest.json";
  std::ofstream out(result.manifest, std::ios::binary);
  out << manifest.dump(2) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + result.manifest.string());
  return result;
}

}  // namespace bld::harness
