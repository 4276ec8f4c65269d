// SPDX-License-Identifier: Apache-2.0
#include "bld/samplers.hpp"

#include "bld/integrator.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace bld {
namespace {

struct Driver {
  const GradientOracle& drift;
  const BlockPartition& partition;
  const Schedule& schedule;
  double beta;
  Ensemble& ensemble;
  const Probe& probe;
  ProbeSchedule when;
  double threshold;
  bool discrete;       // one update of size lambda_i per block visit
  double em_step = 0;  // continuous only

  Trace trace;
  std::uint64_t inner_total = 0;
  std::uint64_t last_probed_inner = UINT64_MAX;

  void record() {
    if (probe) trace.push_back(probe(ensemble));
    last_probed_inner = inner_total;
  }

  void record_once() {
    if (last_probed_inner != inner_total) record();
  }

  std::size_t pick(std::uint64_t k) {
    if (schedule.kind() == Schedule::Kind::randomized) {
      return schedule.draw(ensemble.schedule_stream.uniform());
    }
    return schedule.order()[k % schedule.num_blocks()];
  }

  // Returns false once the ensemble diverged.
  bool block_step(std::size_t block_index) {
    const Block& block = partition.block(block_index);
    const double lambda = schedule.duration(block_index);
    const InnerSteps steps = discrete ? InnerSteps::single(lambda) : InnerSteps::cover(lambda, em_step);
    const double start = ensemble.time;
    std::size_t done = 0;
    while (done < steps.count) {
      std::size_t seg = steps.count - done;
      if (when.every_inner_steps > 0) {
        const std::uint64_t to_probe = when.every_inner_steps - inner_total % when.every_inner_steps;
        seg = static_cast<std::size_t>(std::min<std::uint64_t>(seg, to_probe));
      }
      const bool bad = advance_block(ensemble, block, steps, done, done + seg, drift, beta, threshold);
      done += seg;
      inner_total += seg;
      if (bad) {
        ensemble.diverged = true;
        ensemble.time = start + steps.elapsed(done);
        record();
        return false;
      }
      if (done == steps.count) {
        ensemble.time = start + lambda;
        ++ensemble.block_steps;
        const bool block_probe = when.every_block_steps > 0 &&
                                 ensemble.block_steps % when.every_block_steps == 0;
        const bool inner_probe =
            when.every_inner_steps > 0 && inner_total % when.every_inner_steps == 0;
        if (block_probe || inner_probe) record();
      } else {
        ensemble.time = start + steps.elapsed(done);
        record();
      }
    }
    return true;
  }

  Trace run(std::uint64_t block_steps) {
    if (partition.dim() != ensemble.dim() || drift.dim() != ensemble.dim()) {
      throw std::invalid_argument("sampler: partition, oracle and ensemble dimensions differ");
    }
    if (partition.size() != schedule.num_blocks()) {
      throw std::invalid_argument("sampler: schedule and partition block counts differ");
    }
    if (!(beta > 0.0)) throw std::invalid_argument("sampler: beta must be positive");
    if (ensemble.diverged) throw std::invalid_argument("sampler: ensemble already diverged");
    record();
    for (std::uint64_t k = 0; k < block_steps; ++k) {
      if (!block_step(pick(ensemble.block_steps))) return std::move(trace);
    }
    record_once();
    return std::move(trace);
  }
};

void check_lmc_steps(const Schedule& schedule, const LmcConfig& cfg, bool randomized) {
  if (cfg.block_smoothness.empty()) return;
  if (cfg.block_smoothness.size() != schedule.num_blocks()) {
    throw std::invalid_argument("LmcConfig: block_smoothness size differs from block count");
  }
  const double phi_min = schedule.phi_min();
  for (std::size_t i = 0; i < schedule.num_blocks(); ++i) {
    const double li = cfg.block_smoothness[i];
    if (!randomized && !(cfg.gamma > 0.0)) return;
    const double limit =
        randomized ? std::sqrt(phi_min) / (4.0 * li) : cfg.gamma / (4.0 * li * li);
    if (schedule.duration(i) > limit) {
      std::clog << "warning: block " << i << " step " << schedule.duration(i)
                << " exceeds the discrete-chain limit " << limit << "\n";
    }
  }
}

}  // namespace

Trace run_rbld(const GradientOracle& drift, const BlockPartition& partition,
               const Schedule& schedule, double beta, std::uint64_t block_steps,
               Ensemble& ensemble, const IntegratorConfig& cfg, const Probe& probe,
               ProbeSchedule when) {
  if (schedule.kind() != Schedule::Kind::randomized) {
    throw std::invalid_argument("run_rbld: schedule must be randomized");
  }
  cfg.validate(schedule.lambda_min());
  Driver driver{drift, partition, schedule, beta, ensemble, probe, when,
                cfg.divergence_threshold, false, cfg.em_step, {}};
  return driver.run(block_steps);
}

Trace run_cbld(const GradientOracle& drift, const BlockPartition& partition,
               const Schedule& schedule, double beta, std::uint64_t cycles, Ensemble& ensemble,
               const IntegratorConfig& cfg, const Probe& probe, ProbeSchedule when) {
  if (schedule.kind() != Schedule::Kind::cyclic) {
    throw std::invalid_argument("run_cbld: schedule must be cyclic");
  }
  cfg.validate(schedule.lambda_min());
  Driver driver{drift, partition, schedule, beta, ensemble, probe, when,
                cfg.divergence_threshold, false, cfg.em_step, {}};
  return driver.run(cycles * schedule.num_blocks());
}

Trace run_rblmc(const GradientOracle& drift, const BlockPartition& partition,
                const Schedule& schedule, double beta, std::uint64_t steps, Ensemble& ensemble,
                const LmcConfig& cfg, const Probe& probe, ProbeSchedule when) {
  if (schedule.kind() != Schedule::Kind::randomized) {
    throw std::invalid_argument("run_rblmc: schedule must be randomized");
  }
  check_lmc_steps(schedule, cfg, true);
  Driver driver{drift, partition, schedule, beta, ensemble, probe, when,
                cfg.divergence_threshold, true, 0.0, {}};
  return driver.run(steps);
}

Trace run_cblmc(const GradientOracle& drift, const BlockPartition& partition,
                const Schedule& schedule, double beta, std::uint64_t cycles, Ensemble& ensemble,
                const LmcConfig& cfg, const Probe& probe, ProbeSchedule when) {
  if (schedule.kind() != Schedule::Kind::cyclic) {
    throw std::invalid_argument("run_cblmc: schedule must be cyclic");
  }
  check_lmc_steps(schedule, cfg, false);
  Driver driver{drift, partition, schedule, beta, ensemble, probe, when,
                cfg.divergence_threshold, true, 0.0, {}};
  return driver.run(cycles * schedule.num_blocks());
}

std::vector<std::size_t> randomized_block_sequence(const Schedule& schedule, std::uint64_t seed,
                                                   std::uint64_t steps) {
  CounterStream stream(seed, kScheduleStream);
  std::vector<std::size_t> out;
  out.reserve(steps);
  for (std::uint64_t k = 0; k < steps; ++k) out.push_back(schedule.draw(stream.uniform()));
  return out;
}

}  // namespace bld
