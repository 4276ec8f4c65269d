// SPDX-License-Identifier: Apache-2.0
#include "bld/harness/config.hpp"

#include "bld/format.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bld::harness {
namespace {

using nlohmann::json;

const std::vector<std::string> kRequired{"ensemble_size", "block_counts", "lambdas", "cycles",
                                         "seeds"};
const std::set<std::string> kKnown{
    "dim",           "beta",           "ensemble_size",   "block_counts",
    "algorithms",    "lambdas",        "em_step_seconds", "em_step",
    "probe_cadence", "probe_every_cycle", "deltas",       "seeds",
    "cycles",        "device_time_scale", "output",       "entry_range",
    "pd_margin",     "init_std",       "init_mean",       "divergence_threshold",
    "symmetrize_perturbation", "target_file"};

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

template <typename T>
T get(const json& doc, const std::string& key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(key, std::string("wrong type (") + e.what() + ")");
  }
}

}  // namespace

double ExperimentConfig::integrator_step() const {
  return em_step ? *em_step : em_step_seconds / device_time_scale;
}

std::string ExperimentConfig::canonical() const {
  json doc;
  doc["dim"] = dim;
  doc["beta"] = beta;
  doc["ensemble_size"] = ensemble_size;
  doc["block_counts"] = block_counts;
  doc["algorithms"] = algorithms;
  doc["lambdas"] = lambdas;
  doc["em_step"] = integrator_step();
  doc["probe_cadence"] = probe_cadence;
  doc["probe_every_cycle"] = probe_every_cycle;
  doc["deltas"] = deltas;
  doc["seeds"] = seeds;
  doc["cycles"] = cycles;
  doc["device_time_scale"] = device_time_scale;
  doc["entry_range"] = {entry_range.lo, entry_range.hi};
  doc["pd_margin"] = pd_margin;
  doc["init_std"] = init_std;
  doc["init_mean"] = init_mean;
  doc["divergence_threshold"] = divergence_threshold;
  doc["symmetrize_perturbation"] = symmetrize_perturbation;
  doc["target_file"] = target_file ? json(target_file->string()) : json(nullptr);
  return doc.dump();
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a(canonical())); }

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
    doc = json::object();
  } else {
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  for (const auto& item : doc.items()) {
    if (!kKnown.count(item.key())) fail(item.key(), "unknown key");
  }
  std::vector<std::string> missing;
  for (const auto& key : kRequired) {
    if (!doc.contains(key)) missing.push_back(key);
  }
  if (!doc.contains("dim") && !doc.contains("target_file")) missing.insert(missing.begin(), "dim");
  if (!missing.empty()) {
    std::string list;
    for (const auto& key : missing) list += (list.empty() ? "" : ", ") + key;
    throw std::invalid_argument("config is missing required keys: " + list);
  }

  ExperimentConfig cfg;
  if (doc.contains("dim")) cfg.dim = get<Index>(doc, "dim");
  if (doc.contains("beta")) cfg.beta = get<double>(doc, "beta");
  cfg.ensemble_size = get<std::size_t>(doc, "ensemble_size");
  cfg.block_counts = get<std::vector<std::size_t>>(doc, "block_counts");
  if (doc.contains("algorithms")) cfg.algorithms = get<std::vector<std::string>>(doc, "algorithms");
  cfg.lambdas = get<std::vector<double>>(doc, "lambdas");
  if (doc.contains("em_step_seconds")) cfg.em_step_seconds = get<double>(doc, "em_step_seconds");
  if (doc.contains("em_step")) cfg.em_step = get<double>(doc, "em_step");
  if (doc.contains("probe_cadence")) cfg.probe_cadence = get<std::size_t>(doc, "probe_cadence");
  if (doc.contains("probe_every_cycle")) cfg.probe_every_cycle = get<bool>(doc, "probe_every_cycle");
  if (doc.contains("deltas")) cfg.deltas = get<std::vector<double>>(doc, "deltas");
  cfg.seeds = get<std::vector<std::uint64_t>>(doc, "seeds");
  cfg.cycles = get<std::uint64_t>(doc, "cycles");
  if (doc.contains("device_time_scale")) cfg.device_time_scale = get<double>(doc, "device_time_scale");
  if (doc.contains("output")) cfg.output = get<std::string>(doc, "output");
  if (doc.contains("entry_range")) {
    const auto range = get<std::vector<double>>(doc, "entry_range");
    if (range.size() != 2) fail("entry_range", "expected [lo, hi]");
    cfg.entry_range = {range[0], range[1]};
  }
  if (doc.contains("pd_margin")) cfg.pd_margin = get<double>(doc, "pd_margin");
  if (doc.contains("init_std")) cfg.init_std = get<double>(doc, "init_std");
  if (doc.contains("init_mean")) cfg.init_mean = get<double>(doc, "init_mean");
  if (doc.contains("divergence_threshold")) {
    cfg.divergence_threshold = get<double>(doc, "divergence_threshold");
  }
  if (doc.contains("symmetrize_perturbation")) {
    cfg.symmetrize_perturbation = get<bool>(doc, "symmetrize_perturbation");
  }
  if (doc.contains("target_file")) cfg.target_file = get<std::string>(doc, "target_file");

  if (!cfg.target_file && cfg.dim < 1) fail("dim", "must be >= 1");
  if (!(cfg.beta > 0.0)) fail("beta", "must be > 0");
  if (cfg.ensemble_size < 2) fail("ensemble_size", "must be >= 2");
  if (cfg.block_counts.empty()) fail("block_counts", "must not be empty");
  for (auto b : cfg.block_counts) {
    if (b < 1 || (!cfg.target_file && static_cast<Index>(b) > cfg.dim)) {
      fail("block_counts", "each entry must lie in [1, dim]");
    }
  }
  if (cfg.algorithms.empty()) fail("algorithms", "must not be empty");
  for (const auto& a : cfg.algorithms) {
    if (a != "rbld" && a != "cbld" && a != "rblmc" && a != "cblmc") {
      fail("algorithms", "unknown algorithm '" + a + "'");
    }
  }
  if (cfg.lambdas.empty()) fail("lambdas", "must not be empty");
  for (double l : cfg.lambdas) {
    if (!(l > 0.0)) fail("lambdas", "every lambda must be > 0");
  }
  if (!(cfg.device_time_scale > 0.0)) fail("device_time_scale", "must be > 0");
  if (!(cfg.em_step_seconds > 0.0)) fail("em_step_seconds", "must be > 0");
  if (cfg.em_step && !(*cfg.em_step > 0.0)) fail("em_step", "must be > 0");
  const double h = cfg.integrator_step();
  if (h > *std::min_element(cfg.lambdas.begin(), cfg.lambdas.end()) * (1.0 + 1e-12)) {
    fail("em_step", "inner step exceeds the smallest lambda");
  }
  if (cfg.probe_cadence < 1) fail("probe_cadence", "must be >= 1");
  if (cfg.deltas.empty()) fail("deltas", "must not be empty");
  for (double delta : cfg.deltas) {
    if (!(delta >= 0.0)) fail("deltas", "every delta must be >= 0");
  }
  if (cfg.seeds.empty()) fail("seeds", "must not be empty");
  if (cfg.cycles < 1) fail("cycles", "must be >= 1");
  if (!(cfg.entry_range.hi > cfg.entry_range.lo)) fail("entry_range", "must be a nonempty interval");
  if (!(cfg.pd_margin > 1.0)) fail("pd_margin", "must be > 1");
  if (!(cfg.init_std >= 0.0)) fail("init_std", "must be >= 0");
  if (!(cfg.divergence_threshold > 0.0)) fail("divergence_threshold", "must be > 0");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace bld::harness
