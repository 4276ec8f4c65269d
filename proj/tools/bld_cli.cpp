// SPDX-License-Identifier: Apache-2.0
// bld-cli: simulate sweeps, evaluate bounds, generate targets.
#include "bld/harness/bounds_report.hpp"
#include "bld/harness/config.hpp"
#include "bld/harness/experiment.hpp"
#include "bld/harness/target_io.hpp"
#include "bld/variation.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace bld;
  CLI::App app{"Block Langevin diffusion experiments (worker threads: BLD_WORKERS)"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Run a configured sweep and write CSV traces");
  std::string config_path, algo, out_dir;
  sim->add_option("--config", config_path, "JSON config file")->required();
  sim->add_option("--algo", algo, "Run only this algorithm")
      ->check(CLI::IsMember({"rbld", "cbld", "rblmc", "cblmc"}));
  sim->add_option("--out", out_dir, "Output directory (overrides config)");

  auto* bnd = app.add_subcommand("bounds", "Print every bound family on a grid");
  std::string target_path, consts_path;
  std::vector<std::string> grid;
  std::optional<double> kl0;
  std::size_t blocks = 1;
  double delta = 0.0, init_std = 0.5, beta = 1.0;
  std::uint64_t seed = 0;
  auto* tgt = bnd->add_option("--target", target_path, "Target file to derive constants from");
  auto* cst = bnd->add_option("--consts", consts_path, "JSON constants file");
  tgt->excludes(cst);
  bnd->add_option("--grid", grid, "k=..,..;lambda=..;eps=.. (repeatable)");
  bnd->add_option("--kl0", kl0, "Initial KL (default: from the initial law)");
  bnd->add_option("--blocks", blocks, "Block count b (target mode)")->check(CLI::PositiveNumber);
  bnd->add_option("--delta", delta, "Perturbation strength (target mode)");
  bnd->add_option("--seed", seed, "Perturbation seed (target mode)");
  bnd->add_option("--init-std", init_std, "Initial law N(0, s^2 I) (target mode)");
  bnd->add_option("--beta", beta, "Inverse temperature (target mode)");

  auto* gen = app.add_subcommand("gen-target", "Generate a random SPD target");
  long dim = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  double lo = -5.0, hi = 5.0, margin = 1.2;
  gen->add_option("--dim", dim, "Dimension")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "Seed")->required();
  gen->add_option("--out", gen_out, "Output file")->required();
  gen->add_option("--lo", lo, "Lower entry bound");
  gen->add_option("--hi", hi, "Upper entry bound");
  gen->add_option("--margin", margin, "Diagonal shift factor");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) {
      auto cfg = harness::load_config(config_path);
      if (!algo.empty()) cfg.algorithms = {algo};
      if (!out_dir.empty()) cfg.output = out_dir;
      const auto result = harness::run_experiment(cfg);
      std::size_t diverged = 0;
      for (const auto& r : result.runs) diverged += r.diverged ? 1 : 0;
      std::cout << result.runs.size() << " runs written to " << cfg.output.string() << " ("
                << diverged << " diverged)\n";
    } else if (*bnd) {
      if (target_path.empty() && consts_path.empty()) {
        throw std::invalid_argument("bounds: give --target or --consts");
      }
      harness::BoundsInputs inputs;
      if (!consts_path.empty()) {
        inputs = harness::parse_constants(slurp(consts_path), kl0);
      } else {
        const auto target = harness::read_target(target_path, beta);
        const Index d = target.dim();
        if (static_cast<Index>(blocks) > d) throw std::invalid_argument("bounds: --blocks exceeds dim");
        const GaussianLaw initial{Vector::Zero(d), Matrix::Identity(d, d) * (init_std * init_std)};
        const auto partition = make_partition(d, blocks);
        std::optional<Matrix> tilde;
        if (delta > 0.0) tilde = perturb_precision(target, delta, seed).precision;
        inputs.constants = quadratic_constants(target, tilde, initial, partition);
        inputs.kl0 = kl0 ? *kl0 : gaussian_kl(initial, target);
        inputs.blocks = blocks;
      }
      std::cout << harness::bounds_report(inputs, harness::parse_grid(grid));
    } else if (*gen) {
      const auto target = generate_target(dim, {lo, hi}, margin, gen_seed);
      const std::filesystem::path out_path(gen_out);
      if (out_path.has_parent_path()) std::filesystem::create_directories(out_path.parent_path());
      harness::write_target(out_path, target);
      std::cout << "wrote " << gen_out << " checksum " << harness::target_checksum(target) << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
