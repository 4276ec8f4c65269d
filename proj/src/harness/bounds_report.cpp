// SPDX-License-Identifier: Apache-2.0
#include "bld/harness/bounds_report.hpp"

#include "bld/bounds.hpp"
#include "bld/format.hpp"

#include "json.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace bld::harness {
namespace {

using nlohmann::json;

std::vector<double> parse_list(const std::string& name, const std::string& list) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    double v = 0.0;
    const auto* end = item.data() + item.size();
    const auto res = std::from_chars(item.data(), end, v);
    if (item.empty() || res.ec != std::errc() || res.ptr != end) {
      throw std::invalid_argument("grid '" + name + "': bad number '" + item + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string cell(double v) { return shortest(v); }

template <typename F>
std::string attempt(F&& f, std::string& note) {
  try {
    return cell(f());
  } catch (const std::exception& e) {
    if (note.empty()) note = e.what();
    return "n/a";
  }
}

}  // namespace

BoundsGrid parse_grid(const std::vector<std::string>& assignments) {
  BoundsGrid grid;
  for (const auto& text : assignments) {
    std::size_t start = 0;
    while (start < text.size()) {
      auto semi = text.find(';', start);
      if (semi == std::string::npos) semi = text.size();
      const auto part = text.substr(start, semi - start);
      start = semi + 1;
      if (part.empty()) continue;
      const auto eq = part.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("grid: expected name=values, got '" + part + "'");
      const auto name = part.substr(0, eq);
      auto values = parse_list(name, part.substr(eq + 1));
      if (name == "k") {
        for (double v : values) {
          if (v < 0.0) throw std::invalid_argument("grid 'k': values must be >= 0");
        }
        grid.k = std::move(values);
      } else if (name == "lambda") {
        for (double v : values) {
          if (!(v > 0.0)) throw std::invalid_argument("grid 'lambda': values must be > 0");
        }
        grid.lambda = std::move(values);
      } else if (name == "eps") {
        for (double v : values) {
          if (!(v > 0.0)) throw std::invalid_argument("grid 'eps': values must be > 0");
        }
        grid.eps = std::move(values);
      } else {
        throw std::invalid_argument("grid: unknown axis '" + name + "' (use k, lambda, eps)");
      }
    }
  }
  return grid;
}

BoundsInputs parse_constants(const std::string& text, std::optional<double> kl0_override) {
  json doc;
  try {
    doc = text.find_first_not_of(" \t\r\n") == std::string::npos ? json::object() : json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("constants file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("constants file must be a JSON object");

  static const std::vector<std::string> required{"gamma", "L",    "m",     "c",   "M",  "B",
                                                 "kappa0", "d_max", "beta", "dim", "kl0"};
  std::string missing;
  for (const auto& key : required) {
    if (key == "kl0" && kl0_override) continue;
    if (!doc.contains(key) || doc[key].is_null()) missing += (missing.empty() ? "" : ", ") + key;
  }
  if (!missing.empty()) throw std::invalid_argument("constants file is missing symbols: " + missing);

  auto num = [&doc](const std::string& key) {
    if (!doc[key].is_number()) throw std::invalid_argument("constant '" + key + "' must be a number");
    return doc[key].get<double>();
  };
  BoundsInputs in;
  auto& k = in.constants;
  k.gamma = num("gamma");
  k.L = num("L");
  k.m = num("m");
  k.c = num("c");
  k.M = num("M");
  k.B = num("B");
  k.kappa0 = num("kappa0");
  k.beta = num("beta");
  k.d_max = static_cast<std::size_t>(num("d_max"));
  k.dim = static_cast<Index>(num("dim"));
  k.G = doc.contains("G") && !doc["G"].is_null() ? num("G") : 0.0;
  if (doc.contains("frak_m") && !doc["frak_m"].is_null()) k.frak_m = num("frak_m");
  k.frak_c = doc.contains("frak_c") && !doc["frak_c"].is_null() ? num("frak_c") : 0.0;
  in.kl0 = kl0_override ? *kl0_override : num("kl0");
  if (doc.contains("b") && !doc["b"].is_null()) {
    const double b = num("b");
    if (!(b >= 1.0)) throw std::invalid_argument("constant 'b' must be >= 1");
    in.blocks = static_cast<std::size_t>(b);
  }
  return in;
}

std::string constants_json(const AssumptionConstants& k) {
  json doc;
  doc["gamma"] = k.gamma;
  doc["L"] = k.L;
  doc["G"] = k.G;
  doc["m"] = k.m;
  doc["c"] = k.c;
  doc["frak_m"] = k.frak_m ? json(*k.frak_m) : json(nullptr);
  doc["frak_c"] = k.frak_c;
  doc["M"] = k.M;
  doc["B"] = k.B;
  doc["kappa0"] = k.kappa0;
  doc["d_max"] = k.d_max;
  doc["beta"] = k.beta;
  doc["dim"] = k.dim;
  return doc.dump();
}

std::string bounds_report(const BoundsInputs& inputs, const BoundsGrid& grid) {
  const auto& k = inputs.constants;
  const double b = static_cast<double>(inputs.blocks);
  std::ostringstream out;

  out << "# constants\nsymbol,value\n";
  out << "gamma," << cell(k.gamma) << "\nL," << cell(k.L) << "\nG," << cell(k.G) << "\nm,"
      << cell(k.m) << "\nc," << cell(k.c) << "\nfrak_m," << (k.frak_m ? cell(*k.frak_m) : "n/a")
      << "\nfrak_c," << cell(k.frak_c) << "\nM," << cell(k.M) << "\nB," << cell(k.B)
      << "\nkappa0," << cell(k.kappa0) << "\nd_max," << k.d_max << "\nbeta," << cell(k.beta)
      << "\ndim," << k.dim << "\nkl0," << cell(inputs.kl0) << "\nb," << inputs.blocks << "\n";

  std::optional<BiasConstants> bias;
  std::string bias_note;
  try {
    bias = bias_constants(k);
  } catch (const std::exception& e) {
    bias_note = e.what();
  }
  out << "\n# bias_constants\nC0,C1,C2\n";
  if (bias) {
    out << cell(bias->C0) << ',' << cell(bias->C1) << ',' << cell(bias->C2) << "\n";
  } else {
    out << "n/a,n/a,n/a\n# note: " << bias_note << "\n";
  }

  std::string note;
  out << "\n# kl_bounds\nk,lambda,ld,rbld,cbld\n";
  for (double kk : grid.k) {
    for (double lam : grid.lambda) {
      out << cell(kk) << ',' << cell(lam) << ','
          << attempt([&] { return ld_kl_bound(k, inputs.kl0, kk * lam); }, note) << ','
          << attempt([&] { return rbld_kl_bound(k, 1.0 / b, lam, kk * b, inputs.kl0); }, note) << ','
          << attempt([&] { return cbld_kl_bound(k, lam, kk, inputs.kl0); }, note) << "\n";
    }
  }
  if (!note.empty()) out << "# note: " << note << "\n";

  note.clear();
  out << "\n# w2_bounds\nk,lambda,w2_variation,w2_convergence\n";
  for (double kk : grid.k) {
    for (double lam : grid.lambda) {
      out << cell(kk) << ',' << cell(lam) << ',';
      if (bias) {
        out << attempt([&] { return w2_variation_distance(*bias, lam, kk); }, note) << ','
            << attempt([&] { return w2_convergence_bound(k, *bias, lam, kk, inputs.kl0); }, note);
      } else {
        out << "n/a,n/a";
      }
      out << "\n";
    }
  }
  if (!note.empty()) out << "# note: " << note << "\n";
  if (!bias) out << "# note: " << bias_note << "\n";

  note.clear();
  out << "\n# epsilon_schedule\neps,k_lambda_total,lambda_max,bias_value\n";
  for (double eps : grid.eps) {
    out << cell(eps) << ',';
    try {
      const auto s = epsilon_schedule(k, inputs.kl0, eps);
      out << cell(s.k_lambda_total) << ',' << cell(s.lambda_max) << ',' << cell(s.bias_value);
    } catch (const std::exception& e) {
      if (note.empty()) note = e.what();
      out << "n/a,n/a,n/a";
    }
    out << "\n";
  }
  if (!note.empty()) out << "# note: " << note << "\n";

  note.clear();
  out << "\n# function_gap\nk,lambda,w2,sigma2,empirical_gap,gibbs_gap,total\n";
  for (double kk : grid.k) {
    for (double lam : grid.lambda) {
      out << cell(kk) << ',' << cell(lam) << ',';
      try {
        if (!bias) throw std::invalid_argument(bias_note);
        const double w2 = w2_convergence_bound(k, *bias, lam, kk, inputs.kl0);
        const double sigma2 = second_moment_bound(k);
        const auto gap = function_gap_bound(k, sigma2, w2);
        out << cell(w2) << ',' << cell(sigma2) << ',' << cell(gap.empirical_gap) << ','
            << cell(gap.gibbs_gap) << ',' << cell(gap.total);
      } catch (const std::exception& e) {
        if (note.empty()) note = e.what();
        out << "n/a,n/a,n/a,n/a,n/a";
      }
      out << "\n";
    }
  }
  if (!note.empty()) out << "# note: " << note << "\n";
  return out.str();
}

}  // namespace bld::harness
