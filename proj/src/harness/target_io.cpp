// SPDX-License-Identifier: Apache-2.0
#include "bld/harness/target_io.hpp"

#include "bld/format.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bld::harness {
namespace {

std::vector<double> tokens(const std::string& text) {
  std::vector<double> out;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      double v = 0.0;
      const auto* end = word.data() + word.size();
      const auto res = std::from_chars(word.data(), end, v);
      if (res.ec != std::errc() || res.ptr != end) {
        throw std::invalid_argument("target file: bad number '" + word + "'");
      }
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace

std::string format_target(const GaussianTarget& target) {
  const Index d = target.dim();
  std::string out = std::to_string(d) + "\n";
  auto row = [&out](auto&& get, Index n) {
    for (Index j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += shortest(get(j));
    }
    out += '\n';
  };
  for (Index i = 0; i < d; ++i) row([&](Index j) { return target.precision()(i, j); }, d);
  row([&](Index j) { return target.mean()(j); }, d);
  return out;
}

GaussianTarget parse_target(const std::string& text, double beta) {
  const auto values = tokens(text);
  if (values.empty()) throw std::invalid_argument("target file: missing dimension header");
  const double header = values[0];
  if (!(header >= 1.0) || header != static_cast<double>(static_cast<Index>(header))) {
    throw std::invalid_argument("target file: dimension must be a positive integer");
  }
  const auto d = static_cast<Index>(header);
  const auto body = values.size() - 1;
  const auto square = static_cast<std::size_t>(d * d);
  if (body != square && body != square + static_cast<std::size_t>(d)) {
    throw std::invalid_argument("target file: expected " + std::to_string(square) + " or " +
                                std::to_string(square + static_cast<std::size_t>(d)) +
                                " values after the header, found " + std::to_string(body));
  }
  Matrix precision(d, d);
  std::size_t pos = 1;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) precision(i, j) = values[pos++];
  }
  Vector mean = Vector::Zero(d);
  if (body > square) {
    for (Index j = 0; j < d; ++j) mean(j) = values[pos++];
  }
  return GaussianTarget(std::move(precision), std::move(mean), beta);
}

void write_target(const std::filesystem::path& path, const GaussianTarget& target) {
  std::ofstream out(path, std::ios::binary);
  out << format_target(target);
  if (!out) throw std::runtime_error("cannot write target file " + path.string());
}

GaussianTarget read_target(const std::filesystem::path& path, double beta) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read target file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_target(buf.str(), beta);
}

std::string target_checksum(const GaussianTarget& target) {
  return hex64(fnv1a(format_target(target)));
}

}  // namespace bld::harness
