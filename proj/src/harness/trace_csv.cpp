// SPDX-License-Identifier: Apache-2.0
#include "bld/harness/trace_csv.hpp"

#include "bld/format.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace bld::harness {
namespace {

std::string optional_field(const std::optional<double>& v) { return v ? shortest(*v) : ""; }

}  // namespace

std::string format_record(const TraceRecord& r) {
  std::string row;
  row += r.run.run_id + ',' + r.run.algo + ',' + std::to_string(r.run.b) + ',';
  row += shortest(r.run.lambda) + ',' + shortest(r.run.delta) + ',' + std::to_string(r.run.seed);
  row += ',' + std::to_string(r.block_step) + ',' + shortest(r.cycle) + ',' + shortest(r.time);
  row += ',' + shortest(r.device_time) + ',' + optional_field(r.kl) + ',' + optional_field(r.w2);
  row += ',' + optional_field(r.kl_bound) + ',' + (r.diverged ? "1" : "0");
  return row;
}

void write_trace(std::ostream& out, const Trace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace) out << format_record(r) << '\n';
}

void write_trace(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace(out, trace);
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace bld::harness
