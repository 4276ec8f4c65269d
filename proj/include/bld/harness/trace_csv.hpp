// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/metrics.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

namespace bld::harness {

inline constexpr std::string_view kTraceHeader =
    "run_id,algo,b,lambda,delta,seed,step_k,cycle,sim_time,device_time_s,kl,w2,kl_bound,diverged";

/// One CSV row (no newline). Missing values are empty fields.
std::string format_record(const TraceRecord& record);

void write_trace(std::ostream& out, const Trace& trace);
void write_trace(const std::filesystem::path& path, const Trace& trace);

}  // namespace bld::harness
