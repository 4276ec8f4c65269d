// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bld/gaussian.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace bld::harness {

/// Plain-text target format:
///
///   # optional comment lines
///   d
///   A_11 A_12 ... A_1d      (d rows of the precision, row-major)
///   ...
///   u_1 ... u_d             (optional mean row; zero when absent)
///
/// Values are whitespace-separated decimals written in shortest round-trip
/// form, so write -> read reproduces the matrix bit for bit.
std::string format_target(const GaussianTarget& target);
GaussianTarget parse_target(const std::string& text, double beta = 1.0);

void write_target(const std::filesystem::path& path, const GaussianTarget& target);
GaussianTarget read_target(const std::filesystem::path& path, double beta = 1.0);

/// FNV-1a of format_target, as 16 hex digits.
std::string target_checksum(const GaussianTarget& target);

}  // namespace bld::harness
