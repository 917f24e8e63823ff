// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace newscause {

/// Formats a double with a fixed number of significant digits (default 12,
/// the precision used for every text artifact the pipeline emits).
std::string format_real(double value, int significant_digits = 12);

/// Rounds a double to 12 significant digits by a format/parse round trip.
double round_real12(double value);

std::string trim(std::string_view s);

/// Splits into lines on '\n', stripping a trailing '\r' per line. A final
/// newline does not produce an empty trailing element.
std::vector<std::string> split_lines(std::string_view text);

/// Splits one CSV record. Handles double-quoted fields with "" escapes.
std::vector<std::string> parse_csv_fields(const std::string& line);

/// Quotes a CSV field only when it contains a comma, quote, or newline.
std::string csv_field(const std::string& value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit content hash, returned as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view data);
std::string fnv1a64_hex(std::string_view data);

}  // namespace newscause
