/*
   Copyright 2026 The rbarrier Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rbarrier/decay_analysis.hpp"

namespace rbarrier {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

/// report.csv: two '#' comment lines (units, manifest digest, report
/// metadata), a header row and one row per maturity.
std::string report_to_csv(const DecayReport& report, const std::string& manifest_digest);

/// Inverse of report_to_csv; every number is restored exactly.
DecayReport report_from_csv(const std::string& text);

/// FNV-1a digest of each data row of a CSV text (comment and header lines
/// skipped), in order.
std::vector<std::string> csv_row_digests(const std::string& csv_text);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

} // namespace rbarrier
