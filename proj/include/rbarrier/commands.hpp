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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rbarrier/config.hpp"
#include "rbarrier/decay_analysis.hpp"
#include "rbarrier/pricing.hpp"

namespace rbarrier {

enum class ExitCode : int {
    success = 0,
    validation_error = 1,
    numerical_failure = 2,
    acceptance_failure = 3,
};

/// Command-line overrides; each set field wins over the config file or
/// manifest.
struct CommandOptions {
    std::optional<std::filesystem::path> config;
    std::optional<std::filesystem::path> manifest;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> paths;
    std::optional<int> steps;
    std::optional<unsigned> workers;
    std::optional<std::filesystem::path> out;
};

/// Defaults, then the manifest's config echo or the config file, then flags.
/// The result is validated.
RunConfig resolve_config(const CommandOptions& options);

/// Digest of the reproducible part of the configuration.
std::string config_digest(const RunConfig& config);

struct PriceResult {
    MCEstimate european;
    MCEstimate up_and_in;
    MCEstimate hit;
    std::optional<BlackScholesValues> oracle;   // constant vol or nu = 0
    std::string digest;
    std::string csv;
    nlohmann::json manifest;
};

PriceResult run_price(const RunConfig& config);

struct ScanResult {
    DecayReport report;
    std::string calibration_source;   // "calibrated", "configured" or "synthetic"
    std::optional<PolynomialRateFit> polynomial;
    std::optional<GaussianRateFit> gaussian;
    std::string digest;
    std::string csv;
    std::string prices_svg;
    std::string rate_svg;
    nlohmann::json manifest;
};

ScanResult run_scan(const RunConfig& config);

struct CheckResult {
    std::string suite;
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidateResult {
    std::vector<CheckResult> checks;
    bool all_pass = true;
    std::string text;
};

ValidateResult run_validate(const RunConfig& config);

/// Run and write outputs to config.out_dir.
ExitCode cmd_price(const RunConfig& config, std::ostream& log);
ExitCode cmd_scan(const RunConfig& config, std::ostream& log);
ExitCode cmd_validate(const RunConfig& config, std::ostream& log);

/// resolve_config + dispatch by name, mapping exceptions to exit codes
/// (messages go to `err`).
ExitCode run_command(const std::string& name, const CommandOptions& options, std::ostream& out,
                     std::ostream& err);

} // namespace rbarrier
