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
#include <string>
#include <vector>

#include <json.hpp>

#include "rbarrier/decay_analysis.hpp"
#include "rbarrier/error.hpp"
#include "rbarrier/pricing.hpp"
#include "rbarrier/vol_models.hpp"

namespace rbarrier {

/// Configuration problem; the message starts with "section.key:".
class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

struct RunConfig {
    Model model;
    BarrierContract contract;

    std::size_t paths = 200000;
    int steps = 256;
    std::uint64_t seed = 20250101;
    unsigned workers = 1;

    std::vector<double> maturities{0.5, 0.25, 0.1, 0.05, 0.025, 0.01};
    std::size_t calibration_paths = 0;   // 0: same as paths
    std::vector<double> synthetic_hit;   // non-empty switches scan to injection mode
    std::vector<double> synthetic_european;
    std::vector<double> synthetic_barrier;

    std::optional<double> c1;            // overrides calibration
    std::optional<double> c2;            // default beta^2 (1 - rho^2)
    double headroom = 1.2;
    ConcentrationCenter center = ConcentrationCenter::mean_max;

    std::filesystem::path out_dir = ".";
};

/// Key/value file with [sections]; unknown keys are rejected.
RunConfig load_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

/// Field-level validation; throws ConfigError.
void validate_config(const RunConfig& config);

/// Reproducible part of the configuration (no worker count, no output dir).
nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

std::vector<double> parse_number_list(const std::string& text, const std::string& field);

} // namespace rbarrier
