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


#include "rbarrier/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace rbarrier {

namespace {

namespace pt = boost::property_tree;

const std::set<std::string> kKnownKeys = {
    "model.kind", "model.sigma0", "model.nu", "model.hurst", "model.rho", "model.truncation_n",
    "model.truncation_reading",
    "contract.S0", "contract.K", "contract.B", "contract.T",
    "simulation.paths", "simulation.steps", "simulation.seed", "simulation.workers",
    "scan.maturities", "scan.calibration_paths", "scan.synthetic_hit", "scan.synthetic_european",
    "scan.synthetic_barrier",
    "bounds.c1", "bounds.c2", "bounds.headroom", "bounds.center",
    "output.dir",
};

template <class T>
T read_value(const pt::ptree& tree, const std::string& key, T fallback)
{
    const auto node = tree.get_optional<std::string>(key);
    if (!node)
        return fallback;
    if constexpr (std::is_unsigned_v<T>) {
        if (node->find('-') != std::string::npos)
            throw ConfigError(key + ": must be non-negative, got '" + *node + "'");
    }
    std::istringstream in(*node);
    T value{};
    in >> value;
    if (in.fail() || !(in >> std::ws).eof())
        throw ConfigError(key + ": cannot parse '" + *node + "'");
    return value;
}

std::optional<double> read_optional(const pt::ptree& tree, const std::string& key)
{
    if (!tree.get_optional<std::string>(key))
        return std::nullopt;
    return read_value<double>(tree, key, 0.0);
}

RunConfig from_tree(const pt::ptree& tree)
{
    for (const auto& [section, body] : tree) {
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            if (!kKnownKeys.count(full))
                throw ConfigError(full + ": unknown configuration key");
        }
    }

    RunConfig c;
    c.model.kind = vol_model_kind_from_string(tree.get<std::string>("model.kind", to_string(c.model.kind)));
    c.model.params.sigma0 = read_value(tree, "model.sigma0", c.model.params.sigma0);
    c.model.params.nu = read_value(tree, "model.nu", c.model.params.nu);
    c.model.params.hurst = read_value(tree, "model.hurst", c.model.params.hurst);
    c.model.params.rho = read_value(tree, "model.rho", c.model.params.rho);
    c.model.params.truncation_n = read_optional(tree, "model.truncation_n");
    c.model.reading = truncation_reading_from_string(
        tree.get<std::string>("model.truncation_reading", to_string(c.model.reading)));

    c.contract.spot = read_value(tree, "contract.S0", c.contract.spot);
    c.contract.strike = read_value(tree, "contract.K", c.contract.strike);
    c.contract.barrier = read_value(tree, "contract.B", c.contract.barrier);
    c.contract.maturity = read_value(tree, "contract.T", c.contract.maturity);

    c.paths = read_value(tree, "simulation.paths", c.paths);
    c.steps = read_value(tree, "simulation.steps", c.steps);
    c.seed = read_value(tree, "simulation.seed", c.seed);
    c.workers = read_value(tree, "simulation.workers", c.workers);

    if (auto m = tree.get_optional<std::string>("scan.maturities"))
        c.maturities = parse_number_list(*m, "scan.maturities");
    c.calibration_paths = read_value(tree, "scan.calibration_paths", c.calibration_paths);
    if (auto s = tree.get_optional<std::string>("scan.synthetic_hit"))
        c.synthetic_hit = parse_number_list(*s, "scan.synthetic_hit");
    if (auto s = tree.get_optional<std::string>("scan.synthetic_european"))
        c.synthetic_european = parse_number_list(*s, "scan.synthetic_european");
    if (auto s = tree.get_optional<std::string>("scan.synthetic_barrier"))
        c.synthetic_barrier = parse_number_list(*s, "scan.synthetic_barrier");

    c.c1 = read_optional(tree, "bounds.c1");
    c.c2 = read_optional(tree, "bounds.c2");
    c.headroom = read_value(tree, "bounds.headroom", c.headroom);
    const std::string center = tree.get<std::string>("bounds.center", "mean_max");
    if (center == "mean_max")
        c.center = ConcentrationCenter::mean_max;
    else if (center == "spot")
        c.center = ConcentrationCenter::spot;
    else
        throw ConfigError("bounds.center: expected 'mean_max' or 'spot', got '" + center + "'");

    c.out_dir = tree.get<std::string>("output.dir", ".");
    return c;
}

} // namespace

std::vector<double> parse_number_list(const std::string& text, const std::string& field)
{
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::istringstream cell(item);
        double v = 0.0;
        cell >> v;
        if (cell.fail() || !(cell >> std::ws).eof())
            throw ConfigError(field + ": cannot parse list entry '" + item + "'");
        out.push_back(v);
    }
    return out;
}

RunConfig parse_config_text(const std::string& text)
{
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    try {
        return from_tree(tree);
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

RunConfig load_config_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config: cannot open '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

void validate_config(const RunConfig& c)
{
    auto wrap = [](auto&& fn) {
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const InvalidArgument& e) {
            throw ConfigError(e.what());
        }
    };
    wrap([&] { c.model.params.validate(); });
    wrap([&] { c.contract.validate(); });
    if (c.paths < 1)
        throw ConfigError("simulation.paths: need at least one path");
    if (c.steps < 2)
        throw ConfigError("simulation.steps: need at least two steps");
    if (c.workers < 1)
        throw ConfigError("simulation.workers: need at least one worker");
    if (c.maturities.empty())
        throw ConfigError("scan.maturities: maturity grid must not be empty");
    for (std::size_t k = 0; k < c.maturities.size(); ++k) {
        if (!(c.maturities[k] > 0.0 && c.maturities[k] <= 1.0))
            throw ConfigError("scan.maturities: every maturity must lie in (0, 1]");
        if (k > 0 && !(c.maturities[k] < c.maturities[k - 1]))
            throw ConfigError("scan.maturities: maturities must be strictly decreasing");
    }
    if (!c.synthetic_hit.empty() && c.synthetic_hit.size() != c.maturities.size())
        throw ConfigError("scan.synthetic_hit: need one probability per maturity");
    if (c.c1 && !(*c.c1 >= 0.0))
        throw ConfigError("bounds.c1: amplitude must be non-negative");
    if (c.c2 && !(*c.c2 > 0.0))
        throw ConfigError("bounds.c2: variance scale must be positive");
    if (!(c.headroom >= 1.0))
        throw ConfigError("bounds.headroom: must be at least 1");
}

nlohmann::json config_to_json(const RunConfig& c)
{
    using nlohmann::json;
    json j;
    j["model"] = {
        {"kind", to_string(c.model.kind)},
        {"sigma0", c.model.params.sigma0},
        {"nu", c.model.params.nu},
        {"hurst", c.model.params.hurst},
        {"rho", c.model.params.rho},
        {"truncation_n", c.model.params.truncation_n ? json(*c.model.params.truncation_n) : json(nullptr)},
        {"truncation_reading", to_string(c.model.reading)},
    };
    j["contract"] = {{"S0", c.contract.spot}, {"K", c.contract.strike}, {"B", c.contract.barrier},
                     {"T", c.contract.maturity}};
    j["simulation"] = {{"paths", c.paths}, {"steps", c.steps}, {"seed", c.seed}};
    j["scan"] = {{"maturities", c.maturities},
                 {"calibration_paths", c.calibration_paths},
                 {"synthetic_hit", c.synthetic_hit},
                 {"synthetic_european", c.synthetic_european},
                 {"synthetic_barrier", c.synthetic_barrier}};
    j["bounds"] = {{"c1", c.c1 ? json(*c.c1) : json(nullptr)},
                   {"c2", c.c2 ? json(*c.c2) : json(nullptr)},
                   {"headroom", c.headroom},
                   {"center", c.center == ConcentrationCenter::mean_max ? "mean_max" : "spot"}};
    return j;
}

RunConfig config_from_json(const nlohmann::json& j)
{
    try {
        RunConfig c;
        const auto& m = j.at("model");
        c.model.kind = vol_model_kind_from_string(m.at("kind").get<std::string>());
        c.model.params.sigma0 = m.at("sigma0").get<double>();
        c.model.params.nu = m.at("nu").get<double>();
        c.model.params.hurst = m.at("hurst").get<double>();
        c.model.params.rho = m.at("rho").get<double>();
        if (!m.at("truncation_n").is_null())
            c.model.params.truncation_n = m.at("truncation_n").get<double>();
        c.model.reading = truncation_reading_from_string(m.at("truncation_reading").get<std::string>());
        const auto& k = j.at("contract");
        c.contract.spot = k.at("S0").get<double>();
        c.contract.strike = k.at("K").get<double>();
        c.contract.barrier = k.at("B").get<double>();
        c.contract.maturity = k.at("T").get<double>();
        const auto& s = j.at("simulation");
        c.paths = s.at("paths").get<std::size_t>();
        c.steps = s.at("steps").get<int>();
        c.seed = s.at("seed").get<std::uint64_t>();
        const auto& sc = j.at("scan");
        c.maturities = sc.at("maturities").get<std::vector<double>>();
        c.calibration_paths = sc.at("calibration_paths").get<std::size_t>();
        c.synthetic_hit = sc.at("synthetic_hit").get<std::vector<double>>();
        c.synthetic_european = sc.at("synthetic_european").get<std::vector<double>>();
        c.synthetic_barrier = sc.at("synthetic_barrier").get<std::vector<double>>();
        const auto& b = j.at("bounds");
        if (!b.at("c1").is_null())
            c.c1 = b.at("c1").get<double>();
        if (!b.at("c2").is_null())
            c.c2 = b.at("c2").get<double>();
        c.headroom = b.at("headroom").get<double>();
        c.center = b.at("center").get<std::string>() == "spot" ? ConcentrationCenter::spot
                                                               : ConcentrationCenter::mean_max;
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("manifest: malformed configuration echo: ") + e.what());
    }
}

} // namespace rbarrier
