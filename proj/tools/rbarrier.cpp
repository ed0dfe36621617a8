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


#include <iostream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include "rbarrier/commands.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Monte Carlo pricing and short-maturity analysis of up-and-in barrier calls "
                 "under rough Bergomi volatility"};
    app.set_version_flag("--version", std::string(RBARRIER_VERSION));
    app.require_subcommand(1);

    rbarrier::CommandOptions opts;
    std::string config, manifest, out;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    int steps = 0;
    unsigned workers = 0;

    const std::pair<const char*, const char*> commands[] = {
        {"price", "price the contract at the configured maturity"},
        {"scan", "maturity scan with bounds, decay fits and charts"},
        {"validate", "oracle, ordering and dominance checks"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        auto* cfg = sub->add_option("--config", config, "configuration file");
        sub->add_option("--manifest", manifest, "rerun from a manifest.json")->excludes(cfg);
        sub->add_option("--seed", seed, "master seed");
        sub->add_option("--paths", paths, "Monte Carlo paths per batch")->check(CLI::PositiveNumber);
        sub->add_option("--steps", steps, "time steps per path")->check(CLI::Range(2, 1 << 20));
        sub->add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));
        sub->add_option("--out", out, "output directory");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(rbarrier::ExitCode::validation_error);
    }

    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--config"))
        opts.config = config;
    if (sub->count("--manifest"))
        opts.manifest = manifest;
    if (sub->count("--seed"))
        opts.seed = seed;
    if (sub->count("--paths"))
        opts.paths = paths;
    if (sub->count("--steps"))
        opts.steps = steps;
    if (sub->count("--workers"))
        opts.workers = workers;
    if (sub->count("--out"))
        opts.out = out;
    return static_cast<int>(rbarrier::run_command(sub->get_name(), opts, std::cout, std::cerr));
}
