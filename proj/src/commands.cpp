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


#include "rbarrier/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rbarrier/bounds.hpp"
#include "rbarrier/error.hpp"
#include "rbarrier/path_simulator.hpp"
#include "rbarrier/philox.hpp"
#include "rbarrier/report_io.hpp"
#include "rbarrier/svg_chart.hpp"

#ifndef RBARRIER_VERSION
#define RBARRIER_VERSION "0.0.0"
#endif

namespace rbarrier {

namespace {

constexpr std::uint64_t kTrainingSalt = 0x747261696e696e67ULL;
constexpr std::size_t kEquivalencePaths = 4096;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Model bound_model(const RunConfig& c)
{
    Model m = c.model;
    m.log_spot = c.contract.log_spot();
    return m;
}

Model constant_companion(const RunConfig& c)
{
    Model m = bound_model(c);
    m.kind = VolModelKind::constant;
    return m;
}

bool has_bs_oracle(const Model& m)
{
    return m.kind == VolModelKind::constant || (m.kind == VolModelKind::rough_bergomi && m.params.nu == 0.0);
}

nlohmann::json estimate_json(const MCEstimate& e)
{
    return {{"value", e.value}, {"std_error", e.std_error}};
}

nlohmann::json base_manifest(const RunConfig& c, const std::string& command, const std::string& digest)
{
    nlohmann::json j;
    j["tool"] = "rbarrier";
    j["version"] = RBARRIER_VERSION;
    j["command"] = command;
    j["manifest_digest"] = digest;
    j["seed"] = c.seed;
    j["config"] = config_to_json(c);
    j["workers"] = c.workers;
    return j;
}

std::string check_line(const CheckResult& r)
{
    return (r.pass ? "PASS " : "FAIL ") + r.suite + "/" + r.name + (r.detail.empty() ? "" : ": " + r.detail);
}

std::string fmt(double v)
{
    std::ostringstream o;
    o.precision(6);
    o << v;
    return o.str();
}

CheckResult within_se(const std::string& suite, const std::string& name, const MCEstimate& e, double oracle,
                      double k = 3.0)
{
    const double dev = std::abs(e.value - oracle);
    const bool pass = dev <= k * e.std_error;
    return {suite, name, pass,
            "estimate " + fmt(e.value) + " vs oracle " + fmt(oracle) + ", |diff| = " + fmt(dev) + " (" +
                fmt(e.std_error > 0 ? dev / e.std_error : 0.0) + " SE)"};
}

std::string column_name(BoundColumn c)
{
    switch (c) {
    case BoundColumn::concentration: return "concentration_bound";
    case BoundColumn::cdf: return "cdf_bound";
    case BoundColumn::combined: return "combined_bound";
    }
    return "bound";
}

double column_value(const DecayRow& r, BoundColumn c)
{
    switch (c) {
    case BoundColumn::concentration: return r.concentration;
    case BoundColumn::cdf: return r.cdf;
    case BoundColumn::combined: return r.combined;
    }
    return 1.0;
}

std::string charts_comment(const std::string& digest)
{
    return "<!-- rbarrier manifest_digest=" + digest + " -->\n";
}

std::string with_digest(const std::string& svg, const std::string& digest)
{
    return charts_comment(digest) + svg;
}

std::string prices_chart(const DecayReport& r)
{
    ChartSpec spec;
    spec.title = "Call prices against maturity";
    spec.x_label = "maturity T (years, log scale)";
    spec.y_label = "price";
    spec.log_x = true;
    ChartSeries eu{"European", {}, {}, "#1f77b4"};
    ChartSeries ui{"up-and-in", {}, {}, "#d62728"};
    for (const auto& row : r.rows) {
        eu.x.push_back(row.maturity);
        eu.y.push_back(row.european.value);
        ui.x.push_back(row.maturity);
        ui.y.push_back(row.up_and_in.value);
    }
    spec.series = {eu, ui};
    return render_svg(spec);
}

std::string rate_chart(const DecayReport& r, const std::optional<GaussianRateFit>& fit)
{
    ChartSpec spec;
    spec.title = "Barrier hit probability against 1/T";
    spec.x_label = "1/T";
    spec.y_label = "P(hit) (log scale)";
    spec.log_y = true;
    ChartSeries hit{"P(hit)", {}, {}, "#2ca02c"};
    for (const auto& row : r.rows) {
        hit.x.push_back(1.0 / row.maturity);
        hit.y.push_back(row.hit.value);
    }
    spec.series.push_back(hit);
    if (fit && !hit.x.empty()) {
        ChartSeries line{"fit exp(a + s/T)", {}, {}, "#7f7f7f", false, true};
        const auto [lo, hi] = std::minmax_element(hit.x.begin(), hit.x.end());
        constexpr int kSegments = 32;
        for (int i = 0; i <= kSegments; ++i) {
            const double x = *lo + (*hi - *lo) * i / kSegments;
            line.x.push_back(x);
            line.y.push_back(std::exp(fit->intercept + fit->slope * x));
        }
        spec.series.push_back(line);
    }
    return render_svg(spec);
}

nlohmann::json polynomial_json(const PolynomialRateFit& f)
{
    return {{"rows", f.rows},
            {"excluded", f.excluded},
            {"slopes", f.slopes},
            {"slope_std_errors", f.slope_std_errors},
            {"super_polynomial", f.super_polynomial},
            {"resolved", f.resolved}};
}

nlohmann::json gaussian_json(const GaussianRateFit& f)
{
    return {{"slope", f.slope},
            {"intercept", f.intercept},
            {"r_squared", f.r_squared},
            {"implied_c2", f.implied_c2},
            {"n_rows", f.n_rows}};
}

} // namespace

RunConfig resolve_config(const CommandOptions& o)
{
    RunConfig c;
    if (o.manifest) {
        const nlohmann::json j = nlohmann::json::parse(read_text_file(*o.manifest), nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("config"))
            throw ConfigError("manifest: " + o.manifest->string() + " is not a run manifest");
        c = config_from_json(j.at("config"));
    } else if (o.config) {
        c = load_config_file(*o.config);
    }
    if (o.seed)
        c.seed = *o.seed;
    if (o.paths)
        c.paths = *o.paths;
    if (o.steps)
        c.steps = *o.steps;
    if (o.workers)
        c.workers = *o.workers;
    if (o.out)
        c.out_dir = *o.out;
    validate_config(c);
    return c;
}

std::string config_digest(const RunConfig& config) { return fnv1a_hex(config_to_json(config).dump()); }

PriceResult run_price(const RunConfig& c)
{
    validate_config(c);
    const auto t0 = Clock::now();
    PriceResult r;
    r.digest = config_digest(c);
    const Model m = bound_model(c);
    const TimeGrid grid = build_grid(c.contract.maturity, c.steps);
    const PathBatch batch = simulate_batch(m, grid, c.paths, c.seed, c.workers);
    r.european = price_european(batch, c.contract.strike);
    r.up_and_in = price_up_and_in(batch, c.contract);
    r.hit = hit_probability(batch, c.contract.log_barrier());
    if (has_bs_oracle(m))
        r.oracle = bs_oracles(c.contract, m.params.sigma0);

    std::ostringstream csv;
    csv << "# rbarrier price table; manifest_digest=" << r.digest
        << "; units: maturity in years, prices in currency of S0, probabilities in [0,1]\n";
    csv << "maturity,european,european_se,up_and_in,up_and_in_se,hit_prob,hit_se,n_paths,n_steps,seed,"
           "oracle_european,oracle_up_and_in,oracle_hit_prob\n";
    const double nan = std::nan("");
    csv << format_double(grid.maturity) << ',' << format_double(r.european.value) << ','
        << format_double(r.european.std_error) << ',' << format_double(r.up_and_in.value) << ','
        << format_double(r.up_and_in.std_error) << ',' << format_double(r.hit.value) << ','
        << format_double(r.hit.std_error) << ',' << c.paths << ',' << c.steps << ',' << c.seed << ','
        << format_double(r.oracle ? r.oracle->european : nan) << ','
        << format_double(r.oracle ? r.oracle->up_and_in : nan) << ','
        << format_double(r.oracle ? r.oracle->hit_probability : nan) << '\n';
    r.csv = csv.str();

    r.manifest = base_manifest(c, "price", r.digest);
    r.manifest["results"] = {{"european", estimate_json(r.european)},
                             {"up_and_in", estimate_json(r.up_and_in)},
                             {"hit_probability", estimate_json(r.hit)}};
    if (r.oracle)
        r.manifest["oracle"] = {{"european", r.oracle->european},
                                {"up_and_in", r.oracle->up_and_in},
                                {"hit_probability", r.oracle->hit_probability}};
    r.manifest["outputs"] = {{"price.csv", {{"row_digests", csv_row_digests(r.csv)}}}};
    r.manifest["wall_clock_seconds"] = seconds_since(t0);
    return r;
}

ScanResult run_scan(const RunConfig& c)
{
    validate_config(c);
    const auto t0 = Clock::now();
    ScanResult r;
    r.digest = config_digest(c);
    const Model m = bound_model(c);
    const VolBounds vol = scan_vol_bounds(m);
    const double rho = m.params.rho;
    const double b = c.contract.log_barrier();
    const double x = c.contract.log_spot();

    DensityBoundParams params;
    params.c2 = c.c2 ? *c.c2 : default_variance_scale(vol, rho);
    nlohmann::json calibration;
    const bool synthetic = !c.synthetic_hit.empty();

    if (c.c1) {
        params.c1 = *c.c1;
        r.calibration_source = "configured";
    } else if (synthetic) {
        std::vector<TailObservation> obs;
        for (std::size_t k = 0; k < c.maturities.size(); ++k)
            obs.push_back({c.maturities[k], c.synthetic_hit[k]});
        params = calibrate_cdf_bound(obs, b, x, params.c2, c.headroom);
        r.calibration_source = "synthetic";
    } else {
        ScanSettings train;
        train.maturities = c.maturities;
        train.n_paths = c.calibration_paths > 0 ? c.calibration_paths : c.paths;
        train.n_steps = c.steps;
        train.seed = mix_seed(c.seed, kTrainingSalt);
        train.workers = c.workers;
        const auto obs = tail_observations(m, c.contract, train);
        params = calibrate_cdf_bound(obs, b, x, params.c2, c.headroom);
        r.calibration_source = "calibrated";
        calibration["training_seed"] = train.seed;
        calibration["training_paths"] = train.n_paths;
    }
    calibration["c1"] = params.c1;
    calibration["c2"] = params.c2;
    calibration["source"] = r.calibration_source;
    calibration["headroom"] = c.headroom;
    calibration["c_grr"] = nullptr;

    if (synthetic) {
        r.report = synthetic_report(c.maturities, c.synthetic_hit, c.synthetic_european, c.synthetic_barrier, x, b,
                                    vol, rho, params);
    } else {
        ScanSettings s;
        s.maturities = c.maturities;
        s.n_paths = c.paths;
        s.n_steps = c.steps;
        s.seed = c.seed;
        s.workers = c.workers;
        s.cdf_params = params;
        s.center = c.center;
        r.report = decay_scan(m, c.contract, s);
    }

    try {
        r.polynomial = fit_polynomial_rate(r.report);
    } catch (const InsufficientData&) {
    }
    try {
        r.gaussian = fit_gaussian_rate(r.report, x, b);
    } catch (const InsufficientData&) {
    }

    r.csv = report_to_csv(r.report, r.digest);
    r.prices_svg = with_digest(prices_chart(r.report), r.digest);
    r.rate_svg = with_digest(rate_chart(r.report, r.gaussian), r.digest);

    r.manifest = base_manifest(c, "scan", r.digest);
    r.manifest["calibration"] = calibration;
    r.manifest["vol_bounds"] = {{"alpha", vol.alpha}, {"beta", vol.beta}};
    r.manifest["fits"] = {{"polynomial", r.polynomial ? polynomial_json(*r.polynomial) : nlohmann::json(nullptr)},
                          {"gaussian", r.gaussian ? gaussian_json(*r.gaussian) : nlohmann::json(nullptr)}};
    r.manifest["outputs"] = {{"report.csv", {{"row_digests", csv_row_digests(r.csv)}}},
                             {"prices.svg", {{"digest", fnv1a_hex(r.prices_svg)}}},
                             {"rate.svg", {{"digest", fnv1a_hex(r.rate_svg)}}}};
    r.manifest["wall_clock_seconds"] = seconds_since(t0);
    return r;
}

ValidateResult run_validate(const RunConfig& c)
{
    validate_config(c);
    ValidateResult v;
    const TimeGrid grid = build_grid(c.contract.maturity, c.steps);

    // Oracle equivalence on the constant-vol degeneration.
    {
        const Model bs = constant_companion(c);
        const BlackScholesValues o = bs_oracles(c.contract, bs.params.sigma0);
        const PathBatch batch = simulate_batch(bs, grid, c.paths, c.seed, c.workers);
        v.checks.push_back(within_se("oracle", "european", price_european(batch, c.contract.strike), o.european));
        v.checks.push_back(within_se("oracle", "up_and_in", price_up_and_in(batch, c.contract), o.up_and_in));
        v.checks.push_back(
            within_se("oracle", "hit_probability", hit_probability(batch, c.contract.log_barrier()), o.hit_probability));

        Model rb = bs;
        rb.kind = VolModelKind::rough_bergomi;
        rb.params.nu = 0.0;
        const std::size_t n = std::min(c.paths, kEquivalencePaths);
        const PathBatch a = simulate_batch(bs, grid, n, c.seed, c.workers);
        const PathBatch z = simulate_batch(rb, grid, n, c.seed, c.workers);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.X.size(); ++i)
            worst = std::max(worst, std::abs(a.X[i] - z.X[i]));
        v.checks.push_back({"oracle", "nu_zero_equivalence", worst <= 1e-12,
                            "max |X_const - X_rbergomi(nu=0)| = " + fmt(worst) + " over " + std::to_string(n) +
                                " paths"});
    }

    // Ordering on the configured model.
    {
        const Model m = bound_model(c);
        const PathBatch batch = simulate_batch(m, grid, c.paths, c.seed, c.workers);
        const auto eu = european_payoffs(batch, c.contract.strike);
        const auto ui = up_and_in_payoffs(batch, c.contract);
        std::size_t bad = 0;
        for (std::size_t p = 0; p < eu.size(); ++p)
            if (ui[p] > eu[p])
                ++bad;
        v.checks.push_back({"ordering", "barrier_below_european", bad == 0,
                            std::to_string(bad) + " of " + std::to_string(eu.size()) + " paths violate"});
        const double b = c.contract.log_barrier();
        const MCEstimate lo = hit_probability(batch, b);
        const MCEstimate hi = hit_probability(batch, b + 0.05);
        v.checks.push_back({"ordering", "hit_monotone_in_barrier", hi.value <= lo.value,
                            "P(b) = " + fmt(lo.value) + ", P(b + 0.05) = " + fmt(hi.value)});
    }

    // Dominance on the scan.
    {
        const ScanResult s = run_scan(c);
        const auto& rows = s.report.rows;
        std::size_t inversions = 0;
        std::string where;
        for (std::size_t k = 1; k < rows.size(); ++k) {
            const double tol = 2.0 * std::hypot(rows[k].hit.std_error, rows[k - 1].hit.std_error);
            if (rows[k].hit.value > rows[k - 1].hit.value + tol) {
                ++inversions;
                where += " T=" + fmt(rows[k].maturity);
            }
        }
        v.checks.push_back({"ordering", "hit_monotone_in_maturity", inversions == 0,
                            inversions == 0 ? "hit probability non-increasing as T decreases"
                                            : "increase beyond 2 SE at" + where});
        for (BoundColumn col : {BoundColumn::concentration, BoundColumn::cdf, BoundColumn::combined}) {
            const DominanceCheck d = verify_dominance(s.report, col);
            std::string detail;
            if (d.all_pass) {
                detail = "all " + std::to_string(rows.size()) + " rows dominated";
            } else {
                for (std::size_t k : d.failing_rows) {
                    const auto& row = rows[k];
                    detail += (detail.empty() ? "" : "; ") + std::string("row ") + std::to_string(k) +
                              " (T=" + fmt(row.maturity) + "): P = " + fmt(row.hit.value) + " > bound " +
                              fmt(column_value(row, col)) + " + 2 SE";
                }
            }
            v.checks.push_back({"dominance", column_name(col), d.all_pass, detail});
        }
        v.checks.push_back({"dominance", "constants", true,
                            "c1 = " + fmt(s.report.cdf_params.c1) + ", c2 = " + fmt(s.report.cdf_params.c2) + " (" +
                                s.calibration_source + ")"});
    }

    std::ostringstream text;
    for (const auto& r : v.checks) {
        v.all_pass = v.all_pass && r.pass;
        text << check_line(r) << '\n';
    }
    text << (v.all_pass ? "validate: all checks passed\n" : "validate: FAILED\n");
    v.text = text.str();
    return v;
}

ExitCode cmd_price(const RunConfig& c, std::ostream& log)
{
    const PriceResult r = run_price(c);
    std::filesystem::create_directories(c.out_dir);
    write_text_file(c.out_dir / "price.csv", r.csv);
    write_text_file(c.out_dir / "manifest.json", r.manifest.dump(2) + "\n");
    log << "european  " << format_double(r.european.value) << " (se " << format_double(r.european.std_error) << ")\n"
        << "up_and_in " << format_double(r.up_and_in.value) << " (se " << format_double(r.up_and_in.std_error)
        << ")\n"
        << "hit_prob  " << format_double(r.hit.value) << " (se " << format_double(r.hit.std_error) << ")\n";
    return ExitCode::success;
}

ExitCode cmd_scan(const RunConfig& c, std::ostream& log)
{
    const ScanResult r = run_scan(c);
    std::filesystem::create_directories(c.out_dir);
    write_text_file(c.out_dir / "report.csv", r.csv);
    write_text_file(c.out_dir / "prices.svg", r.prices_svg);
    write_text_file(c.out_dir / "rate.svg", r.rate_svg);
    write_text_file(c.out_dir / "manifest.json", r.manifest.dump(2) + "\n");
    log << "scan: " << r.report.rows.size() << " rows, c1 = " << format_double(r.report.cdf_params.c1)
        << ", c2 = " << format_double(r.report.cdf_params.c2) << " (" << r.calibration_source << ")\n";
    if (r.gaussian)
        log << "log P vs 1/T: slope " << format_double(r.gaussian->slope) << ", R^2 "
            << format_double(r.gaussian->r_squared) << '\n';
    log << "wrote " << (c.out_dir / "report.csv").string() << '\n';
    return ExitCode::success;
}

ExitCode cmd_validate(const RunConfig& c, std::ostream& log)
{
    const ValidateResult v = run_validate(c);
    std::filesystem::create_directories(c.out_dir);
    write_text_file(c.out_dir / "validation.txt", v.text);
    log << v.text;
    return v.all_pass ? ExitCode::success : ExitCode::acceptance_failure;
}

ExitCode run_command(const std::string& name, const CommandOptions& options, std::ostream& out, std::ostream& err)
{
    try {
        const RunConfig c = resolve_config(options);
        if (name == "price")
            return cmd_price(c, out);
        if (name == "scan")
            return cmd_scan(c, out);
        if (name == "validate")
            return cmd_validate(c, out);
        err << "error: unknown command '" << name << "'\n";
        return ExitCode::validation_error;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::validation_error;
    } catch (const nlohmann::json::exception& e) {
        err << "error: manifest: " << e.what() << '\n';
        return ExitCode::validation_error;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return ExitCode::validation_error;
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return ExitCode::numerical_failure;
    } catch (const std::exception& e) {
        err << "failure: " << e.what() << '\n';
        return ExitCode::numerical_failure;
    }
}

} // namespace rbarrier
