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


#include "rbarrier/decay_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rbarrier/error.hpp"
#include "rbarrier/philox.hpp"

namespace rbarrier {

namespace {

void require_scan(const ScanSettings& s)
{
    if (s.maturities.empty())
        throw InvalidArgument("scan.maturities: maturity grid must not be empty");
    for (std::size_t k = 0; k < s.maturities.size(); ++k) {
        const double T = s.maturities[k];
        if (!(T > 0.0 && T <= 1.0))
            throw InvalidArgument("scan.maturities: every maturity must lie in (0, 1]");
        if (k > 0 && !(T < s.maturities[k - 1]))
            throw InvalidArgument("scan.maturities: maturities must be strictly decreasing");
    }
    if (s.n_paths < 1)
        throw InvalidArgument("simulation.paths: need at least one path");
    if (s.n_steps < 2)
        throw InvalidArgument("simulation.steps: need at least two steps");
}

} // namespace

VolBounds scan_vol_bounds(const Model& model)
{
    if (auto b = model.vol_bounds())
        return *b;
    return truncation_bounds(model.params.sigma0, model.params.truncation_n.value_or(5.0), model.reading);
}

std::uint64_t row_seed(std::uint64_t seed, std::size_t row)
{
    return mix_seed(seed, row);
}

void apply_bounds(DecayReport& report, ConcentrationCenter center)
{
    for (auto& row : report.rows) {
        const double c = center == ConcentrationCenter::mean_max ? row.mean_max : report.log_spot;
        row.concentration = concentration_bound(report.log_barrier, c, row.maturity, report.vol_bounds, report.rho);
        row.cdf = cdf_bound(report.log_barrier, report.log_spot, row.maturity, report.cdf_params);
        row.combined = std::min(row.concentration, row.cdf);
    }
}

DecayReport decay_scan(const Model& model, const BarrierContract& contract, const ScanSettings& settings)
{
    require_scan(settings);
    contract.validate();
    Model m = model;
    m.log_spot = contract.log_spot();
    m.validate();

    DecayReport report;
    report.log_spot = contract.log_spot();
    report.log_barrier = contract.log_barrier();
    report.rho = model.params.rho;
    report.vol_bounds = scan_vol_bounds(model);
    report.cdf_params = settings.cdf_params;
    report.seed = settings.seed;
    report.n_paths = settings.n_paths;
    report.n_steps = settings.n_steps;

    for (std::size_t k = 0; k < settings.maturities.size(); ++k) {
        const TimeGrid grid = build_grid(settings.maturities[k], settings.n_steps);
        BarrierContract c = contract;
        c.maturity = grid.maturity;
        const PathBatch batch = simulate_batch(m, grid, settings.n_paths, row_seed(settings.seed, k), settings.workers);
        const PathStatistics stats = path_stats(batch);

        DecayRow row;
        row.maturity = grid.maturity;
        row.hit = hit_probability(batch, report.log_barrier);
        row.up_and_in = price_up_and_in(batch, c);
        row.european = price_european(batch, c.strike);
        row.mean_max = stats.mean_max;
        row.discrete_hits = static_cast<std::size_t>(std::count_if(
            stats.max_value.begin(), stats.max_value.end(), [&](double v) { return v >= report.log_barrier; }));
        report.rows.push_back(row);
    }
    apply_bounds(report, settings.center);
    return report;
}

std::vector<TailObservation> tail_observations(const Model& model, const BarrierContract& contract,
                                               const ScanSettings& settings)
{
    require_scan(settings);
    contract.validate();
    Model m = model;
    m.log_spot = contract.log_spot();
    std::vector<TailObservation> out;
    for (std::size_t k = 0; k < settings.maturities.size(); ++k) {
        const TimeGrid grid = build_grid(settings.maturities[k], settings.n_steps);
        const PathBatch batch = simulate_batch(m, grid, settings.n_paths, row_seed(settings.seed, k), settings.workers);
        out.push_back({grid.maturity, hit_probability(batch, contract.log_barrier()).value});
    }
    return out;
}

DecayReport synthetic_report(std::vector<double> maturities, std::vector<double> hit, std::vector<double> european,
                             std::vector<double> up_and_in, double log_spot, double log_barrier, const VolBounds& vol,
                             double rho, const DensityBoundParams& cdf_params)
{
    if (maturities.empty())
        throw InvalidArgument("scan.maturities: maturity grid must not be empty");
    if (hit.size() != maturities.size())
        throw InvalidArgument("scan.synthetic_hit: need one probability per maturity");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (european.empty())
        european.assign(maturities.size(), nan);
    if (up_and_in.empty())
        up_and_in.assign(maturities.size(), nan);
    if (european.size() != maturities.size() || up_and_in.size() != maturities.size())
        throw InvalidArgument("scan.synthetic_*: price lists must have one value per maturity");

    DecayReport report;
    report.log_spot = log_spot;
    report.log_barrier = log_barrier;
    report.rho = rho;
    report.vol_bounds = vol;
    report.cdf_params = cdf_params;
    for (std::size_t k = 0; k < maturities.size(); ++k) {
        if (k > 0 && !(maturities[k] < maturities[k - 1]))
            throw InvalidArgument("scan.maturities: maturities must be strictly decreasing");
        if (!(hit[k] >= 0.0 && hit[k] <= 1.0))
            throw InvalidArgument("scan.synthetic_hit: probabilities must lie in [0, 1]");
        DecayRow row;
        row.maturity = maturities[k];
        row.hit.value = hit[k];
        row.european.value = european[k];
        row.up_and_in.value = up_and_in[k];
        row.mean_max = log_spot;
        report.rows.push_back(row);
    }
    apply_bounds(report, ConcentrationCenter::mean_max);
    return report;
}

std::vector<std::size_t> usable_rows(const DecayReport& report)
{
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto& h = report.rows[k].hit;
        if (h.value > 0.0 && h.value >= 3.0 * h.std_error)
            rows.push_back(k);
    }
    return rows;
}

PolynomialRateFit fit_polynomial_rate(const DecayReport& report)
{
    PolynomialRateFit fit;
    fit.rows = usable_rows(report);
    for (std::size_t k = 0; k < report.rows.size(); ++k)
        if (std::find(fit.rows.begin(), fit.rows.end(), k) == fit.rows.end())
            fit.excluded.push_back(k);
    if (fit.rows.size() < 3)
        throw InsufficientData("fit_polynomial_rate: fewer than 3 usable maturities");

    for (std::size_t j = 0; j + 1 < fit.rows.size(); ++j) {
        const auto& a = report.rows[fit.rows[j]];
        const auto& b = report.rows[fit.rows[j + 1]];
        const double dlog_t = std::log(b.maturity) - std::log(a.maturity);
        fit.slopes.push_back((std::log(b.hit.value) - std::log(a.hit.value)) / dlog_t);
        const double ra = a.hit.std_error / a.hit.value;
        const double rb = b.hit.std_error / b.hit.value;
        fit.slope_std_errors.push_back(std::sqrt(ra * ra + rb * rb) / std::abs(dlog_t));
    }
    fit.super_polynomial = true;
    fit.resolved = true;
    for (std::size_t j = 0; j + 1 < fit.slopes.size(); ++j) {
        const double rise = fit.slopes[j + 1] - fit.slopes[j];
        const double noise = std::hypot(fit.slope_std_errors[j], fit.slope_std_errors[j + 1]);
        if (!(rise > 0.0))
            fit.super_polynomial = false;
        if (!(rise > 2.0 * noise))
            fit.resolved = false;
    }
    fit.resolved = fit.resolved && fit.super_polynomial;
    return fit;
}

GaussianRateFit fit_gaussian_rate(const DecayReport& report, double x, double b)
{
    const auto rows = usable_rows(report);
    if (rows.size() < 3)
        throw InsufficientData("fit_gaussian_rate: fewer than 3 usable maturities");
    const double n = static_cast<double>(rows.size());
    double mean_u = 0.0, mean_v = 0.0;
    for (auto k : rows) {
        mean_u += 1.0 / report.rows[k].maturity;
        mean_v += std::log(report.rows[k].hit.value);
    }
    mean_u /= n;
    mean_v /= n;
    double suu = 0.0, suv = 0.0, svv = 0.0;
    for (auto k : rows) {
        const double du = 1.0 / report.rows[k].maturity - mean_u;
        const double dv = std::log(report.rows[k].hit.value) - mean_v;
        suu += du * du;
        suv += du * dv;
        svv += dv * dv;
    }
    GaussianRateFit fit;
    fit.n_rows = rows.size();
    fit.slope = suv / suu;
    fit.intercept = mean_v - fit.slope * mean_u;
    double ss_res = 0.0;
    for (auto k : rows) {
        const double r = std::log(report.rows[k].hit.value) - (fit.intercept + fit.slope / report.rows[k].maturity);
        ss_res += r * r;
    }
    fit.r_squared = svv > 0.0 ? 1.0 - ss_res / svv : 1.0;
    fit.implied_c2 = -(b - x) * (b - x) / fit.slope;
    return fit;
}

DominanceCheck verify_dominance(const DecayReport& report, BoundColumn column)
{
    DominanceCheck check;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto& row = report.rows[k];
        const double bound = column == BoundColumn::concentration ? row.concentration
                             : column == BoundColumn::cdf         ? row.cdf
                                                                  : row.combined;
        const bool ok = row.hit.value <= bound + 2.0 * row.hit.std_error;
        check.row_pass.push_back(ok);
        if (!ok) {
            check.failing_rows.push_back(k);
            check.all_pass = false;
        }
    }
    return check;
}

} // namespace rbarrier
