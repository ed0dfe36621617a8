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
#include <vector>

#include "rbarrier/bounds.hpp"
#include "rbarrier/pricing.hpp"

namespace rbarrier {

struct DecayRow {
    double maturity = 0.0;
    MCEstimate hit;
    MCEstimate up_and_in;
    MCEstimate european;
    std::size_t discrete_hits = 0;   // paths whose grid maximum reached b
    double mean_max = 0.0;           // batch mean of the discrete M_T
    double concentration = 1.0;
    double cdf = 1.0;
    double combined = 1.0;
};

/// Per-maturity table; rows ordered by strictly decreasing maturity.
struct DecayReport {
    std::vector<DecayRow> rows;
    double log_spot = 0.0;
    double log_barrier = 0.0;
    double rho = 0.0;
    VolBounds vol_bounds;
    DensityBoundParams cdf_params;
    std::uint64_t seed = 0;
    std::size_t n_paths = 0;
    int n_steps = 0;
};

enum class ConcentrationCenter { mean_max, spot };

struct ScanSettings {
    std::vector<double> maturities{0.5, 0.25, 0.1, 0.05, 0.025, 0.01};
    std::size_t n_paths = 200000;
    int n_steps = 256;
    std::uint64_t seed = 20250101;
    unsigned workers = 1;
    DensityBoundParams cdf_params;
    ConcentrationCenter center = ConcentrationCenter::mean_max;
};

/// Vol bounds used for the bound columns; the raw rough Bergomi model falls
/// back to the truncated model's bounds at params.truncation_n (default 5).
VolBounds scan_vol_bounds(const Model& model);

/// Seed of row k in a scan with master seed `seed`.
std::uint64_t row_seed(std::uint64_t seed, std::size_t row);

/// Simulate, price and bound one maturity per row, each on a fresh grid of
/// settings.n_steps steps with an independent seed.
DecayReport decay_scan(const Model& model, const BarrierContract& contract, const ScanSettings& settings);

/// Hit probabilities only, for calibrating the density bound on a batch that
/// is independent of the reported one.
std::vector<TailObservation> tail_observations(const Model& model, const BarrierContract& contract,
                                               const ScanSettings& settings);

/// Fills the bound columns of a report from its own estimates and constants.
void apply_bounds(DecayReport& report, ConcentrationCenter center);

/// Builds a report from externally supplied hit probabilities (and optional
/// prices); standard errors are zero and m_T is taken as x.
DecayReport synthetic_report(std::vector<double> maturities, std::vector<double> hit,
                             std::vector<double> european, std::vector<double> up_and_in,
                             double log_spot, double log_barrier, const VolBounds& vol, double rho,
                             const DensityBoundParams& cdf_params);

/// Rows with estimate > 0 and estimate >= 3 SE.
std::vector<std::size_t> usable_rows(const DecayReport& report);

struct PolynomialRateFit {
    std::vector<std::size_t> rows;          // usable rows, decreasing T
    std::vector<std::size_t> excluded;      // noise-dominated rows
    std::vector<double> slopes;             // d log P / d log T between consecutive usable rows
    std::vector<double> slope_std_errors;   // delta-method
    bool super_polynomial = false;          // slopes strictly increase as T decreases
    bool resolved = false;                  // ... and each increase exceeds 2 combined SE
};

PolynomialRateFit fit_polynomial_rate(const DecayReport& report);

struct GaussianRateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double implied_c2 = 0.0;   // -(b - x)^2 / slope
    std::size_t n_rows = 0;
};

/// Least squares of log P on 1/T over usable rows.
GaussianRateFit fit_gaussian_rate(const DecayReport& report, double x, double b);

enum class BoundColumn { concentration, cdf, combined };

struct DominanceCheck {
    std::vector<bool> row_pass;
    std::vector<std::size_t> failing_rows;
    bool all_pass = true;
};

/// Row passes iff estimate <= bound + 2 SE.
DominanceCheck verify_dominance(const DecayReport& report, BoundColumn column = BoundColumn::combined);

} // namespace rbarrier
