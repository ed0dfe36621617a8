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


#include <doctest.h>

#include <cmath>
#include <vector>

#include "rbarrier/decay_analysis.hpp"
#include "rbarrier/error.hpp"

using namespace rbarrier;

namespace {

const std::vector<double> kGrid{0.5, 0.25, 0.1, 0.05, 0.025, 0.01};

DecayReport synthetic(const std::vector<double>& t, double (*f)(double))
{
    std::vector<double> hit;
    for (double v : t)
        hit.push_back(f(v));
    return synthetic_report(t, hit, {}, {}, 0.0, 0.1, VolBounds{0.2, 0.2}, 0.0, DensityBoundParams{1.0, 0.04});
}

} // namespace

TEST_CASE("power law has constant local slopes")
{
    const DecayReport r = synthetic(kGrid, [](double t) { return t * t; });
    const PolynomialRateFit f = fit_polynomial_rate(r);
    REQUIRE(f.slopes.size() == kGrid.size() - 1);
    for (double s : f.slopes)
        CHECK(std::abs(s - 2.0) < 1e-12);
    CHECK_FALSE(f.super_polynomial);
}

TEST_CASE("Gaussian-type decay has diverging local slopes")
{
    const DecayReport r = synthetic(kGrid, [](double t) { return std::exp(-1.0 / t); });
    const PolynomialRateFit f = fit_polynomial_rate(r);
    CHECK(f.super_polynomial);
    CHECK(f.resolved);
    // Slope between T1 > T2 is (1/T2 - 1/T1) / log(T1/T2).
    CHECK(f.slopes[0] == doctest::Approx((4.0 - 2.0) / std::log(2.0)).epsilon(1e-12));
    for (std::size_t k = 1; k < f.slopes.size(); ++k)
        CHECK(f.slopes[k] > f.slopes[k - 1]);
}

TEST_CASE("log P against 1/T regression")
{
    const DecayReport r = synthetic(kGrid, [](double t) { return std::exp(-0.02 / t); });
    const GaussianRateFit g = fit_gaussian_rate(r, 0.0, 0.1);
    CHECK(g.slope == doctest::Approx(-0.02).epsilon(1e-10));
    CHECK(g.intercept == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(g.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g.implied_c2 == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(g.n_rows == kGrid.size());
}

TEST_CASE("constant vol: fitted Gaussian rate is at most 2 sigma^2 * 1.1")
{
    // Closed-form tail probabilities on the default grid.
    const double sigma = 0.2, gap = std::log(1.1);
    std::vector<double> hit;
    for (double t : kGrid)
        hit.push_back(drifted_bm_sup_tail(gap, -0.5 * sigma * sigma, sigma, t));
    const DecayReport r = synthetic_report(kGrid, hit, {}, {}, 0.0, gap, VolBounds{sigma, sigma}, 0.0,
                                           DensityBoundParams{1.0, 0.04});
    const GaussianRateFit g = fit_gaussian_rate(r, 0.0, gap);
    CHECK(g.slope < 0.0);
    CHECK(g.implied_c2 <= 2.0 * sigma * sigma * 1.1);
    CHECK(g.r_squared > 0.95);
}

TEST_CASE("noise-dominated rows are excluded")
{
    DecayReport r = synthetic(kGrid, [](double t) { return std::exp(-0.05 / t); });
    r.rows[4].hit.std_error = r.rows[4].hit.value;   // estimate below 3 SE
    r.rows[5].hit.value = 0.0;
    const auto rows = usable_rows(r);
    CHECK(rows == std::vector<std::size_t>{0, 1, 2, 3});
    const PolynomialRateFit f = fit_polynomial_rate(r);
    CHECK(f.excluded == std::vector<std::size_t>{4, 5});
    CHECK(f.slopes.size() == 3);
    r.rows[2].hit.value = 0.0;
    r.rows[3].hit.value = 0.0;
    CHECK_THROWS_AS(fit_polynomial_rate(r), InsufficientData);
}

TEST_CASE("monotone slopes within noise are not resolved")
{
    DecayReport r = synthetic(kGrid, [](double t) { return std::exp(-0.001 / t); });
    for (auto& row : r.rows)
        row.hit.std_error = 0.05 * row.hit.value;
    const PolynomialRateFit f = fit_polynomial_rate(r);
    CHECK(f.super_polynomial);
    CHECK_FALSE(f.resolved);
}

TEST_CASE("dominance rule")
{
    DecayReport r = synthetic(kGrid, [](double t) { return 0.3 * t; });
    for (auto& row : r.rows) {
        row.concentration = 1.0;
        row.cdf = 1.0;
        row.combined = 1.0;
    }
    CHECK(verify_dominance(r).all_pass);

    r.rows[2].combined = 0.0;
    r.rows[2].hit = {0.0, 0.0, 0, 0};
    CHECK(verify_dominance(r).all_pass);

    r.rows[3].combined = 0.01;
    r.rows[3].hit.value = 0.02;
    r.rows[3].hit.std_error = 0.004;
    DominanceCheck d = verify_dominance(r);
    CHECK_FALSE(d.all_pass);
    CHECK(d.failing_rows == std::vector<std::size_t>{3});
    CHECK_FALSE(d.row_pass[3]);
    r.rows[3].hit.std_error = 0.005;
    CHECK(verify_dominance(r).all_pass);
    CHECK(verify_dominance(r, BoundColumn::cdf).all_pass);
}

TEST_CASE("synthetic reports carry bound columns and reject bad input")
{
    const DecayReport r = synthetic(kGrid, [](double t) { return t; });
    for (const auto& row : r.rows) {
        CHECK(row.cdf == cdf_bound(0.1, 0.0, row.maturity, r.cdf_params));
        CHECK(row.combined == std::min(row.cdf, row.concentration));
        CHECK(std::isnan(row.european.value));
    }
    CHECK_THROWS_AS(synthetic_report({}, {}, {}, {}, 0.0, 0.1, {0.2, 0.2}, 0.0, {}), InvalidArgument);
    CHECK_THROWS_AS(synthetic_report({0.1, 0.5}, {0.1, 0.2}, {}, {}, 0.0, 0.1, {0.2, 0.2}, 0.0, {}),
                    InvalidArgument);
}

TEST_CASE("Monte Carlo scan: prices, ordering and short-maturity limits")
{
    Model m;
    BarrierContract c;
    ScanSettings s;
    s.maturities = {0.5, 0.1, 0.01, 0.001};
    s.n_paths = 20000;
    s.n_steps = 64;
    s.workers = 2;
    const DecayReport r = decay_scan(m, c, s);
    REQUIRE(r.rows.size() == 4);
    for (const auto& row : r.rows) {
        CHECK(row.up_and_in.value <= row.european.value);
        CHECK(row.hit.value >= 0.0);
        CHECK(row.mean_max >= r.log_spot);
    }
    CHECK(std::abs(r.rows[3].european.value - 0.5) < 0.02);
    CHECK(r.rows[3].up_and_in.value < 1e-3);
    for (std::size_t k = 1; k < r.rows.size(); ++k)
        CHECK(r.rows[k].hit.value <= r.rows[k - 1].hit.value);

    // At the money both prices vanish; out of the money the barrier price is below the European one.
    c.strike = 10.0;
    const DecayReport atm = decay_scan(m, c, s);
    // Leading order of the at-the-money call: S0 sigma0 sqrt(T / (2 pi)).
    CHECK(atm.rows[3].european.value < 0.03);
    for (std::size_t k = 1; k < atm.rows.size(); ++k) {
        CHECK(atm.rows[k].european.value < atm.rows[k - 1].european.value);
        CHECK(atm.rows[k].up_and_in.value <= atm.rows[k].european.value);
    }
    CHECK(atm.rows[3].up_and_in.value < 1e-3);
    c.strike = 11.0;
    const DecayReport otm = decay_scan(m, c, s);
    for (const auto& row : otm.rows)
        CHECK(row.up_and_in.value <= row.european.value);
    CHECK(otm.rows[3].european.value < 1e-3);

    ScanSettings bad = s;
    bad.maturities = {};
    CHECK_THROWS_AS(decay_scan(m, c, bad), InvalidArgument);
    bad.maturities = {0.1, 0.5};
    CHECK_THROWS_AS(decay_scan(m, c, bad), InvalidArgument);
}

TEST_CASE("row seeds are distinct and scans are reproducible")
{
    CHECK(row_seed(1, 0) != row_seed(1, 1));
    Model m;
    BarrierContract c;
    ScanSettings s;
    s.maturities = {0.2, 0.05};
    s.n_paths = 3000;
    s.n_steps = 32;
    const DecayReport a = decay_scan(m, c, s);
    s.workers = 3;
    const DecayReport b = decay_scan(m, c, s);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].hit.value == b.rows[k].hit.value);
        CHECK(a.rows[k].european.value == b.rows[k].european.value);
    }
    const VolBounds vb = scan_vol_bounds(m);
    CHECK(vb.beta == doctest::Approx(0.2 * std::exp(5.0)));
}
