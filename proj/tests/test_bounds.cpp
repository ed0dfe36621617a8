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
#include <limits>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "rbarrier/bounds.hpp"
#include "rbarrier/error.hpp"
#include "rbarrier/philox.hpp"
#include "rbarrier/path_simulator.hpp"
#include "rbarrier/pricing.hpp"

using namespace rbarrier;

TEST_CASE("Y functional on simple paths")
{
    GrrParams g;
    const std::vector<double> flat(257, 0.3);
    CHECK(y_functional(flat, 0.01, g) == 0.0);

    // X_t = t on [0,1], p0 = 7, gamma0 = 5: int int |t - s|^9 = 2 / (10 * 11).
    GrrParams lin{7, 5.0, 1.0};
    for (int n : {128, 512}) {
        std::vector<double> x(n + 1);
        for (int i = 0; i <= n; ++i)
            x[i] = static_cast<double>(i) / n;
        const double y = y_functional(x, 1.0 / n, lin);
        CAPTURE(n);
        CHECK(std::abs(y * 55.0 - 1.0) < 0.01);
    }
    CHECK_THROWS_AS(y_functional(flat, 0.0, g), InvalidArgument);
    CHECK_THROWS_AS(y_functional(flat, 0.01, GrrParams{7, 16.0, 1.0}), InvalidArgument);
}

TEST_CASE("Y functional is monotone in the horizon and stable under refinement")
{
    Model m;
    m.log_spot = std::log(10.0);
    GrrParams g;
    const PathBatch b = simulate_batch(m, build_grid(0.25, 64), 1000, 19);
    for (std::size_t p = 0; p < b.n_paths; ++p) {
        const auto x = b.x_path(p);
        REQUIRE(y_functional(x, b.grid.dt(), g, 32) <= y_functional(x, b.grid.dt(), g));
    }
    // Piecewise-linear path sampled at two resolutions.
    const std::vector<double> knots{0.0, 0.05, -0.02, 0.08, 0.03};
    auto sample = [&](int n) {
        std::vector<double> x(n + 1);
        for (int i = 0; i <= n; ++i) {
            const double u = 4.0 * i / n;
            const int k = std::min(3, static_cast<int>(u));
            x[i] = knots[k] + (u - k) * (knots[k + 1] - knots[k]);
        }
        return x;
    };
    const double y256 = y_functional(sample(256), 0.25 / 256, g);
    const double y512 = y_functional(sample(512), 0.25 / 512, g);
    CHECK(std::abs(y256 / y512 - 1.0) < 0.02);
}

TEST_CASE("GRR radius scaling")
{
    GrrParams g;
    const double r1 = grr_radius(0.2, 0.25, g, 0.0);
    CHECK(grr_radius(0.4, 0.25, g, 0.0) / r1 == doctest::Approx(std::pow(2.0, 14)).epsilon(1e-12));
    CHECK(grr_radius(0.2, 1e-6, g, 0.0) == doctest::Approx(r1 * std::pow(0.25e6, 0.25)));
    CHECK(grr_radius(0.2, 1e-12, g, 0.0) > grr_radius(0.2, 1e-6, g, 0.0));
    CHECK(grr_radius(1.2, 0.25, g, 1.0) == doctest::Approx(r1).epsilon(1e-12));
    CHECK_THROWS_AS(grr_radius(0.0, 0.25, g, 0.0), InvalidArgument);
    CHECK_THROWS_AS(GrrParams({7, 5.0, 1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(GrrParams({7, 4.0, 1.0}).validate(), InvalidArgument);
    CHECK_NOTHROW(GrrParams{}.validate());
}

TEST_CASE("concentration bound")
{
    const VolBounds v{0.2, 0.2};
    CHECK(concentration_bound(1.0, 1.0, 0.25, v, 0.0) == 1.0);
    CHECK(concentration_bound(0.5, 1.0, 0.25, v, 0.0) == 1.0);
    const double bound = concentration_bound(0.1, 0.0, 0.25, v, 0.0);
    CHECK(bound == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    // The driftless Brownian sup tail at the same parameters is 2 Q(1).
    const double exact = 2.0 * (1.0 - oracle::phi(1.0));
    CHECK(exact < bound);
    CHECK(drifted_bm_sup_tail(0.1, -0.02, 0.2, 0.25) < bound);

    // Stronger correlation shrinks the variance proxy and the bound.
    double prev = 1.0;
    for (double rho : {0.0, 0.3, 0.6, 0.9, 0.99, 0.9999}) {
        const double b = concentration_bound(0.1, 0.0, 0.25, v, rho);
        CHECK(b <= prev);
        CHECK(b == concentration_bound(0.1, 0.0, 0.25, v, -rho));
        prev = b;
    }
    CHECK(prev < 1e-100);
    CHECK_THROWS_AS(concentration_bound(0.1, 0.0, 0.25, v, 1.0), InvalidArgument);
    CHECK_THROWS_AS(concentration_bound(0.1, 0.0, 0.25, v, -1.0), InvalidArgument);
}

TEST_CASE("density and cdf bounds")
{
    const DensityBoundParams p{1.3, 0.05};
    CHECK(density_bound(0.4, 0.4, 0.25, p) == doctest::Approx(1.3 / 0.5).epsilon(1e-15));
    double prev = density_bound(0.5, 0.4, 0.1, p);
    for (double t : {0.05, 0.01, 0.001, 1e-4}) {
        const double d = density_bound(0.5, 0.4, t, p);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-10);
    CHECK(cdf_bound(0.4, 0.4, 0.3, p) == doctest::Approx(1.3 * std::sqrt(2.0 * std::numbers::pi * 0.05) / 2.0));

    for (double c2 : {0.001, 0.04, 2.0, 800.0})
        for (double t : {0.001, 0.025, 0.5, 1.0})
            for (double gap : {0.0, 0.01, 0.0953, 0.5}) {
                const DensityBoundParams q{0.7, c2};
                const double closed = cdf_bound(gap, 0.0, t, q);
                const double quad = cdf_bound_quadrature(gap, 0.0, t, q);
                CAPTURE(c2);
                CAPTURE(t);
                CAPTURE(gap);
                if (closed > 1e-300)
                    CHECK(std::abs(quad / closed - 1.0) < 1e-10);
            }
    CHECK_THROWS_AS(DensityBoundParams({-1.0, 1.0}).validate(), InvalidArgument);
    CHECK_THROWS_AS(DensityBoundParams({1.0, 0.0}).validate(), InvalidArgument);
}

TEST_CASE("cdf bound decays faster than T^5")
{
    const DensityBoundParams p{1.0, 0.04};
    double prev = std::numeric_limits<double>::infinity();
    for (double t : {0.1, 0.05, 0.01}) {
        const double ratio = cdf_bound(0.5, 0.0, t, p) / std::pow(t, 5);
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("combined bound selects the smaller piece")
{
    const VolBounds v{0.2, 0.2};
    const DensityBoundParams big{1e6, 0.04};
    CHECK(combined_bound(0.1, 0.0, 0.0, 0.25, v, 0.0, big) == concentration_bound(0.1, 0.0, 0.25, v, 0.0));
    const VolBounds wide{0.01, 1e3};
    const DensityBoundParams p{0.5, 0.04};
    CHECK(combined_bound(0.1, 0.0, 0.0, 0.25, wide, 0.0, p) == cdf_bound(0.1, 0.0, 0.25, p));
    CHECK(default_variance_scale(v, 0.6) == doctest::Approx(0.04 * 0.64));
}

TEST_CASE("cdf calibration dominates its training data with headroom")
{
    const std::vector<TailObservation> obs{{0.5, 0.4}, {0.1, 0.1}, {0.025, 0.002}, {0.01, 0.0}};
    const DensityBoundParams p = calibrate_cdf_bound(obs, 0.1, 0.0, 0.04, 1.2);
    double tight = 0.0;
    for (const auto& o : obs) {
        const double bound = cdf_bound(0.1, 0.0, o.maturity, p);
        CHECK(bound >= 1.2 * o.probability * (1 - 1e-12));
        tight = std::max(tight, o.probability / bound);
    }
    CHECK(tight == doctest::Approx(1.0 / 1.2));
    CHECK_THROWS_AS(calibrate_cdf_bound({}, 0.1, 0.0, 0.04), InsufficientData);
}

TEST_CASE("calibrated density bound dominates a kernel density of M_T on fresh paths")
{
    Model m;
    m.kind = VolModelKind::constant;
    const TimeGrid g = build_grid(0.25, 32);
    const double x = 0.0;
    std::vector<double> z;
    for (int i = 0; i <= 49; ++i)
        z.push_back(x + 0.01 + 0.49 * i / 49.0);

    auto maxima = [&](std::size_t n, std::uint64_t seed) {
        return path_stats(simulate_batch(m, g, n, seed, 2)).max_value;
    };
    const auto train = maxima(200000, 1);
    const DensityBoundParams p = calibrate_density_bound(z, kernel_density(train, z), x, 0.25, 0.04, 1.2);
    CHECK(p.c1 > 0.0);
    const auto fresh = maxima(1000000, 2);
    const auto kde = kernel_density(fresh, z);
    for (std::size_t i = 0; i < z.size(); ++i) {
        CAPTURE(z[i]);
        CHECK(kde[i] <= density_bound(z[i], x, 0.25, p));
    }
}

TEST_CASE("kernel density integrates to one on a normal sample")
{
    std::vector<double> s;
    RngStream r(3, 0, StreamTag::auxiliary);
    for (int i = 0; i < 20000; ++i)
        s.push_back(r.normal());
    std::vector<double> z;
    for (int i = -600; i <= 600; ++i)
        z.push_back(i * 0.01);
    const auto d = kernel_density(s, z);
    double mass = 0.0;
    for (double v : d)
        mass += v * 0.01;
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(d[600] == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)).epsilon(0.05));
    CHECK_THROWS_AS(kernel_density(std::vector<double>{1.0}, z), InsufficientData);
}

TEST_CASE("GRR implication holds on fresh paths after calibration")
{
    Model m;
    m.log_spot = std::log(10.0);
    const TimeGrid g = build_grid(0.25, 128);
    const GrrParams base{};
    const double level = m.log_spot + 0.2;
    const GrrSample train = grr_sample(simulate_batch(m, g, 10000, 100), base, 1);
    const GrrParams cal = calibrate_grr(train, level, m.log_spot, 0.25, base, 1.2);
    CHECK(cal.c_grr > 0.0);
    CHECK(grr_violations(train, level, m.log_spot, 0.25, cal) == 0);
    const GrrSample fresh = grr_sample(simulate_batch(m, g, 10000, 200), base, 1);
    CHECK(grr_violations(fresh, level, m.log_spot, 0.25, cal) == 0);
    GrrSample none;
    none.y = {1.0};
    none.sup_deviation = {0.0};
    CHECK_THROWS_AS(calibrate_grr(none, level, m.log_spot, 0.25, base), InsufficientData);
}
