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

#include "rbarrier/error.hpp"
#include "rbarrier/numerics.hpp"
#include "rbarrier/path_simulator.hpp"

using namespace rbarrier;

namespace {

Model black_scholes(double sigma, double x = std::log(10.0))
{
    Model m;
    m.kind = VolModelKind::rough_bergomi;
    m.params.sigma0 = sigma;
    m.params.nu = 0.0;
    m.params.rho = 0.0;
    m.log_spot = x;
    return m;
}

std::vector<double> terminals(const PathBatch& b)
{
    std::vector<double> x(b.n_paths);
    for (std::size_t p = 0; p < b.n_paths; ++p)
        x[p] = b.x_terminal(p);
    return x;
}

} // namespace

TEST_CASE("zero vol-of-vol: Black-Scholes drift and variance over 10^6 paths")
{
    const Model m = black_scholes(0.2);
    const TimeGrid g = build_grid(1.0, 4);
    const PathBatch b = simulate_batch(m, g, 1000000, 123);
    const SampleMoments s = sample_moments(terminals(b));
    CHECK(std::abs(s.mean - (m.log_spot - 0.02)) < 4.0 * s.std_error);
    CHECK(std::abs(s.variance / 0.04 - 1.0) < 0.01);
}

TEST_CASE("truncated rough Bergomi spot is a martingale")
{
    Model m;
    m.kind = VolModelKind::truncated_rough_bergomi;
    m.params.truncation_n = 5.0;
    m.log_spot = std::log(10.0);
    const TimeGrid g = build_grid(0.5, 64);
    const PathBatch b = simulate_batch(m, g, 100000, 7);
    std::vector<double> s(b.n_paths);
    for (std::size_t p = 0; p < b.n_paths; ++p)
        s[p] = std::exp(b.x_terminal(p));
    const SampleMoments mm = sample_moments(s);
    CHECK(std::abs(mm.mean - 10.0) < 3.0 * mm.std_error);
}

TEST_CASE("batch layout and first column")
{
    Model m;
    m.log_spot = 1.5;
    const TimeGrid g = build_grid(0.25, 8);
    const PathBatch b = simulate_batch(m, g, 10, 1);
    CHECK(b.n_paths == 10);
    CHECK(b.row_length() == 9);
    CHECK(b.X.size() == 90);
    CHECK(b.sigma.size() == 90);
    for (std::size_t p = 0; p < 10; ++p) {
        CHECK(b.x_path(p)[0] == 1.5);
        CHECK(b.sigma_path(p)[0] == m.params.sigma0);
    }
}

TEST_CASE("results do not depend on worker count")
{
    Model m;
    m.log_spot = std::log(10.0);
    const TimeGrid g = build_grid(0.1, 32);
    const PathBatch one = simulate_batch(m, g, 3001, 99, 1);
    for (unsigned w : {2u, 3u, 8u}) {
        const PathBatch many = simulate_batch(m, g, 3001, 99, w);
        CHECK(many.X == one.X);
        CHECK(many.sigma == one.sigma);
    }
}

TEST_CASE("zero vol-of-vol reproduces constant vol bit for bit")
{
    Model c = black_scholes(0.2);
    c.kind = VolModelKind::constant;
    c.params.rho = -0.3;
    Model r = c;
    r.kind = VolModelKind::rough_bergomi;
    const TimeGrid g = build_grid(0.5, 50);
    const PathBatch a = simulate_batch(c, g, 1000, 5);
    const PathBatch b = simulate_batch(r, g, 1000, 5);
    CHECK(a.X == b.X);
}

TEST_CASE("H = 1/2, nu = 0 is Black-Scholes")
{
    Model m = black_scholes(0.3);
    m.params.hurst = 0.5;
    m.params.rho = 0.5;
    const TimeGrid g = build_grid(0.5, 8);
    const PathBatch b = simulate_batch(m, g, 200000, 17);
    const SampleMoments s = sample_moments(terminals(b));
    CHECK(std::abs(s.mean - (m.log_spot - 0.5 * 0.09 * 0.5)) < 4.0 * s.std_error);
    CHECK(std::abs(s.variance / (0.09 * 0.5) - 1.0) < 0.02);
}

TEST_CASE("running maximum statistics")
{
    SUBCASE("near-constant path")
    {
        const Model m = black_scholes(1e-8, 0.7);
        const PathBatch b = simulate_batch(m, build_grid(0.5, 16), 50, 3);
        const PathStatistics s = path_stats(b);
        for (std::size_t p = 0; p < 50; ++p) {
            CHECK(s.max_value[p] - 0.7 <= 10.0 * 1e-8 * std::sqrt(0.5));
            CHECK(s.max_value[p] >= 0.7);
        }
        PathBatch flat;
        flat.grid = build_grid(1.0, 4);
        flat.n_paths = 1;
        flat.X.assign(5, 0.7);
        flat.sigma.assign(5, 0.0);
        const PathStatistics f = path_stats(flat);
        CHECK(f.max_value[0] == 0.7);
        CHECK(f.argmax_index[0] == 0);
    }
    SUBCASE("decreasing path has argmax 0")
    {
        PathBatch b;
        b.grid = build_grid(1.0, 4);
        b.n_paths = 1;
        b.X = {1.0, 0.5, 0.2, 0.1, 0.0};
        b.sigma.assign(5, 0.2);
        const PathStatistics s = path_stats(b);
        CHECK(s.argmax_index[0] == 0);
        CHECK(s.max_value[0] == 1.0);
        b.X = {0.0, 1.0, 1.0, 0.3, 1.0};
        CHECK(path_stats(b).argmax_index[0] == 1);
    }
    SUBCASE("M_T >= x on every path")
    {
        Model m;
        m.log_spot = 2.0;
        const PathBatch b = simulate_batch(m, build_grid(0.25, 32), 2000, 8);
        const PathStatistics s = path_stats(b);
        for (double v : s.max_value)
            REQUIRE(v >= 2.0);
        CHECK(s.mean_max >= 2.0);
    }
    SUBCASE("mean maximum shrinks to x as T -> 0")
    {
        Model m;
        m.log_spot = std::log(10.0);
        const PathBatch b = simulate_batch(m, build_grid(1e-3, 64), 20000, 21);
        CHECK(path_stats(b).mean_max - m.log_spot <= 0.01);
    }
}

TEST_CASE("factor mismatch and invalid inputs are rejected")
{
    Model m;
    const TimeGrid g = build_grid(0.5, 8);
    const CovFactor wrong_h = factorize_volterra(g, 0.3);
    CHECK_THROWS_AS(simulate_batch(m, g, wrong_h, 10, 1), InvalidArgument);
    const CovFactor wrong_grid = factorize_volterra(build_grid(0.5, 4), 0.2);
    CHECK_THROWS_AS(simulate_batch(m, g, wrong_grid, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(simulate_batch(m, g, 0, 1), InvalidArgument);
    Model bad = m;
    bad.params.rho = 1.0;
    CHECK_THROWS_AS(simulate_batch(bad, g, 10, 1), InvalidArgument);
}

TEST_CASE("worker exceptions propagate")
{
    CHECK_THROWS_AS(parallel_blocks(2000, 3,
                                    [](std::size_t b, std::size_t) {
                                        if (b >= 1024)
                                            throw NumericalFailure("boom");
                                    }),
                    NumericalFailure);
}
