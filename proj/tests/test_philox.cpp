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

#include <algorithm>
#include <cmath>
#include <vector>

#include "rbarrier/numerics.hpp"
#include "rbarrier/philox.hpp"

using namespace rbarrier;

TEST_CASE("philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct")
{
    RngStream a(42, 7, StreamTag::joint_gaussian);
    RngStream b(42, 7, StreamTag::joint_gaussian);
    RngStream c(42, 8, StreamTag::joint_gaussian);
    RngStream d(42, 7, StreamTag::independent_bm);
    RngStream e(43, 7, StreamTag::joint_gaussian);
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next_u64();
        CHECK(va == b.next_u64());
        const auto vc = c.next_u64(), vd = d.next_u64(), ve = e.next_u64();
        CHECK(va != vc);
        CHECK(va != vd);
        CHECK(va != ve);
    }
}

TEST_CASE("uniforms lie in the open unit interval")
{
    RngStream s(1, 0, StreamTag::auxiliary);
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("normal draws have standard moments")
{
    std::vector<double> z;
    for (std::uint64_t p = 0; p < 1000; ++p) {
        RngStream s(99, p, StreamTag::auxiliary);
        for (int i = 0; i < 500; ++i)
            z.push_back(s.normal());
    }
    const SampleMoments m = sample_moments(z);
    CHECK(std::abs(m.mean) < 4.0 * m.std_error);
    // Var of the sample variance is 2 / n for a standard normal.
    CHECK(std::abs(m.variance - 1.0) < 4.0 * std::sqrt(2.0 / z.size()));
    const auto below = std::count_if(z.begin(), z.end(), [](double v) { return v < -1.0; });
    const double frac = static_cast<double>(below) / z.size();
    CHECK(std::abs(frac - normal_cdf(-1.0)) < 4.0 * std::sqrt(0.16 / z.size()));
}

TEST_CASE("mix_seed separates salts")
{
    CHECK(mix_seed(1, 0) != mix_seed(1, 1));
    CHECK(mix_seed(1, 0) != mix_seed(2, 0));
    CHECK(mix_seed(5, 3) == mix_seed(5, 3));
}

TEST_CASE("pairwise sum and moments")
{
    std::vector<double> v(100000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(10000.0).epsilon(1e-14));
    CHECK(pairwise_sum({}) == 0.0);
    const std::vector<double> w{1.0, 2.0, 3.0, 4.0};
    const SampleMoments m = sample_moments(w);
    CHECK(m.mean == 2.5);
    CHECK(m.variance == doctest::Approx(5.0 / 3.0));
    CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 12.0)));
    CHECK(normal_cdf(0.0) == 0.5);
    CHECK(normal_upper_tail(1.0) == doctest::Approx(1.0 - normal_cdf(1.0)));
    CHECK(normal_upper_tail(37.0) > 0.0);
}
