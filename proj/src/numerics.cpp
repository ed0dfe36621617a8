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


#include "rbarrier/numerics.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace rbarrier {

namespace {
constexpr std::size_t kPairwiseBlock = 64;
}

double pairwise_sum(std::span<const double> values) noexcept
{
    if (values.size() <= kPairwiseBlock) {
        double acc = 0.0;
        for (double v : values)
            acc += v;
        return acc;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleMoments sample_moments(std::span<const double> values)
{
    SampleMoments m;
    m.count = values.size();
    if (values.empty())
        return m;
    m.mean = pairwise_sum(values) / static_cast<double>(values.size());
    if (values.size() < 2)
        return m;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - m.mean;
        sq[i] = d * d;
    }
    m.variance = pairwise_sum(sq) / static_cast<double>(values.size() - 1);
    m.std_error = std::sqrt(m.variance / static_cast<double>(values.size()));
    return m;
}

double normal_cdf(double z) noexcept
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_upper_tail(double z) noexcept
{
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_pdf(double z) noexcept
{
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

} // namespace rbarrier
