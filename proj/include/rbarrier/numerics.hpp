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

#include <cstddef>
#include <span>

namespace rbarrier {

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the input, so the result is independent of how the values were
/// produced.
double pairwise_sum(std::span<const double> values) noexcept;

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0;   // unbiased sample variance
    double std_error = 0.0;  // sqrt(variance / n)
    std::size_t count = 0;
};

/// Two-pass mean/variance with pairwise summation.
SampleMoments sample_moments(std::span<const double> values);

/// Standard normal CDF.
double normal_cdf(double z) noexcept;

/// Standard normal upper tail Q(z) = 1 - Phi(z), accurate deep in the tail.
double normal_upper_tail(double z) noexcept;

double normal_pdf(double z) noexcept;

} // namespace rbarrier
