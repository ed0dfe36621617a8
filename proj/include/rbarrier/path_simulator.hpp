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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rbarrier/gaussian_kernel.hpp"
#include "rbarrier/vol_models.hpp"

namespace rbarrier {

/// Simulated log-price and volatility paths on a shared grid. Both matrices
/// are row-major, one row of n_steps + 1 values per path.
struct PathBatch {
    TimeGrid grid;
    std::size_t n_paths = 0;
    std::vector<double> X;
    std::vector<double> sigma;
    std::uint64_t seed = 0;
    std::string model_tag;
    double log_spot = 0.0;

    std::size_t row_length() const noexcept { return static_cast<std::size_t>(grid.n_steps) + 1; }
    std::span<const double> x_path(std::size_t p) const noexcept
    {
        return {X.data() + p * row_length(), row_length()};
    }
    std::span<const double> sigma_path(std::size_t p) const noexcept
    {
        return {sigma.data() + p * row_length(), row_length()};
    }
    double x_terminal(std::size_t p) const noexcept { return X[p * row_length() + grid.n_steps]; }
};

struct PathStatistics {
    std::vector<double> max_value;      // discrete M_T per path
    std::vector<int> argmax_index;      // first index attaining it
    double mean_max = 0.0;              // batch mean of M_T
};

/// Paths per block handed to a worker. Part of the reproducibility contract:
/// block boundaries depend only on path indices.
inline constexpr std::size_t kSimulationBlock = 256;

/// Left-point Euler scheme for
///   X_{i+1} = X_i - sigma_i^2 dt / 2 + sigma_i (rho dW_i + sqrt(1 - rho^2) dB_i).
/// Output is bit-identical for identical inputs at any worker count.
PathBatch simulate_batch(const Model& model, const TimeGrid& grid, std::size_t n_paths,
                         std::uint64_t seed, unsigned workers = 1);

/// Same, reusing a precomputed factor (must match the grid and model.params.hurst).
PathBatch simulate_batch(const Model& model, const TimeGrid& grid, const CovFactor& factor,
                         std::size_t n_paths, std::uint64_t seed, unsigned workers = 1);

/// Discrete running maximum over grid indices 0..n_steps; ties go to the
/// smallest index.
PathStatistics path_stats(const PathBatch& batch);

/// Runs fn(begin, end) over [0, n) split into kSimulationBlock-sized blocks,
/// with up to `workers` threads pulling blocks from a shared counter.
void parallel_blocks(std::size_t n, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace rbarrier
