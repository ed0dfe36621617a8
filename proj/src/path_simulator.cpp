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


#include "rbarrier/path_simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "rbarrier/error.hpp"
#include "rbarrier/numerics.hpp"

namespace rbarrier {

void parallel_blocks(std::size_t n, unsigned workers,
                     const std::function<void(std::size_t, std::size_t)>& fn)
{
    const std::size_t n_blocks = (n + kSimulationBlock - 1) / kSimulationBlock;
    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), std::max<std::size_t>(1, n_blocks)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks)
                return;
            try {
                const std::size_t begin = b * kSimulationBlock;
                fn(begin, std::min(n, begin + kSimulationBlock));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n_blocks;
                return;
            }
        }
    };
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(work);
    }
    if (error)
        std::rethrow_exception(error);
}

PathBatch simulate_batch(const Model& model, const TimeGrid& grid, std::size_t n_paths,
                         std::uint64_t seed, unsigned workers)
{
    model.validate();
    const CovFactor factor = factorize_volterra(grid, model.params.hurst);
    return simulate_batch(model, grid, factor, n_paths, seed, workers);
}

PathBatch simulate_batch(const Model& model, const TimeGrid& grid, const CovFactor& factor,
                         std::size_t n_paths, std::uint64_t seed, unsigned workers)
{
    model.validate();
    if (n_paths < 1)
        throw InvalidArgument("simulate_batch: n_paths must be at least 1");
    if (factor.n_times() != grid.n_steps || factor.times.back() != grid.maturity)
        throw InvalidArgument("simulate_batch: covariance factor does not match the grid");
    if (factor.hurst != model.params.hurst)
        throw InvalidArgument("simulate_batch: covariance factor built for a different Hurst exponent");

    PathBatch batch;
    batch.grid = grid;
    batch.n_paths = n_paths;
    batch.seed = seed;
    batch.model_tag = to_string(model.kind);
    batch.log_spot = model.log_spot;
    const std::size_t len = batch.row_length();
    batch.X.resize(n_paths * len);
    batch.sigma.resize(n_paths * len);

    const double rho = model.params.rho;
    const double rho_bar = std::sqrt(1.0 - rho * rho);
    const double dt = grid.dt();
    const int n = grid.n_steps;

    parallel_blocks(n_paths, workers, [&](std::size_t begin, std::size_t end) {
        JointGaussianBlock block;
        sample_joint_block(factor, seed, begin, end - begin, block);
        for (std::size_t q = 0; q < end - begin; ++q) {
            const std::size_t p = begin + q;
            double* x = batch.X.data() + p * len;
            double* sig = batch.sigma.data() + p * len;
            model.fill_vol(grid, [&](int i) { return block.wh(static_cast<std::size_t>(i - 1), q); },
                           std::span<double>(sig, len));
            x[0] = model.log_spot;
            double w_prev = 0.0;
            for (int i = 0; i < n; ++i) {
                const double w = block.w(static_cast<std::size_t>(i), q);
                const double dw = w - w_prev;
                w_prev = w;
                const double db = block.db(static_cast<std::size_t>(i), q);
                const double s = sig[i];
                x[i + 1] = x[i] - 0.5 * s * s * dt + s * (rho * dw + rho_bar * db);
            }
        }
    });

    for (double v : batch.X)
        if (!std::isfinite(v))
            throw NumericalFailure("simulate_batch: non-finite log-price generated");
    return batch;
}

PathStatistics path_stats(const PathBatch& batch)
{
    PathStatistics st;
    st.max_value.resize(batch.n_paths);
    st.argmax_index.resize(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        const auto x = batch.x_path(p);
        const auto it = std::max_element(x.begin(), x.end());  // first maximum
        st.max_value[p] = *it;
        st.argmax_index[p] = static_cast<int>(it - x.begin());
    }
    st.mean_max = sample_moments(st.max_value).mean;
    return st;
}

} // namespace rbarrier
