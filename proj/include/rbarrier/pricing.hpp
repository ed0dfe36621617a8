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

#include "rbarrier/path_simulator.hpp"

namespace rbarrier {

/// Up-and-in barrier call, zero rates.
struct BarrierContract {
    double spot = 10.0;
    double strike = 9.5;
    double barrier = 11.0;
    double maturity = 0.5;

    double log_spot() const;
    double log_barrier() const;
    /// Throws InvalidArgument unless S0, K > 0 and B > S0.
    void validate() const;
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_paths = 0;
    std::uint64_t seed = 0;
};

/// Probability that a Brownian bridge from x_lo to x_hi over dt with
/// volatility sigma touches b. 1 when either endpoint is at or above b.
double bridge_crossing_prob(double x_lo, double x_hi, double b, double sigma, double dt) noexcept;

/// Per-path conditional probability of touching b given the discrete path:
/// 1 - prod_i (1 - p_i) with p_i from the left-endpoint bridge.
std::vector<double> hit_weights(const PathBatch& batch, double log_barrier);

/// P(M_T >= b), bridge-corrected, with the conditional hit weight as the
/// per-path sample.
MCEstimate hit_probability(const PathBatch& batch, double log_barrier);

/// E[(e^{X_T} - K)_+]
MCEstimate price_european(const PathBatch& batch, double strike);

/// E[(e^{X_T} - K)_+ w] with w the path's hit weight. Requires B > S0.
MCEstimate price_up_and_in(const PathBatch& batch, const BarrierContract& contract);

/// Per-path payoffs for ordering checks.
std::vector<double> european_payoffs(const PathBatch& batch, double strike);
std::vector<double> up_and_in_payoffs(const PathBatch& batch, const BarrierContract& contract);

struct BlackScholesValues {
    double european = 0.0;
    double up_and_in = 0.0;
    double hit_probability = 0.0;   // P(sup_t X_t >= b)
};

/// Closed forms under constant volatility and zero rates: Black-Scholes call,
/// Reiner-Rubinstein up-and-in call (both K < B and K >= B branches), and the
/// reflection-principle tail of the running maximum of drifted Brownian motion.
BlackScholesValues bs_oracles(const BarrierContract& contract, double sigma);

double bs_call(double spot, double strike, double maturity, double sigma);

/// P(sup_{t<=T} (mu t + sigma W_t) >= level) for level >= 0.
double drifted_bm_sup_tail(double level, double mu, double sigma, double maturity);

} // namespace rbarrier
