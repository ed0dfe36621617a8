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


#include "rbarrier/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rbarrier/error.hpp"
#include "rbarrier/numerics.hpp"

namespace rbarrier {

double BarrierContract::log_spot() const { return std::log(spot); }
double BarrierContract::log_barrier() const { return std::log(barrier); }

void BarrierContract::validate() const
{
    if (!(spot > 0.0) || !std::isfinite(spot))
        throw InvalidArgument("contract.S0: spot must be positive");
    if (!(strike > 0.0) || !std::isfinite(strike))
        throw InvalidArgument("contract.K: strike must be positive");
    if (!(barrier > spot)) {
        std::ostringstream msg;
        msg << "contract.B: barrier must satisfy B > S0 (got B=" << barrier << ", S0=" << spot << ")";
        throw InvalidArgument(msg.str());
    }
    if (!(maturity > 0.0 && maturity <= 1.0))
        throw InvalidArgument("contract.T: maturity must lie in (0, 1]");
}

double bridge_crossing_prob(double x_lo, double x_hi, double b, double sigma, double dt) noexcept
{
    if (x_lo >= b || x_hi >= b)
        return 1.0;
    return std::exp(-2.0 * (b - x_lo) * (b - x_hi) / (sigma * sigma * dt));
}

std::vector<double> hit_weights(const PathBatch& batch, double log_barrier)
{
    const int n = batch.grid.n_steps;
    const double dt = batch.grid.dt();
    std::vector<double> w(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        const auto x = batch.x_path(p);
        const auto sig = batch.sigma_path(p);
        double survival = 1.0;
        for (int i = 0; i < n && survival > 0.0; ++i) {
            const double q = bridge_crossing_prob(x[i], x[i + 1], log_barrier, sig[i], dt);
            survival = q >= 1.0 ? 0.0 : survival * (1.0 - q);
        }
        w[p] = 1.0 - survival;
    }
    return w;
}

namespace {

MCEstimate estimate_from(std::span<const double> samples, const PathBatch& batch)
{
    const SampleMoments m = sample_moments(samples);
    return MCEstimate{m.mean, m.std_error, batch.n_paths, batch.seed};
}

} // namespace

MCEstimate hit_probability(const PathBatch& batch, double log_barrier)
{
    if (batch.n_paths == 0)
        throw InvalidArgument("hit_probability: empty batch");
    const auto w = hit_weights(batch, log_barrier);
    MCEstimate e = estimate_from(w, batch);
    e.value = std::clamp(e.value, 0.0, 1.0);
    return e;
}

std::vector<double> european_payoffs(const PathBatch& batch, double strike)
{
    std::vector<double> v(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p)
        v[p] = std::max(std::exp(batch.x_terminal(p)) - strike, 0.0);
    return v;
}

std::vector<double> up_and_in_payoffs(const PathBatch& batch, const BarrierContract& contract)
{
    if (!(contract.barrier > contract.spot))
        throw InvalidArgument("price_up_and_in: barrier must satisfy B > S0; a barrier at or below spot is "
                              "always hit, use price_european");
    auto v = european_payoffs(batch, contract.strike);
    const auto w = hit_weights(batch, contract.log_barrier());
    for (std::size_t p = 0; p < v.size(); ++p)
        v[p] *= w[p];
    return v;
}

MCEstimate price_european(const PathBatch& batch, double strike)
{
    if (batch.n_paths == 0)
        throw InvalidArgument("price_european: empty batch");
    return estimate_from(european_payoffs(batch, strike), batch);
}

MCEstimate price_up_and_in(const PathBatch& batch, const BarrierContract& contract)
{
    if (batch.n_paths == 0)
        throw InvalidArgument("price_up_and_in: empty batch");
    return estimate_from(up_and_in_payoffs(batch, contract), batch);
}

double bs_call(double spot, double strike, double maturity, double sigma)
{
    const double sd = sigma * std::sqrt(maturity);
    if (sd <= 0.0)
        return std::max(spot - strike, 0.0);
    const double d1 = (std::log(spot / strike) + 0.5 * sd * sd) / sd;
    return spot * normal_cdf(d1) - strike * normal_cdf(d1 - sd);
}

double drifted_bm_sup_tail(double level, double mu, double sigma, double maturity)
{
    if (level <= 0.0)
        return 1.0;
    const double sd = sigma * std::sqrt(maturity);
    if (sd <= 0.0)
        return mu * maturity >= level ? 1.0 : 0.0;
    const double direct = normal_cdf((-level + mu * maturity) / sd);
    const double reflected_arg = (-level - mu * maturity) / sd;
    // e^{2 mu a / sigma^2} Phi(.) evaluated in log space to avoid 0 * inf
    const double log_reflected = 2.0 * mu * level / (sigma * sigma) + std::log(normal_cdf(reflected_arg));
    return std::min(1.0, direct + std::exp(log_reflected));
}

BlackScholesValues bs_oracles(const BarrierContract& c, double sigma)
{
    if (!(sigma > 0.0))
        throw InvalidArgument("bs_oracles: sigma must be positive");
    BlackScholesValues out;
    const double S = c.spot, K = c.strike, H = c.barrier, T = c.maturity;
    out.european = bs_call(S, K, T, sigma);
    if (H <= S) {
        out.up_and_in = out.european;
        out.hit_probability = 1.0;
        return out;
    }
    const double mu_log = -0.5 * sigma * sigma;
    out.hit_probability = drifted_bm_sup_tail(std::log(H / S), mu_log, sigma, T);

    if (K >= H) {
        // Every path finishing above K >= B has crossed B.
        out.up_and_in = out.european;
        return out;
    }
    // Reiner-Rubinstein building blocks with r = q = 0, call (phi = 1), up (eta = -1).
    const double sd = sigma * std::sqrt(T);
    const double mu = -0.5;  // (r - q) / sigma^2 - 1/2
    const double hs = H / S;
    const double x2 = std::log(S / H) / sd + (1.0 + mu) * sd;
    const double y1 = std::log(H * H / (S * K)) / sd + (1.0 + mu) * sd;
    const double y2 = std::log(H / S) / sd + (1.0 + mu) * sd;
    const double b_term = S * normal_cdf(x2) - K * normal_cdf(x2 - sd);
    const double pow1 = std::pow(hs, 2.0 * (mu + 1.0));
    const double pow0 = std::pow(hs, 2.0 * mu);
    const double c_term = S * pow1 * normal_cdf(-y1) - K * pow0 * normal_cdf(-(y1 - sd));
    const double d_term = S * pow1 * normal_cdf(-y2) - K * pow0 * normal_cdf(-(y2 - sd));
    out.up_and_in = b_term - c_term + d_term;
    return out;
}

} // namespace rbarrier
