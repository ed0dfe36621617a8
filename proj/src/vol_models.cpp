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


#include "rbarrier/vol_models.hpp"

#include <cmath>
#include <sstream>

#include "rbarrier/error.hpp"

namespace rbarrier {

void RoughBergomiParams::validate() const
{
    auto fail = [](const std::string& msg) { throw InvalidArgument(msg); };
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        fail("model.sigma0: spot volatility must be positive");
    if (!(nu >= 0.0) || !std::isfinite(nu))
        fail("model.nu: vol-of-vol must be non-negative");
    if (!(hurst > 0.0 && hurst < 1.0))
        fail("model.hurst: Hurst exponent must lie in (0,1)");
    if (!(rho > -1.0 && rho < 1.0))
        fail("model.rho: correlation must lie strictly inside (-1,1)");
    if (truncation_n && !(*truncation_n > 0.0))
        fail("model.truncation_n: truncation level must be positive");
}

std::string to_string(TruncationReading reading)
{
    return reading == TruncationReading::variance ? "variance" : "volatility";
}

TruncationReading truncation_reading_from_string(const std::string& text)
{
    if (text == "variance")
        return TruncationReading::variance;
    if (text == "volatility")
        return TruncationReading::volatility;
    throw InvalidArgument("model.truncation_reading: expected 'variance' or 'volatility', got '" + text + "'");
}

std::string to_string(VolModelKind kind)
{
    switch (kind) {
    case VolModelKind::constant:
        return "constant";
    case VolModelKind::rough_bergomi:
        return "rough_bergomi";
    case VolModelKind::truncated_rough_bergomi:
        return "truncated_rough_bergomi";
    }
    return "unknown";
}

VolModelKind vol_model_kind_from_string(const std::string& text)
{
    if (text == "constant")
        return VolModelKind::constant;
    if (text == "rough_bergomi")
        return VolModelKind::rough_bergomi;
    if (text == "truncated_rough_bergomi")
        return VolModelKind::truncated_rough_bergomi;
    throw InvalidArgument("model.kind: expected constant, rough_bergomi or truncated_rough_bergomi, got '" +
                          text + "'");
}

std::vector<double> const_vol(const TimeGrid& grid, double sigma0)
{
    if (!(sigma0 > 0.0))
        throw InvalidArgument("const_vol: sigma0 must be positive");
    return std::vector<double>(static_cast<std::size_t>(grid.n_steps) + 1, sigma0);
}

namespace detail {

double rbergomi_exponent(double wh, double t, const RoughBergomiParams& p) noexcept
{
    if (t == 0.0)
        return 0.0;
    return p.nu * wh - 0.5 * p.nu * p.nu * std::pow(t, 2.0 * p.hurst);
}

double truncated_sigma(double g, double sigma0, double n, TruncationReading reading) noexcept
{
    if (reading == TruncationReading::variance)
        return std::sqrt(truncated_exp(g, sigma0 * sigma0, n));
    return truncated_exp(g, sigma0, n);
}

} // namespace detail

double smoothstep5(double u) noexcept
{
    if (u <= 0.0)
        return 0.0;
    if (u >= 1.0)
        return 1.0;
    return u * u * u * (u * (6.0 * u - 15.0) + 10.0);
}

double truncated_exp(double g, double scale, double n) noexcept
{
    if (g >= -n && g <= n)
        return scale * std::exp(g);
    if (g > n) {
        const double cap = scale * std::exp(2.0 * n);
        if (g >= 2.0 * n)
            return cap;
        const double s = smoothstep5((g - n) / n);
        const double phi = scale * std::exp(g);
        return phi + s * (cap - phi);
    }
    const double floor = scale * std::exp(-2.0 * n);
    if (g <= -2.0 * n)
        return floor;
    const double s = smoothstep5((-n - g) / n);
    const double phi = scale * std::exp(g);
    return phi + s * (floor - phi);
}

std::vector<double> rbergomi_vol(std::span<const double> wh, const TimeGrid& grid,
                                 const RoughBergomiParams& params)
{
    if (static_cast<int>(wh.size()) != grid.n_steps)
        throw InvalidArgument("rbergomi_vol: need one W^H value per positive grid point");
    std::vector<double> sigma(static_cast<std::size_t>(grid.n_steps) + 1);
    Model m;
    m.kind = VolModelKind::rough_bergomi;
    m.params = params;
    m.fill_vol(grid, [&](int i) { return wh[i - 1]; }, sigma);
    return sigma;
}

VolBounds truncation_bounds(double sigma0, double truncation_n, TruncationReading reading)
{
    if (!(truncation_n > 0.0))
        throw InvalidArgument("truncation level must be positive");
    if (reading == TruncationReading::variance)
        return {std::sqrt(sigma0 * sigma0 * std::exp(-2.0 * truncation_n)),
                std::sqrt(sigma0 * sigma0 * std::exp(2.0 * truncation_n))};
    return {sigma0 * std::exp(-2.0 * truncation_n), sigma0 * std::exp(2.0 * truncation_n)};
}

TruncatedVolPath truncated_rbergomi_vol(std::span<const double> wh, const TimeGrid& grid,
                                        const RoughBergomiParams& params, double truncation_n,
                                        TruncationReading reading)
{
    if (!(truncation_n > 0.0))
        throw InvalidArgument("truncated_rbergomi_vol: truncation_n must be positive");
    if (static_cast<int>(wh.size()) != grid.n_steps)
        throw InvalidArgument("truncated_rbergomi_vol: need one W^H value per positive grid point");
    Model m;
    m.kind = VolModelKind::truncated_rough_bergomi;
    m.params = params;
    m.params.truncation_n = truncation_n;
    m.reading = reading;
    TruncatedVolPath out;
    out.sigma.resize(static_cast<std::size_t>(grid.n_steps) + 1);
    m.fill_vol(grid, [&](int i) { return wh[i - 1]; }, out.sigma);
    out.bounds = truncation_bounds(params.sigma0, truncation_n, reading);
    return out;
}

void Model::validate() const
{
    params.validate();
    if (!std::isfinite(log_spot))
        throw InvalidArgument("contract.S0: log spot must be finite");
}

std::optional<VolBounds> Model::vol_bounds() const
{
    switch (kind) {
    case VolModelKind::constant:
        return VolBounds{params.sigma0, params.sigma0};
    case VolModelKind::truncated_rough_bergomi:
        return truncation_bounds(params.sigma0, params.truncation_n.value_or(5.0), reading);
    case VolModelKind::rough_bergomi:
        break;
    }
    return std::nullopt;
}

} // namespace rbarrier
