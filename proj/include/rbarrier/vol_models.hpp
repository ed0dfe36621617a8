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

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbarrier/gaussian_kernel.hpp"

namespace rbarrier {

/// Rough Bergomi parameters: sigma_t^2 = sigma0^2 exp(nu W^H_t - nu^2 t^{2H} / 2).
struct RoughBergomiParams {
    double sigma0 = 0.2;
    double nu = 0.5;
    double hurst = 0.2;
    double rho = -0.3;
    std::optional<double> truncation_n;

    /// Throws InvalidArgument naming the offending field.
    void validate() const;
};

/// alpha <= sigma_t <= beta for every t. alpha == beta only for constant vol.
struct VolBounds {
    double alpha = 0.0;
    double beta = 0.0;
};

/// Which quantity the smooth clamp acts on.
///   variance:   sigma^n = sqrt(phi_n(g)), phi(x) = sigma0^2 e^x  (sigma^n -> sigma)
///   volatility: sigma^n = phi_n(g),       phi(x) = sigma0 e^x
enum class TruncationReading { variance, volatility };

std::string to_string(TruncationReading reading);
TruncationReading truncation_reading_from_string(const std::string& text);

/// sigma0 on every grid point (n_steps + 1 values).
std::vector<double> const_vol(const TimeGrid& grid, double sigma0);

/// Volatility on the grid from W^H at t_1..t_n (W^H_0 = 0 is implied).
std::vector<double> rbergomi_vol(std::span<const double> wh, const TimeGrid& grid,
                                 const RoughBergomiParams& params);

/// Quintic smoothstep 6u^5 - 15u^4 + 10u^3 on [0, 1], clamped outside.
double smoothstep5(double u) noexcept;

/// C^2 monotone clamp of phi(g) = scale * e^g: equal to phi on [-n, n],
/// blended by smoothstep5 into the constants phi(-2n) and phi(2n), constant
/// beyond +-2n.
double truncated_exp(double g, double scale, double n) noexcept;

struct TruncatedVolPath {
    std::vector<double> sigma;
    VolBounds bounds;
};

/// Truncated rough Bergomi volatility satisfying uniform bounds by construction.
TruncatedVolPath truncated_rbergomi_vol(std::span<const double> wh, const TimeGrid& grid,
                                        const RoughBergomiParams& params, double truncation_n,
                                        TruncationReading reading = TruncationReading::variance);

/// Bounds implied by a truncation level for the given reading.
VolBounds truncation_bounds(double sigma0, double truncation_n, TruncationReading reading);

enum class VolModelKind { constant, rough_bergomi, truncated_rough_bergomi };

std::string to_string(VolModelKind kind);
VolModelKind vol_model_kind_from_string(const std::string& text);

/// Everything the path simulator needs to know about the dynamics.
///
/// The constant model ignores nu and the truncation but still draws its
/// Brownian increments through the joint (W, W^H) kernel at params.hurst, so
/// a rough Bergomi model with nu = 0 reproduces it bit for bit.
struct Model {
    VolModelKind kind = VolModelKind::rough_bergomi;
    RoughBergomiParams params;
    TruncationReading reading = TruncationReading::variance;
    double log_spot = 0.0;

    void validate() const;

    /// Fills sigma_0..sigma_n for one path. wh_at(i) must return W^H_{t_i}
    /// for i = 1..n.
    template <class WhAccessor>
    void fill_vol(const TimeGrid& grid, WhAccessor&& wh_at, std::span<double> sigma) const;

    /// Uniform bounds of the volatility; nullopt for the raw rough Bergomi model.
    std::optional<VolBounds> vol_bounds() const;
};

namespace detail {
double rbergomi_exponent(double wh, double t, const RoughBergomiParams& p) noexcept;
double truncated_sigma(double g, double sigma0, double n, TruncationReading reading) noexcept;
} // namespace detail

template <class WhAccessor>
void Model::fill_vol(const TimeGrid& grid, WhAccessor&& wh_at, std::span<double> sigma) const
{
    const RoughBergomiParams& p = params;
    switch (kind) {
    case VolModelKind::constant:
        for (double& s : sigma)
            s = p.sigma0;
        break;
    case VolModelKind::rough_bergomi: {
        sigma[0] = p.sigma0;
        for (int i = 1; i <= grid.n_steps; ++i)
            sigma[i] = p.sigma0 * std::exp(0.5 * detail::rbergomi_exponent(wh_at(i), grid.time(i), p));
        break;
    }
    case VolModelKind::truncated_rough_bergomi: {
        const double n = p.truncation_n.value_or(5.0);
        sigma[0] = detail::truncated_sigma(0.0, p.sigma0, n, reading);
        for (int i = 1; i <= grid.n_steps; ++i)
            sigma[i] = detail::truncated_sigma(detail::rbergomi_exponent(wh_at(i), grid.time(i), p),
                                               p.sigma0, n, reading);
        break;
    }
    }
}

} // namespace rbarrier
