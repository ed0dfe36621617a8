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


#include "rbarrier/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rbarrier/error.hpp"
#include "rbarrier/numerics.hpp"

namespace rbarrier {

namespace {

constexpr double kLogSpaceThreshold = 1e-8;

double int_pow(double base, int exponent) noexcept
{
    double result = 1.0;
    while (exponent > 0) {
        if (exponent & 1)
            result *= base;
        base *= base;
        exponent >>= 1;
    }
    return result;
}

} // namespace

void GrrParams::validate() const
{
    if (!(gamma0 > 4.0) || !(p0 - 2 > gamma0)) {
        std::ostringstream msg;
        msg << "GRR exponents must satisfy p0 - 2 > gamma0 > 4 (got p0=" << p0 << ", gamma0=" << gamma0 << ")";
        throw InvalidArgument(msg.str());
    }
    if (!(c_grr > 0.0))
        throw InvalidArgument("GRR constant must be positive");
}

void DensityBoundParams::validate() const
{
    if (!(c1 >= 0.0) || !std::isfinite(c1))
        throw InvalidArgument("bounds.c1: amplitude must be finite and non-negative");
    if (!(c2 > 0.0) || !std::isfinite(c2))
        throw InvalidArgument("bounds.c2: variance scale must be finite and positive");
}

double y_functional(std::span<const double> path, double dt, const GrrParams& grr)
{
    return y_functional(path, dt, grr, static_cast<int>(path.size()) - 1);
}

double y_functional(std::span<const double> path, double dt, const GrrParams& grr, int n_cells)
{
    if (grr.p0 < 1 || !(grr.gamma0 >= 0.0) || !(grr.gamma0 < 2 * grr.p0 + 1))
        throw InvalidArgument("y_functional: exponents must satisfy p0 >= 1 and 0 <= gamma0 < 2 p0 + 1");
    if (!(dt > 0.0))
        throw InvalidArgument("y_functional: dt must be positive");
    if (n_cells < 0 || n_cells + 1 > static_cast<int>(path.size()))
        throw InvalidArgument("y_functional: cell count exceeds path length");

    const int power = 2 * grr.p0;
    std::vector<double> mid(static_cast<std::size_t>(n_cells));
    for (int c = 0; c < n_cells; ++c)
        mid[c] = 0.5 * (path[c] + path[c + 1]);

    // weight by lag k: dt^2 / (k dt)^gamma0
    std::vector<double> log_weight(static_cast<std::size_t>(n_cells));
    std::vector<double> weight(static_cast<std::size_t>(n_cells));
    for (int k = 1; k < n_cells; ++k) {
        log_weight[k] = 2.0 * std::log(dt) - grr.gamma0 * std::log(k * dt);
        weight[k] = std::exp(log_weight[k]);
    }

    std::vector<double> per_row(static_cast<std::size_t>(n_cells), 0.0);
    for (int c = 0; c < n_cells; ++c) {
        double acc = 0.0;
        for (int d = c + 1; d < n_cells; ++d) {
            const double diff = std::abs(mid[d] - mid[c]);
            if (diff == 0.0)
                continue;
            const int k = d - c;
            if (diff < kLogSpaceThreshold)
                acc += std::exp(power * std::log(diff) + log_weight[k]);
            else
                acc += int_pow(diff, power) * weight[k];
        }
        per_row[c] = acc;
    }
    return 2.0 * pairwise_sum(per_row);
}

double grr_radius(double level, double maturity, const GrrParams& grr, double x)
{
    if (!(level > x))
        throw InvalidArgument("grr_radius: level must exceed the initial log-price");
    if (!(maturity > 0.0))
        throw InvalidArgument("grr_radius: maturity must be positive");
    return grr.c_grr * int_pow(level - x, 2 * grr.p0) * std::pow(maturity, 0.5 * (4.0 - grr.gamma0));
}

double concentration_bound(double b, double center, double maturity, const VolBounds& vol, double rho)
{
    if (b <= center)
        return 1.0;
    if (!(rho > -1.0 && rho < 1.0))
        throw InvalidArgument("concentration_bound: rho must lie strictly inside (-1,1)");
    const double scale = 2.0 * vol.beta * vol.beta * (1.0 - rho * rho) * maturity;
    const double gap = b - center;
    return std::exp(-gap * gap / scale);
}

double density_bound(double z, double x, double maturity, const DensityBoundParams& params)
{
    const double gap = z - x;
    return params.c1 / std::sqrt(maturity) * std::exp(-gap * gap / (2.0 * params.c2 * maturity));
}

double cdf_bound(double b, double x, double maturity, const DensityBoundParams& params)
{
    const double y = (b - x) / std::sqrt(params.c2 * maturity);
    return params.c1 * std::sqrt(2.0 * std::numbers::pi * params.c2) * normal_upper_tail(y);
}

double cdf_bound_quadrature(double b, double x, double maturity, const DensityBoundParams& params)
{
    // z = b + u sqrt(c2 T); the Gaussian factor at u = 0 is pulled out.
    const double y = (b - x) / std::sqrt(params.c2 * maturity);
    auto f = [y](double u) { return std::exp(-y * u - 0.5 * u * u); };
    double error = 0.0;
    const double integral = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        f, 0.0, std::numeric_limits<double>::infinity(), 20, 1e-14, &error);
    return params.c1 * std::sqrt(params.c2) * std::exp(-0.5 * y * y) * integral;
}

double combined_bound(double b, double x, double center, double maturity, const VolBounds& vol, double rho,
                      const DensityBoundParams& params)
{
    return std::min(concentration_bound(b, center, maturity, vol, rho), cdf_bound(b, x, maturity, params));
}

double default_variance_scale(const VolBounds& vol, double rho)
{
    return vol.beta * vol.beta * (1.0 - rho * rho);
}

DensityBoundParams calibrate_cdf_bound(std::span<const TailObservation> training, double b, double x,
                                       double c2, double headroom)
{
    if (training.empty())
        throw InsufficientData("calibrate_cdf_bound: no training observations");
    const DensityBoundParams unit{1.0, c2};
    double worst = 0.0;
    for (const auto& obs : training) {
        const double base = cdf_bound(b, x, obs.maturity, unit);
        if (base <= 0.0) {
            if (obs.probability > 0.0)
                throw NumericalFailure("calibrate_cdf_bound: bound shape underflows where mass was observed");
            continue;
        }
        worst = std::max(worst, obs.probability / base);
    }
    return DensityBoundParams{headroom * worst, c2};
}

DensityBoundParams calibrate_density_bound(std::span<const double> z, std::span<const double> density,
                                           double x, double maturity, double c2, double headroom)
{
    if (z.size() != density.size() || z.empty())
        throw InvalidArgument("calibrate_density_bound: abscissae and density must match and be non-empty");
    const DensityBoundParams unit{1.0, c2};
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        worst = std::max(worst, density[i] / density_bound(z[i], x, maturity, unit));
    return DensityBoundParams{headroom * worst, c2};
}

std::vector<double> kernel_density(std::span<const double> samples, std::span<const double> z, double bandwidth)
{
    if (samples.size() < 2)
        throw InsufficientData("kernel_density: need at least two samples");
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (bandwidth <= 0.0) {
        const SampleMoments m = sample_moments(samples);
        bandwidth = 1.06 * std::sqrt(m.variance) * std::pow(static_cast<double>(samples.size()), -0.2);
        if (!(bandwidth > 0.0))
            throw NumericalFailure("kernel_density: degenerate sample (zero spread)");
    }
    const double reach = 9.0 * bandwidth;
    const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        auto lo = std::lower_bound(sorted.begin(), sorted.end(), z[i] - reach);
        auto hi = std::upper_bound(sorted.begin(), sorted.end(), z[i] + reach);
        double acc = 0.0;
        for (auto it = lo; it != hi; ++it)
            acc += normal_pdf((z[i] - *it) / bandwidth);
        out[i] = acc * norm;
    }
    return out;
}

GrrSample grr_sample(const PathBatch& batch, const GrrParams& grr, unsigned workers)
{
    grr.validate();
    GrrSample s;
    s.y.resize(batch.n_paths);
    s.sup_deviation.resize(batch.n_paths);
    const double dt = batch.grid.dt();
    parallel_blocks(batch.n_paths, workers, [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            const auto x = batch.x_path(p);
            s.y[p] = y_functional(x, dt, grr);
            double dev = 0.0;
            for (double v : x)
                dev = std::max(dev, std::abs(v - x[0]));
            s.sup_deviation[p] = dev;
        }
    });
    return s;
}

GrrParams calibrate_grr(const GrrSample& training, double level, double x, double maturity, GrrParams grr,
                        double headroom)
{
    grr.c_grr = 1.0;
    grr.validate();
    const double unit_radius = grr_radius(level, maturity, grr, x);
    double min_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < training.y.size(); ++p)
        if (training.sup_deviation[p] > level - x)
            min_ratio = std::min(min_ratio, training.y[p] / unit_radius);
    if (!std::isfinite(min_ratio))
        throw InsufficientData("calibrate_grr: no training path exceeds the level; nothing to calibrate against");
    grr.c_grr = min_ratio / headroom;
    return grr;
}

std::size_t grr_violations(const GrrSample& sample, double level, double x, double maturity, const GrrParams& grr)
{
    const double radius = grr_radius(level, maturity, grr, x);
    std::size_t count = 0;
    for (std::size_t p = 0; p < sample.y.size(); ++p)
        if (sample.y[p] <= radius && sample.sup_deviation[p] > level - x)
            ++count;
    return count;
}

} // namespace rbarrier
