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

#include <span>
#include <vector>

#include "rbarrier/path_simulator.hpp"
#include "rbarrier/vol_models.hpp"

namespace rbarrier {

/// Exponents of the control functional; require p0 - 2 > gamma0 > 4.
struct GrrParams {
    int p0 = 7;
    double gamma0 = 4.5;
    double c_grr = 1.0;

    void validate() const;
};

/// Amplitude c1 and variance scale c2 of the Gaussian-type density bound
///   p(z) <= c1 / sqrt(T) * exp(-(z - x)^2 / (2 c2 T)).
struct DensityBoundParams {
    double c1 = 1.0;
    double c2 = 1.0;

    void validate() const;
};

/// Y = int int_{[0,T]^2} (X_t - X_s)^{2 p0} / |t - s|^{gamma0} dt ds as a
/// midpoint sum over off-diagonal cells of the grid (cell values are the
/// averages of the two endpoint values). Only the first `n_cells` cells are
/// used when given, i.e. Y_r with r = n_cells * dt.
double y_functional(std::span<const double> path, double dt, const GrrParams& grr);
double y_functional(std::span<const double> path, double dt, const GrrParams& grr, int n_cells);

/// R_T(level) = C_grr (level - x)^{2 p0} T^{(4 - gamma0)/2}; requires level > x.
double grr_radius(double level, double maturity, const GrrParams& grr, double x);

/// exp(-(b - center)^2 / (2 beta^2 (1 - rho^2) T)); 1 when b <= center.
double concentration_bound(double b, double center, double maturity, const VolBounds& vol,
                           double rho);

double density_bound(double z, double x, double maturity, const DensityBoundParams& params);

/// int_b^inf density_bound dz = c1 sqrt(2 pi c2) Q((b - x) / sqrt(c2 T)).
double cdf_bound(double b, double x, double maturity, const DensityBoundParams& params);

/// Same integral by adaptive quadrature; kept as an independent check.
double cdf_bound_quadrature(double b, double x, double maturity, const DensityBoundParams& params);

/// min(concentration_bound(b, center, ...), cdf_bound(b, x, ...)).
double combined_bound(double b, double x, double center, double maturity, const VolBounds& vol,
                      double rho, const DensityBoundParams& params);

/// c2 used by the calibration protocol: beta^2 (1 - rho^2).
double default_variance_scale(const VolBounds& vol, double rho);

/// Observed tail probability at a maturity, for calibration.
struct TailObservation {
    double maturity = 0.0;
    double probability = 0.0;
};

/// Smallest c1 (times `headroom`) such that cdf_bound at fixed c2 dominates
/// every observation.
DensityBoundParams calibrate_cdf_bound(std::span<const TailObservation> training, double b, double x,
                                       double c2, double headroom = 1.2);

/// Smallest c1 (times `headroom`) such that density_bound at fixed c2
/// dominates a density estimate on the given abscissae.
DensityBoundParams calibrate_density_bound(std::span<const double> z, std::span<const double> density,
                                           double x, double maturity, double c2, double headroom = 1.2);

/// Gaussian kernel density estimate with Silverman's bandwidth when
/// `bandwidth` <= 0.
std::vector<double> kernel_density(std::span<const double> samples, std::span<const double> z,
                                   double bandwidth = 0.0);

/// Per-path Y_T and sup_t |X_t - x| for a batch.
struct GrrSample {
    std::vector<double> y;
    std::vector<double> sup_deviation;
};
GrrSample grr_sample(const PathBatch& batch, const GrrParams& grr, unsigned workers = 1);

/// Largest C_grr / headroom such that every training path whose excursion
/// exceeds `level - x` has Y_T > R_T(level). Returns GrrParams with c_grr set.
GrrParams calibrate_grr(const GrrSample& training, double level, double x, double maturity,
                        GrrParams grr, double headroom = 1.2);

/// Number of paths with Y_T <= R_T(level) but sup |X - x| > level - x.
std::size_t grr_violations(const GrrSample& sample, double level, double x, double maturity,
                           const GrrParams& grr);

} // namespace rbarrier
