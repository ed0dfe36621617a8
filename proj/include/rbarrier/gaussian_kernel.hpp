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
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rbarrier {

/// Uniform grid t_i = i * T / n_steps, i = 0..n_steps.
struct TimeGrid {
    double maturity = 0.0;
    int n_steps = 0;

    double dt() const noexcept { return maturity / n_steps; }
    double time(int i) const noexcept { return i == n_steps ? maturity : i * dt(); }
    /// All n_steps + 1 points including t_0 = 0.
    std::vector<double> points() const;
    /// The n_steps positive points t_1..t_n.
    std::vector<double> positive_points() const;
};

/// Requires 0 < T <= 1 and n_steps >= 2.
TimeGrid build_grid(double maturity, int n_steps);

/// Cov(W^H_t, W^H_s) for the Riemann-Liouville process
/// W^H_t = sqrt(2H) int_0^t (t-u)^{H-1/2} dW_u, by adaptive Gauss-Kronrod
/// quadrature (relative tolerance 1e-10). The diagonal is t^{2H} exactly.
double volterra_autocov(double t, double s, double hurst);

/// Cov(W^H_t, W_s) in closed form.
double volterra_cross_cov(double t, double s, double hurst);

/// Covariance of the stacked vector (W_{t_1..t_n}, W^H_{t_1..t_n}); the
/// result has dimension 2n with the W block first.
Eigen::MatrixXd volterra_cov(std::span<const double> times, double hurst);
Eigen::MatrixXd volterra_cov(const TimeGrid& grid, double hurst);

struct CholeskyResult {
    Eigen::MatrixXd lower;
    double jitter = 0.0;      // diagonal shift that was finally applied
    int jitter_rounds = 0;    // 0 when the plain factorization succeeded
    int zero_pivots = 0;      // pivots within round-off of zero (rank deficiency)
};

/// Lower Cholesky factor of a symmetric positive-semidefinite matrix.
///
/// Pivots within round-off of zero are treated as exact rank deficiency
/// (the column is zeroed). A clearly negative pivot triggers the jitter
/// schedule: 1e-12 * trace / dim added to the diagonal, growing x10, at most
/// three times. Throws NumericalFailure if the schedule is exhausted.
CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& cov);

/// Factor of the joint (W, W^H) covariance on a set of times.
///
/// Internally the variables are ordered time-major,
/// (W_{t_1}, W^H_{t_1}, W_{t_2}, W^H_{t_2}, ...), so the factor on a prefix
/// of the times is the leading block of the factor on all of them.
struct CovFactor {
    std::vector<double> times;       // t_1..t_n
    double hurst = 0.5;
    std::vector<double> packed;      // row-major lower triangle, dim*(dim+1)/2
    double jitter = 0.0;
    int jitter_rounds = 0;
    int zero_pivots = 0;

    int n_times() const noexcept { return static_cast<int>(times.size()); }
    int dim() const noexcept { return 2 * n_times(); }
    const double* row(int i) const noexcept
    {
        return packed.data() + static_cast<std::size_t>(i) * (i + 1) / 2;
    }
};

/// Factorizes volterra_cov(times, H) after permuting it to time-major order.
CovFactor factorize_volterra(std::span<const double> times, double hurst);
CovFactor factorize_volterra(const TimeGrid& grid, double hurst);

/// One path's Gaussian inputs. dW and dB are increments over
/// (t_{i-1}, t_i]; WH holds W^H at t_1..t_n.
struct JointGaussianSample {
    std::vector<double> dW;
    std::vector<double> WH;
    std::vector<double> dB;
};

/// Gaussian inputs for a contiguous range of paths, stored time-major:
/// value for time index i and path p is at [i * n_paths + p].
struct JointGaussianBlock {
    std::size_t n_paths = 0;
    std::size_t n_times = 0;
    std::vector<double> W;
    std::vector<double> WH;
    std::vector<double> dB;

    double w(std::size_t i, std::size_t p) const noexcept { return W[i * n_paths + p]; }
    double wh(std::size_t i, std::size_t p) const noexcept { return WH[i * n_paths + p]; }
    double db(std::size_t i, std::size_t p) const noexcept { return dB[i * n_paths + p]; }
};

/// Samples paths first_path .. first_path+count-1. Path p uses the streams
/// (seed, p, joint_gaussian) and (seed, p, independent_bm) only, and the
/// per-path arithmetic does not depend on count, so every path's values are
/// independent of how paths are grouped into blocks.
void sample_joint_block(const CovFactor& factor, std::uint64_t seed, std::uint64_t first_path,
                        std::size_t count, JointGaussianBlock& out);

JointGaussianSample sample_joint(const CovFactor& factor, std::uint64_t seed, std::uint64_t path);

} // namespace rbarrier
