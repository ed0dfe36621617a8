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


#include "rbarrier/gaussian_kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rbarrier/error.hpp"
#include "rbarrier/philox.hpp"

namespace rbarrier {

namespace {

constexpr double kSeriesTolerance = 1e-17;
constexpr int kSeriesMaxTerms = 4000;
constexpr double kJitterBase = 1e-12;
constexpr int kJitterRounds = 3;

void require_hurst(double hurst)
{
    if (!(hurst > 0.0 && hurst < 1.0)) {
        std::ostringstream msg;
        msg << "Hurst exponent must lie in (0,1), got " << hurst;
        throw InvalidArgument(msg.str());
    }
}

void require_times(std::span<const double> times)
{
    if (times.empty())
        throw InvalidArgument("volterra_cov: need at least one time point");
    double prev = 0.0;
    for (double t : times) {
        if (!(t > prev))
            throw InvalidArgument("volterra_cov: times must be positive and strictly increasing");
        prev = t;
    }
}

// Factor attempt; returns the index of the first clearly negative pivot or -1.
int try_cholesky(Eigen::MatrixXd& a, double pivot_tol, int& zero_pivots, double& bad_pivot)
{
    const Eigen::Index n = a.rows();
    zero_pivots = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
        double d = a(j, j);
        for (Eigen::Index k = 0; k < j; ++k)
            d -= a(j, k) * a(j, k);
        if (d > pivot_tol) {
            const double ljj = std::sqrt(d);
            a(j, j) = ljj;
            for (Eigen::Index i = j + 1; i < n; ++i) {
                double v = a(i, j);
                for (Eigen::Index k = 0; k < j; ++k)
                    v -= a(i, k) * a(j, k);
                a(i, j) = v / ljj;
            }
        } else if (d >= -pivot_tol) {
            ++zero_pivots;
            for (Eigen::Index i = j; i < n; ++i)
                a(i, j) = 0.0;
        } else {
            bad_pivot = d;
            return static_cast<int>(j);
        }
    }
    a.triangularView<Eigen::StrictlyUpper>().setZero();
    return -1;
}

// int_0^L v^a (d + v)^a dv
//   = d^a L^{a+1} / (a+1) (1 + L/d)^{-(a+1)} 2F1(a+1, 2a+2; a+2; L / (L + d)),
// used for L <= 2d so the series argument stays <= 2/3.
double near_integral(double len, double d, double a)
{
    const double x = len / (len + d);
    double term = 1.0;
    double sum = 1.0;
    for (int k = 0; k < kSeriesMaxTerms; ++k) {
        term *= (a + 1.0 + k) * (2.0 * a + 2.0 + k) / ((a + 2.0 + k) * (k + 1.0)) * x;
        sum += term;
        if (std::abs(term) <= kSeriesTolerance * std::abs(sum))
            break;
    }
    return std::pow(d, a) * std::pow(len, a + 1.0) / (a + 1.0) * std::pow(1.0 + len / d, -(a + 1.0)) * sum;
}

// int_lo^s v^{2a} (1 + d/v)^a dv for lo >= 2d, by the binomial series in d/v.
double far_integral(double lo, double s, double d, double a)
{
    double binom = 1.0;
    double sum = 0.0;
    for (int k = 0; k < kSeriesMaxTerms; ++k) {
        if (k > 0)
            binom *= (a - (k - 1)) / k;
        const double p = 2.0 * a + 1.0 - k;
        const double part = std::abs(p) < 1e-12
                                ? std::pow(d, k) * std::log(s / lo)
                                : (std::pow(s, 2.0 * a + 1.0) * std::pow(d / s, k) -
                                   std::pow(lo, 2.0 * a + 1.0) * std::pow(d / lo, k)) /
                                      p;
        const double term = binom * part;
        sum += term;
        if (k > 2 && std::abs(term) <= kSeriesTolerance * std::abs(sum))
            break;
    }
    return sum;
}

} // namespace

std::vector<double> TimeGrid::points() const
{
    std::vector<double> pts(static_cast<std::size_t>(n_steps) + 1);
    for (int i = 0; i <= n_steps; ++i)
        pts[i] = time(i);
    return pts;
}

std::vector<double> TimeGrid::positive_points() const
{
    std::vector<double> pts(static_cast<std::size_t>(n_steps));
    for (int i = 1; i <= n_steps; ++i)
        pts[i - 1] = time(i);
    return pts;
}

TimeGrid build_grid(double maturity, int n_steps)
{
    if (!(maturity > 0.0) || !std::isfinite(maturity))
        throw InvalidArgument("build_grid: maturity must be positive");
    if (maturity > 1.0)
        throw InvalidArgument("build_grid: maturity must not exceed 1 year");
    if (n_steps < 2)
        throw InvalidArgument("build_grid: n_steps must be at least 2");
    return TimeGrid{maturity, n_steps};
}

double volterra_cross_cov(double t, double s, double hurst)
{
    require_hurst(hurst);
    const double m = std::min(t, s);
    if (m <= 0.0)
        return 0.0;
    const double e = hurst + 0.5;
    return std::sqrt(2.0 * hurst) / e * (std::pow(t, e) - std::pow(t - m, e));
}

double volterra_autocov(double t, double s, double hurst)
{
    require_hurst(hurst);
    if (t < s)
        std::swap(t, s);
    if (s <= 0.0)
        return 0.0;
    if (t == s)
        return std::pow(t, 2.0 * hurst);

    // int_0^s (t-u)^a (s-u)^a du with a = H - 1/2; v = s - u, d = t - s.
    const double a = hurst - 0.5;
    const double d = t - s;
    const double head = std::min(s, 2.0 * d);
    double integral = near_integral(head, d, a);
    if (s > head)
        integral += far_integral(head, s, d, a);
    return 2.0 * hurst * integral;
}

Eigen::MatrixXd volterra_cov(std::span<const double> times, double hurst)
{
    require_hurst(hurst);
    require_times(times);
    const Eigen::Index n = static_cast<Eigen::Index>(times.size());
    Eigen::MatrixXd cov(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double ti = times[i];
        for (Eigen::Index j = 0; j <= i; ++j) {
            const double tj = times[j];
            const double ww = std::min(ti, tj);
            const double hh = volterra_autocov(ti, tj, hurst);
            cov(i, j) = cov(j, i) = ww;
            cov(n + i, n + j) = cov(n + j, n + i) = hh;
        }
        for (Eigen::Index j = 0; j < n; ++j) {
            // row W^H_{t_i}, column W_{t_j}
            const double hw = volterra_cross_cov(ti, times[j], hurst);
            cov(n + i, j) = cov(j, n + i) = hw;
        }
    }
    return cov;
}

Eigen::MatrixXd volterra_cov(const TimeGrid& grid, double hurst)
{
    const auto pts = grid.positive_points();
    return volterra_cov(std::span<const double>(pts), hurst);
}

CholeskyResult cholesky_with_jitter(const Eigen::MatrixXd& cov)
{
    if (cov.rows() != cov.cols() || cov.rows() == 0)
        throw InvalidArgument("cholesky_with_jitter: matrix must be square and non-empty");
    const double dim = static_cast<double>(cov.rows());
    const double max_diag = cov.diagonal().cwiseAbs().maxCoeff();
    const double pivot_tol = 8.0 * dim * std::numeric_limits<double>::epsilon() * max_diag;
    const double base_jitter = kJitterBase * cov.trace() / dim;

    CholeskyResult result;
    int bad_index = -1;
    double bad_pivot = 0.0;
    for (int round = 0; round <= kJitterRounds; ++round) {
        const double jitter = round == 0 ? 0.0 : base_jitter * std::pow(10.0, round - 1);
        Eigen::MatrixXd work = cov;
        work.diagonal().array() += jitter;
        int zero_pivots = 0;
        bad_index = try_cholesky(work, pivot_tol, zero_pivots, bad_pivot);
        if (bad_index < 0) {
            result.lower = std::move(work);
            result.jitter = jitter;
            result.jitter_rounds = round;
            result.zero_pivots = zero_pivots;
            return result;
        }
    }
    std::ostringstream msg;
    msg << "Cholesky factorization failed after " << kJitterRounds
        << " jitter rounds: dim=" << cov.rows() << ", trace=" << cov.trace()
        << ", min diag=" << cov.diagonal().minCoeff() << ", max diag=" << max_diag
        << ", pivot " << bad_index << " = " << bad_pivot
        << ", asymmetry=" << (cov - cov.transpose()).cwiseAbs().maxCoeff();
    throw NumericalFailure(msg.str());
}

CovFactor factorize_volterra(std::span<const double> times, double hurst)
{
    const Eigen::MatrixXd stacked = volterra_cov(times, hurst);
    const Eigen::Index n = static_cast<Eigen::Index>(times.size());

    // stacked index -> time-major index
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        perm.indices()[i] = static_cast<int>(2 * i);
        perm.indices()[n + i] = static_cast<int>(2 * i + 1);
    }
    const Eigen::MatrixXd interleaved = perm * stacked * perm.transpose();
    const CholeskyResult chol = cholesky_with_jitter(interleaved);

    CovFactor f;
    f.times.assign(times.begin(), times.end());
    f.hurst = hurst;
    f.jitter = chol.jitter;
    f.jitter_rounds = chol.jitter_rounds;
    f.zero_pivots = chol.zero_pivots;
    const Eigen::Index dim = 2 * n;
    f.packed.resize(static_cast<std::size_t>(dim) * (dim + 1) / 2);
    std::size_t pos = 0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index k = 0; k <= i; ++k)
            f.packed[pos++] = chol.lower(i, k);
    return f;
}

CovFactor factorize_volterra(const TimeGrid& grid, double hurst)
{
    const auto pts = grid.positive_points();
    return factorize_volterra(std::span<const double>(pts), hurst);
}

void sample_joint_block(const CovFactor& factor, std::uint64_t seed, std::uint64_t first_path,
                        std::size_t count, JointGaussianBlock& out)
{
    const std::size_t n = factor.times.size();
    const std::size_t dim = 2 * n;
    const std::size_t m = count;

    std::vector<double> z(dim * m);
    for (std::size_t p = 0; p < m; ++p) {
        RngStream stream(seed, first_path + p, StreamTag::joint_gaussian);
        for (std::size_t k = 0; k < dim; ++k)
            z[k * m + p] = stream.normal();
    }

    // g = L z, four rows of L at a time, vectorized across paths. Each entry
    // is summed over k in ascending order for every path and block size.
    constexpr std::size_t kRows = 4;
    std::vector<double> g(dim * m, 0.0);
    for (std::size_t i0 = 0; i0 < dim; i0 += kRows) {
        const std::size_t rows = std::min(kRows, dim - i0);
        const double* lr[kRows] = {};
        double* gr[kRows] = {};
        for (std::size_t r = 0; r < rows; ++r) {
            lr[r] = factor.row(static_cast<int>(i0 + r));
            gr[r] = g.data() + (i0 + r) * m;
        }
        const std::size_t k_end = i0 + rows;
        for (std::size_t k = 0; k < k_end; ++k) {
            double l[kRows] = {};
            for (std::size_t r = 0; r < rows; ++r)
                l[r] = k <= i0 + r ? lr[r][k] : 0.0;
            const double* zk = z.data() + k * m;
            if (rows == kRows) {
                double* g0 = gr[0];
                double* g1 = gr[1];
                double* g2 = gr[2];
                double* g3 = gr[3];
                for (std::size_t p = 0; p < m; ++p) {
                    const double zp = zk[p];
                    g0[p] += l[0] * zp;
                    g1[p] += l[1] * zp;
                    g2[p] += l[2] * zp;
                    g3[p] += l[3] * zp;
                }
            } else {
                for (std::size_t r = 0; r < rows; ++r)
                    for (std::size_t p = 0; p < m; ++p)
                        gr[r][p] += l[r] * zk[p];
            }
        }
    }

    out.n_paths = m;
    out.n_times = n;
    out.W.resize(n * m);
    out.WH.resize(n * m);
    out.dB.resize(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(g.data() + (2 * i) * m, m, out.W.data() + i * m);
        std::copy_n(g.data() + (2 * i + 1) * m, m, out.WH.data() + i * m);
    }
    for (std::size_t p = 0; p < m; ++p) {
        RngStream stream(seed, first_path + p, StreamTag::independent_bm);
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double dt = factor.times[i] - prev;
            prev = factor.times[i];
            out.dB[i * m + p] = std::sqrt(dt) * stream.normal();
        }
    }
}

JointGaussianSample sample_joint(const CovFactor& factor, std::uint64_t seed, std::uint64_t path)
{
    JointGaussianBlock block;
    sample_joint_block(factor, seed, path, 1, block);
    const std::size_t n = block.n_times;
    JointGaussianSample s;
    s.dW.resize(n);
    s.WH.resize(n);
    s.dB.resize(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.dW[i] = block.W[i] - prev;
        prev = block.W[i];
        s.WH[i] = block.WH[i];
        s.dB[i] = block.dB[i];
    }
    return s;
}

} // namespace rbarrier
