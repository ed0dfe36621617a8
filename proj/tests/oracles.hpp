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

// Reference values computed independently of the library code.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

// 30-digit reference values from an arbitrary-precision evaluation.
inline constexpr double kAutocovH02_1_05 = 0.393918082962616025673586287622;
inline constexpr double kEuropean = 0.835318022476200526201213040735;
inline constexpr double kUpAndIn = 0.73939208714314859442835060694;
inline constexpr double kHitProbability = 0.476582294281279011764910864732;

inline double phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double gauss_pdf(double y, double mean, double var)
{
    return std::exp(-(y - mean) * (y - mean) / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

// Black-Scholes call with r = 0.
inline double call(double s, double k, double t, double sigma)
{
    const double v = sigma * std::sqrt(t);
    const double d1 = std::log(s / k) / v + 0.5 * v;
    return s * phi(d1) - k * phi(d1 - v);
}

// Density of X_T on {X_T < b, sup X < b} for X = x + mu t + sigma W (method of images).
inline double killed_density(double y, double x, double b, double mu, double sigma, double t)
{
    const double var = sigma * sigma * t;
    return gauss_pdf(y, x + mu * t, var) -
           std::exp(2.0 * mu * (b - x) / (sigma * sigma)) * gauss_pdf(y, 2.0 * b - x + mu * t, var);
}

// Up-and-out call by quadrature of the killed density; up-and-in = call - out.
inline double up_and_in(double s0, double k, double barrier, double t, double sigma)
{
    const double x = std::log(s0), b = std::log(barrier), mu = -0.5 * sigma * sigma;
    if (k >= barrier)
        return call(s0, k, t, sigma);
    auto f = [&](double y) { return (std::exp(y) - k) * killed_density(y, x, b, mu, sigma, t); };
    const double out = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, std::log(k), b, 15, 1e-13);
    return call(s0, k, t, sigma) - out;
}

// P(sup X >= b) = 1 - int_{-inf}^b killed density.
inline double hit_probability(double x, double b, double mu, double sigma, double t)
{
    auto f = [&](double y) { return killed_density(y, x, b, mu, sigma, t); };
    const double lo = x + mu * t - 12.0 * sigma * std::sqrt(t);
    const double stay = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, b, 15, 1e-14);
    return 1.0 - stay;
}

// int_0^s (t-u)^{H-1/2} (s-u)^{H-1/2} du * 2H by a midpoint sum after
// subtracting the v^a d^a part in closed form (v = s - u, d = t - s).
inline double volterra_autocov_riemann(double t, double s, double h, long n = 2000000)
{
    const double a = h - 0.5, d = t - s;
    const double dv = s / static_cast<double>(n);
    double sum = 0.0;
    for (long i = 0; i < n; ++i) {
        const double v = (i + 0.5) * dv;
        sum += std::pow(v, a) * (std::pow(d + v, a) - std::pow(d, a));
    }
    return 2.0 * h * (sum * dv + std::pow(d, a) * std::pow(s, a + 1.0) / (a + 1.0));
}

} // namespace oracle
