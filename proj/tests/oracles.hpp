// SPDX-License-Identifier: Apache-2.0
//
// nearfield: radiative near-field channel models for planar antenna arrays
// Copyright (C) 2026 The nearfield authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Test-only reference computations. Deliberately independent of the library's
// quadrature: fixed composite 5-point Gauss-Legendre on uniform panels.

#ifndef NEARFIELD_TESTS_ORACLES_HPP
#define NEARFIELD_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace oracle
{
    inline constexpr double gl5_x[5] = {-0.906179845938663992797626878299, -0.538469310105683091036314420700, 0.0,
                                        0.538469310105683091036314420700, 0.906179845938663992797626878299};
    inline constexpr double gl5_w[5] = {0.236926885056189087514264040720, 0.478628670499366468041291514836,
                                        0.568888888888888888888888888889, 0.478628670499366468041291514836,
                                        0.236926885056189087514264040720};

    template <typename F>
    double composite_1d(const F &f, double a, double b, int panels)
    {
        const double h = (b - a) / panels;
        double total = 0;
        for (int p = 0; p < panels; ++p)
        {
            const double c = a + (p + 0.5) * h;
            for (int i = 0; i < 5; ++i)
                total += gl5_w[i] * f(c + h / 2 * gl5_x[i]);
        }
        return total * h / 2;
    }

    template <typename F, typename T = decltype(std::declval<F>()(0.0, 0.0))>
    T composite_2d(const F &f, double x0, double x1, double y0, double y1, int panels)
    {
        const double hx = (x1 - x0) / panels, hy = (y1 - y0) / panels;
        T total{};
        for (int p = 0; p < panels; ++p)
            for (int i = 0; i < 5; ++i)
            {
                const double x = x0 + (p + 0.5) * hx + hx / 2 * gl5_x[i];
                T row{};
                for (int q = 0; q < panels; ++q)
                    for (int j = 0; j < 5; ++j)
                        row += gl5_w[j] * f(x, y0 + (q + 0.5) * hy + hy / 2 * gl5_x[j]);
                total += gl5_w[i] * row;
            }
        return total * (hx * hy / 4);
    }

    // Fresnel integrals by brute-force quadrature of the defining integrals.
    inline double fresnel_c(double x)
    {
        const int panels = std::max(200, int(std::abs(x) * 400));
        return composite_1d([](double t) { return std::cos(std::numbers::pi * t * t / 2); }, 0.0, x, panels);
    }

    inline double fresnel_s(double x)
    {
        const int panels = std::max(200, int(std::abs(x) * 400));
        return composite_1d([](double t) { return std::sin(std::numbers::pi * t * t / 2); }, 0.0, x, panels);
    }

    // Exact field of a Y-polarized isotropic source, written out from scratch.
    inline std::complex<double> field(double xt, double yt, double d, double x, double y, double lambda)
    {
        const double dx = x - xt, dy = y - yt;
        const double r = std::sqrt(dx * dx + dy * dy + d * d);
        const double amp = std::sqrt(d * (dx * dx + d * d)) / (std::sqrt(4 * std::numbers::pi) * std::pow(r, 2.5));
        return amp * std::exp(std::complex<double>(0, -2 * std::numbers::pi * r / lambda));
    }

    // Maximizes sum log2(1 + g_k p_k) over a grid on the simplex sum p = P (K = 3).
    inline Eigen::Vector3d simplex_grid_argmax(const Eigen::Vector3d &g, double total_power, double step)
    {
        Eigen::Vector3d best = Eigen::Vector3d::Zero();
        double best_value = -1;
        const int n = int(std::round(total_power / step));
        for (int i = 0; i <= n; ++i)
            for (int j = 0; i + j <= n; ++j)
            {
                const Eigen::Vector3d p(i * step, j * step, (n - i - j) * step);
                double v = 0;
                for (int k = 0; k < 3; ++k)
                    v += std::log2(1 + g[k] * p[k]);
                if (v > best_value)
                {
                    best_value = v;
                    best = p;
                }
            }
        return best;
    }

    inline Eigen::VectorXcd random_unit_vector(std::mt19937_64 &rng, Eigen::Index n)
    {
        std::normal_distribution<double> normal;
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i)
            v[i] = {normal(rng), normal(rng)};
        return v.normalized();
    }

} // namespace oracle

#endif
