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

#include "nearfield/beams.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/gain.hpp"
#include "nearfield/units.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace nearfield
{
    namespace
    {
        constexpr double kSeriesLimit = 1.5;
        constexpr int kMaxTerms = 500;
        constexpr double kEps = 1e-17;

        FresnelPair fresnel_series(double x)
        {
            // C = sum (-1)^k t^(2k) x / ((2k)! (4k+1)),  S = sum (-1)^k t^(2k+1) x / ((2k+1)! (4k+3)),
            // t = pi x^2 / 2; the running term is t^m x / m!.
            const double t = pi_v<double> * x * x / 2;
            double term = x;
            double c = x, s = 0;
            for (int m = 1; m < kMaxTerms; ++m)
            {
                term *= t / m;
                const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
                const double contribution = sign * term / (2 * m + 1);
                if (m % 2 == 0)
                    c += contribution;
                else
                    s += contribution;
                if (term < kEps * std::abs(c))
                    break;
            }
            return {c, s};
        }

        // Modified Lentz evaluation of the continued fraction for erfc at complex argument.
        FresnelPair fresnel_continued_fraction(double x)
        {
            using cd = std::complex<double>;
            constexpr double tiny = 1e-300;
            const double pix2 = pi_v<double> * x * x;
            cd b(1.0, -pix2);
            cd c(1.0 / tiny, 0.0);
            cd d = 1.0 / b;
            cd h = d;
            int n = -1;
            bool converged = false;
            for (int k = 2; k < kMaxTerms; ++k)
            {
                n += 2;
                const double a = -double(n) * double(n + 1);
                b += 4.0;
                d = 1.0 / (a * d + b);
                c = b + a / c;
                const cd del = c * d;
                h *= del;
                if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16)
                {
                    converged = true;
                    break;
                }
            }
            if (!converged)
                throw NumericalError("Fresnel continued fraction did not converge", 0.0, 0.0);
            h *= cd(x, -x);
            const cd cs = cd(0.5, 0.5) * (1.0 - std::polar(1.0, pix2 / 2) * h);
            return {cs.real(), cs.imag()};
        }
    }

    FresnelPair fresnel(double x)
    {
        const double ax = std::abs(x);
        FresnelPair r = ax <= kSeriesLimit ? fresnel_series(ax) : fresnel_continued_fraction(ax);
        if (x < 0)
        {
            r.c = -r.c;
            r.s = -r.s;
        }
        return r;
    }

    double fresnel_array_factor(double x)
    {
        if (x < 0)
            throw DomainError("fresnel_array_factor requires x >= 0");
        if (x == 0)
            return 1.0;
        const auto [c, s] = fresnel(std::sqrt(x));
        const double m = c * c + s * s;
        return m * m / (x * x);
    }

    FocalPoint FocalPoint::at(double distance)
    {
        if (!(distance > 0) || !std::isfinite(distance))
            throw DomainError("focal distance must be positive and finite; use FocalPoint::infinity()");
        return FocalPoint(distance);
    }

    double FocalPoint::distance() const
    {
        if (!distance_)
            throw DomainError("focal point is at infinity");
        return *distance_;
    }

    std::string FocalPoint::label() const
    {
        if (!distance_)
            return "inf";
        std::ostringstream os;
        os.precision(10);
        os << *distance_;
        return os.str();
    }

    double gain_at_focus(double distance, double fraunhofer_array)
    {
        if (!(distance > 0) || !(fraunhofer_array > 0))
            throw DomainError("gain_at_focus requires z > 0 and d_FA > 0");
        return fresnel_array_factor(fraunhofer_array / (8 * distance));
    }

    double gain_off_focus(double distance, const FocalPoint &focal, double fraunhofer_array)
    {
        if (!(distance > 0) || !(fraunhofer_array > 0))
            throw DomainError("gain_off_focus requires d > 0 and d_FA > 0");
        if (focal.is_infinite())
            return fresnel_array_factor(fraunhofer_array / (8 * distance));
        const double z = focal.distance();
        if (distance == z)
            return 1.0;
        // d_FA / (8 z_eff) with z_eff = d z / |d - z|
        return fresnel_array_factor(fraunhofer_array * std::abs(distance - z) / (8 * distance * z));
    }

    DepthOfFocus depth_of_focus(const FocalPoint &focal, double fraunhofer_array)
    {
        if (!(fraunhofer_array > 0))
            throw DomainError("d_FA must be positive");
        const double dfa = fraunhofer_array;
        if (focal.is_infinite())
            return {focal, dfa / 10, std::nullopt, std::nullopt};
        const double z = focal.distance();
        const double lower = dfa * z / (dfa + 10 * z);
        if (z < dfa / 10)
            return {focal, lower, dfa * z / (dfa - 10 * z), 20 * dfa * z * z / (dfa * dfa - 100 * z * z)};
        return {focal, lower, std::nullopt, std::nullopt};
    }

    double half_power_argument()
    {
        static const double root = [] {
            double lo = 0.0, hi = 2.0; // A(0) = 1 > 0.5 > A(2), A decreasing in between
            for (int i = 0; i < 200 && hi - lo > 1e-15; ++i)
            {
                const double mid = (lo + hi) / 2;
                (fresnel_array_factor(mid) > 0.5 ? lo : hi) = mid;
            }
            return (lo + hi) / 2;
        }();
        return root;
    }

    DepthOfFocus half_power_crossings(const FocalPoint &focal, double fraunhofer_array)
    {
        if (!(fraunhofer_array > 0))
            throw DomainError("d_FA must be positive");
        const double x = half_power_argument();
        const double dfa = fraunhofer_array;
        if (focal.is_infinite())
            return {focal, dfa / (8 * x), std::nullopt, std::nullopt};
        const double z = focal.distance();
        // x = d_FA |d - z| / (8 d z) solved for d on either side of z.
        const double k = 8 * x * z / dfa;
        const double lower = z / (1 + k);
        if (k < 1)
        {
            const double upper = z / (1 - k);
            return {focal, lower, upper, upper - lower};
        }
        return {focal, lower, std::nullopt, std::nullopt};
    }

    FocusProfile focus_profile(const FocalPoint &focal, double fraunhofer_array, const std::vector<double> &distances)
    {
        FocusProfile p{focal, fraunhofer_array, {}};
        p.samples.reserve(distances.size());
        for (const double d : distances)
            p.samples.emplace_back(d, gain_off_focus(d, focal, fraunhofer_array));
        return p;
    }

    double exact_focus_gain(const ArraySpec &spec, double distance, const FocalPoint &focal, ChannelModel model,
                            const QuadratureConfig &quad, int threads)
    {
        const auto h = channel_vector(spec, SourcePoint(0.0, 0.0, distance), model, quad, threads);
        Eigen::VectorXcd w;
        if (focal.is_infinite())
            w = Eigen::VectorXcd::Constant(h.size(), Complex(1.0 / std::sqrt(double(h.size())), 0.0));
        else
        {
            const auto hz = channel_vector(spec, SourcePoint(0.0, 0.0, focal.distance()), model, quad, threads);
            w = hz.coefficients.conjugate() / hz.coefficients.norm();
        }
        const Complex received = h.coefficients.transpose() * w;
        const double reference = alpha_total(distance, 1.0, spec.antenna_area());
        return std::norm(received) / (double(spec.num_antennas()) * reference);
    }

} // namespace nearfield
