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

#ifndef NEARFIELD_GAIN_HPP
#define NEARFIELD_GAIN_HPP

#include "nearfield/errors.hpp"
#include "nearfield/geometry.hpp"
#include "nearfield/units.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace nearfield
{
    // ---------------------------------------------------------------------------
    // Closed forms. Templated on the scalar so that they can be evaluated in
    // extended precision when used as reference values.
    // ---------------------------------------------------------------------------

    // Free-space (Friis) gain A / (4 pi d^2) of a perpendicular antenna of area A.
    template <typename Scalar>
    Scalar friis_gain(Scalar area, Scalar distance)
    {
        return area / (Scalar(4) * pi_v<Scalar> * distance * distance);
    }

    namespace detail
    {
        // Antiderivative corner term of the |eps|^2 integral, (x, y) already divided by d.
        template <typename Scalar>
        Scalar zeta_corner(Scalar x, Scalar y)
        {
            using std::atan;
            using std::sqrt;
            const Scalar root = sqrt(x * x + y * y + Scalar(1));
            const Scalar xy = x * y;
            const Scalar arg = xy / root;
            // Finite for finite x, y; principal branch is the right one.
            eigen_assert(std::isfinite(double(arg)));
            return xy / (Scalar(3) * (y * y + Scalar(1)) * root) + Scalar(2) / Scalar(3) * atan(arg);
        }
    }

    // Upper bound on |h_n|^2 for a square antenna of side `side` centered at `center`
    // (z = 0) and a source at `source` (z = d > 0). Equals the integral of |eps|^2 over
    // the antenna, i.e. the gain if the field phase were constant over the antenna.
    template <typename Scalar>
    Scalar zeta_bound(const Eigen::Matrix<Scalar, 3, 1> &source, const Eigen::Matrix<Scalar, 3, 1> &center,
                      Scalar side)
    {
        const Scalar d = source.z();
        const Scalar dx = center.x() - source.x();
        const Scalar dy = center.y() - source.y();
        const Scalar xs[2] = {(side / 2 + dx) / d, (side / 2 - dx) / d};
        const Scalar ys[2] = {(side / 2 + dy) / d, (side / 2 - dy) / d};
        Scalar total(0);
        for (const Scalar x : xs)
            for (const Scalar y : ys)
                total += detail::zeta_corner(x, y);
        return total / (Scalar(4) * pi_v<Scalar>);
    }

    inline double zeta_bound(const SourcePoint &source, const Point3 &center, double side)
    {
        return zeta_bound<double>(source.position(), center, side);
    }

    // Total gain of an N-antenna planar array, broadside source at distance d:
    //
    //   alpha = N beta / (3 (N beta pi + 1) sqrt(2 N beta pi + 1))
    //         + 2/(3 pi) atan(N beta pi / sqrt(2 N beta pi + 1)),   beta = A / (4 pi d^2)
    //
    // Strictly increasing in N, bounded by 1/3.
    template <typename Scalar>
    Scalar alpha_total(Scalar distance, Scalar num_antennas, Scalar antenna_area)
    {
        using std::atan;
        using std::sqrt;
        // b = N beta pi = N A / (4 d^2)
        const Scalar b = num_antennas * antenna_area / (Scalar(4) * distance * distance);
        const Scalar root = sqrt(Scalar(2) * b + Scalar(1));
        return b / (Scalar(3) * pi_v<Scalar> * (b + Scalar(1)) * root) +
               Scalar(2) / (Scalar(3) * pi_v<Scalar>)*atan(b / root);
    }

    // Total gain for a source at distance d and angle phi in the XZ-plane.
    // Depends on (N, A) only through N*A; xi(d, 0, N, A) == alpha_total(d, N, A).
    template <typename Scalar>
    Scalar xi_total(Scalar distance, Scalar angle, Scalar num_antennas, Scalar antenna_area)
    {
        using std::abs;
        using std::atan;
        using std::cos;
        using std::sqrt;
        using std::tan;
        if (!(abs(angle) < pi_v<Scalar> / 2))
            throw DomainError("angle must satisfy |phi| < pi/2");
        const Scalar c = cos(angle);
        const Scalar b = num_antennas * antenna_area / (Scalar(4) * distance * distance * c * c);
        const Scalar t = tan(angle);
        const Scalar sb = sqrt(b);
        Scalar total(0);
        for (const Scalar sign : {Scalar(-1), Scalar(1)})
        {
            const Scalar num = b + sign * sb * t;
            const Scalar root = sqrt(Scalar(2) * b + t * t + Scalar(1) + Scalar(2) * sign * sb * t);
            total += num / (Scalar(6) * pi_v<Scalar> * (b + Scalar(1)) * root) +
                     atan(num / root) / (Scalar(3) * pi_v<Scalar>);
        }
        return total;
    }

    // Far-field approximation N beta_{d cos phi} cos^3 phi.
    template <typename Scalar>
    Scalar farfield_gain(Scalar distance, Scalar angle, Scalar num_antennas, Scalar antenna_area)
    {
        using std::abs;
        using std::cos;
        if (!(abs(angle) < pi_v<Scalar> / 2))
            throw DomainError("angle must satisfy |phi| < pi/2");
        const Scalar c = cos(angle);
        return num_antennas * friis_gain(antenna_area, distance * c) * c * c * c;
    }

    // Matched-filter SNR; identical for uplink combining and downlink precoding.
    template <typename Scalar>
    Scalar snr_mf(Scalar total_gain, Scalar transmit_power, Scalar noise_power)
    {
        return total_gain * transmit_power / noise_power;
    }

    // ---------------------------------------------------------------------------
    // Numerical aperture integrals and reports.
    // ---------------------------------------------------------------------------

    enum class GainModel
    {
        exact,        // distances, effective areas and polarization
        properties12, // distances and effective areas only
        property1,    // distances only
        farfield      // N beta
    };

    std::string to_string(GainModel model);

    struct GainContext
    {
        double distance;
        double angle;
        std::int64_t num_antennas;
        double antenna_area;
    };

    struct GainReport
    {
        double value;
        GainModel model;
        GainContext context;
    };

    enum class PropertySet
    {
        distances,                // {1}: free-space pathloss only
        distances_effective_area, // {1,2}: pathloss x projected area
        all                       // {1,2,3}: adds polarization loss
    };

    // Integrates the retained loss factors of |eps|^2 over the full square aperture of
    // side sqrt(N A) for a broadside source at distance d. `all` reproduces
    // alpha_total; the partial sets over-estimate it.
    GainReport aperture_gain(double distance, std::int64_t num_antennas, double antenna_area, PropertySet properties,
                             double rel_tol = 1e-10);

    // Broadside gain keeping only the selected near-field properties ({1} or {1,2}).
    GainReport partial_property_gain(double distance, std::int64_t num_antennas, double antenna_area,
                                     PropertySet properties, double rel_tol = 1e-10);

    GainReport exact_gain(double distance, double angle, std::int64_t num_antennas, double antenna_area);
    GainReport farfield_report(double distance, double angle, std::int64_t num_antennas, double antenna_area);

    struct ScalingPoint
    {
        std::int64_t num_antennas;
        double snr; // linear
    };

    // SNR_MF(N) = xi_{d,0,N} P / (sigma^2 N^rho). Without an explicit reference power,
    // P is calibrated to sigma^2 / xi_{d,0,1} so that N = 1 sits at 0 dB.
    struct ScalingLawCurve
    {
        double rho;
        double reference_power; // P, in units of the noise power
        std::vector<ScalingPoint> points;
    };

    ScalingLawCurve scaling_law_sweep(double distance, double antenna_area, double rho, double noise_power,
                                      const std::vector<std::int64_t> &num_antennas,
                                      std::optional<double> reference_power = std::nullopt);

} // namespace nearfield

#endif
