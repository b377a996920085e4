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

#ifndef NEARFIELD_REGIONS_HPP
#define NEARFIELD_REGIONS_HPP

#include "nearfield/field.hpp"
#include "nearfield/gain.hpp"
#include "nearfield/geometry.hpp"
#include "nearfield/quadrature.hpp"

#include <cmath>
#include <complex>

namespace nearfield
{
    // Classical far-field boundary 2 D^2 / lambda for an aperture of maximum length D.
    template <typename Scalar>
    Scalar fraunhofer_distance(Scalar max_length, Scalar wavelength)
    {
        return Scalar(2) * max_length * max_length / wavelength;
    }

    // 2 W^2 / lambda with W = D sqrt(N); equals N times the per-antenna distance.
    template <typename Scalar>
    Scalar fraunhofer_array_distance(Scalar num_antennas, Scalar antenna_diagonal, Scalar wavelength)
    {
        return Scalar(2) * antenna_diagonal * antenna_diagonal * num_antennas / wavelength;
    }

    // 2 W = 2 D sqrt(N). Wavelength-independent: beyond it the array gain is
    // within a few percent of the plane-wave maximum.
    template <typename Scalar>
    Scalar bjornson_distance(Scalar num_antennas, Scalar antenna_diagonal)
    {
        using std::sqrt;
        return Scalar(2) * antenna_diagonal * sqrt(num_antennas);
    }

    struct RegionReport
    {
        double fraunhofer;       // d_F, per antenna
        double fraunhofer_array; // d_FA = N d_F
        double bjornson;         // d_B = 2 W
        double array_diagonal;   // W
        double antenna_diagonal; // D
    };

    RegionReport region_report(const ArraySpec &spec);

    // |integral E|^2 / (A integral |E|^2) over a square of side `side` centered at
    // `center`; 1 for a perpendicular plane wave. `field` maps (x, y) to a complex value.
    template <typename Field>
    double normalized_antenna_gain(const Field &field, const Point3 &center, double side,
                                   const QuadratureConfig &quad = {}, int start_order = 0)
    {
        const double x0 = center.x() - side / 2, x1 = center.x() + side / 2;
        const double y0 = center.y() - side / 2, y1 = center.y() + side / 2;
        const auto coherent = integrate_rectangle(
            [&](double x, double y) { return std::complex<double>(field(x, y)); }, x0, x1, y0, y1, quad, start_order);
        const auto power = integrate_rectangle([&](double x, double y) { return std::norm(field(x, y)); }, x0, x1, y0,
                                               y1, quad, start_order);
        return std::norm(coherent.value) / (side * side * power.value);
    }

    enum class ArrayGainMode
    {
        exact, // per-antenna field integrals
        bound  // alpha_{d,N} / (N alpha_{d,1})
    };

    // Quadrature used by exact-mode array gains: 4x4 nodes per antenna to start,
    // refined by order doubling until successive estimates agree.
    inline QuadratureConfig array_gain_quadrature()
    {
        QuadratureConfig q;
        q.min_order = 4;
        q.rel_tol = 1e-9;
        return q;
    }

    // Normalized antenna array gain for a broadside source at distance d: received
    // power of the N antennas with matched filtering, divided by N times the power
    // captured by the origin-centered reference antenna of the same size. In [0, 1].
    double normalized_array_gain(const ArraySpec &spec, double distance, ArrayGainMode mode,
                                 const QuadratureConfig &quad = array_gain_quadrature(), int threads = 0);

    struct SphericalPowerLoss
    {
        double ratio;       // log(1 + u) / u with u = (W / 2d)^2
        double loss;        // 1 - ratio
        double taylor_loss; // W^2 / (8 d^2)
    };

    // Received power of a circular aperture of diameter W under a spherical
    // wavefront relative to a planar one.
    SphericalPowerLoss spherical_power_loss(double diameter, double distance);

} // namespace nearfield

#endif
