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

#include "nearfield/geometry.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/units.hpp"

#include <cmath>
#include <string>

namespace nearfield
{
    namespace
    {
        std::int64_t exact_isqrt(std::int64_t n)
        {
            auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
            while (r * r > n)
                --r;
            while ((r + 1) * (r + 1) <= n)
                ++r;
            return r;
        }
    }

    ArraySpec::ArraySpec(std::int64_t num_antennas, double antenna_area, double wavelength)
        : num_antennas_(num_antennas), side_count_(0), antenna_area_(antenna_area),
          antenna_side_(0), wavelength_(wavelength)
    {
        if (num_antennas < 1)
            throw DomainError("num_antennas must be positive, got " + std::to_string(num_antennas));
        side_count_ = exact_isqrt(num_antennas);
        if (side_count_ * side_count_ != num_antennas)
            throw DomainError("num_antennas = " + std::to_string(num_antennas) +
                              " is not a perfect square (square-grid assumption: antennas form a sqrt(N) x sqrt(N) grid)");
        if (!(antenna_area > 0) || !std::isfinite(antenna_area))
            throw DomainError("antenna_area must be positive and finite");
        if (!(wavelength > 0) || !std::isfinite(wavelength))
            throw DomainError("wavelength must be positive and finite");
        antenna_side_ = std::sqrt(antenna_area);
    }

    ArraySpec ArraySpec::for_aperture(double target_area, double antenna_area, double wavelength)
    {
        if (!(target_area >= antenna_area) || !(antenna_area > 0))
            throw DomainError("target aperture must be at least one antenna area");
        // Antenna count that fits, with a relative slack so exact squares survive rounding.
        const double fit = target_area / antenna_area * (1 + 1e-12);
        auto side = static_cast<std::int64_t>(std::floor(std::sqrt(fit)));
        while (double(side + 1) * double(side + 1) <= fit)
            ++side;
        while (side > 1 && double(side) * double(side) > fit)
            --side;
        return ArraySpec(side * side, antenna_area, wavelength);
    }

    SourcePoint::SourcePoint(const Point3 &position) : position_(position)
    {
        if (!position.allFinite())
            throw DomainError("source position must be finite");
        if (!(position.z() > 0))
            throw DomainError("source must lie in front of the array (d > 0)");
    }

    Point3 antenna_center(const ArraySpec &spec, std::int64_t n)
    {
        if (n < 1 || n > spec.num_antennas())
            throw std::out_of_range("antenna index " + std::to_string(n) + " outside 1.." +
                                    std::to_string(spec.num_antennas()));
        const auto side = spec.side_count();
        const double a = spec.antenna_side();
        const double offset = double(side - 1) * a / 2;
        const double x = -offset + a * double((n - 1) % side);
        const double y = offset - a * double((n - 1) / side);
        return {x, y, 0.0};
    }

    AntennaRegion antenna_region(const ArraySpec &spec, std::int64_t n)
    {
        return {n, antenna_center(spec, n), spec.antenna_side()};
    }

    SourcePoint source_from_polar(double distance, double angle)
    {
        if (!(distance > 0))
            throw DomainError("distance must be positive");
        if (!(std::abs(angle) < pi_v<double> / 2))
            throw DomainError("angle must satisfy |phi| < pi/2, got " + std::to_string(angle) + " rad");
        return SourcePoint(distance * std::sin(angle), 0.0, distance * std::cos(angle));
    }

    ArrayDiagonals array_diagonals(const ArraySpec &spec)
    {
        const double antenna = std::sqrt(2 * spec.antenna_area());
        return {antenna, std::sqrt(2 * spec.aperture_area())};
    }

} // namespace nearfield
