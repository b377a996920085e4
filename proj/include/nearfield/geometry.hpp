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

#ifndef NEARFIELD_GEOMETRY_HPP
#define NEARFIELD_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <utility>

namespace nearfield
{
    using Point3 = Eigen::Vector3d;

    // Planar array in the XY-plane: sqrt(N) x sqrt(N) square antennas of area A,
    // deployed edge-to-edge and centered on the origin. Lengths in meters.
    class ArraySpec
    {
    public:
        // Throws DomainError unless N is a positive perfect square and A, lambda > 0.
        ArraySpec(std::int64_t num_antennas, double antenna_area, double wavelength);

        // Largest perfect-square N whose aperture N*A does not exceed target_area.
        // The antenna area is kept; the actual aperture is num_antennas()*antenna_area().
        static ArraySpec for_aperture(double target_area, double antenna_area, double wavelength);

        std::int64_t num_antennas() const noexcept { return num_antennas_; }
        std::int64_t side_count() const noexcept { return side_count_; }
        double antenna_area() const noexcept { return antenna_area_; }
        double antenna_side() const noexcept { return antenna_side_; }
        double wavelength() const noexcept { return wavelength_; }

        double aperture_area() const noexcept { return double(num_antennas_) * antenna_area_; }
        double aperture_side() const noexcept { return double(side_count_) * antenna_side_; }

    private:
        std::int64_t num_antennas_;
        std::int64_t side_count_;
        double antenna_area_;
        double antenna_side_;
        double wavelength_;
    };

    // Transmitter position (x_t, y_t, d) with d > 0 the distance to the array plane.
    class SourcePoint
    {
    public:
        explicit SourcePoint(const Point3 &position);
        SourcePoint(double x, double y, double d) : SourcePoint(Point3(x, y, d)) {}

        const Point3 &position() const noexcept { return position_; }
        double x() const noexcept { return position_.x(); }
        double y() const noexcept { return position_.y(); }
        double depth() const noexcept { return position_.z(); }

    private:
        Point3 position_;
    };

    // Square footprint of antenna n (1-based) on the array plane.
    struct AntennaRegion
    {
        std::int64_t index;
        Point3 center;
        double side;

        double x_min() const { return center.x() - side / 2; }
        double x_max() const { return center.x() + side / 2; }
        double y_min() const { return center.y() - side / 2; }
        double y_max() const { return center.y() + side / 2; }
        double area() const { return side * side; }
    };

    // Antennas are numbered left to right, row by row from the top; n is 1-based.
    Point3 antenna_center(const ArraySpec &spec, std::int64_t n);
    AntennaRegion antenna_region(const ArraySpec &spec, std::int64_t n);

    // (d sin(phi), 0, d cos(phi)); requires d > 0 and |phi| < pi/2.
    SourcePoint source_from_polar(double distance, double angle);

    struct ArrayDiagonals
    {
        double antenna; // D = sqrt(2A)
        double array;   // W = sqrt(2NA) = D sqrt(N)
    };

    ArrayDiagonals array_diagonals(const ArraySpec &spec);

} // namespace nearfield

#endif
