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

#include "nearfield/regions.hpp"
#include "nearfield/errors.hpp"

namespace nearfield
{
    RegionReport region_report(const ArraySpec &spec)
    {
        const auto diag = array_diagonals(spec);
        const double n = double(spec.num_antennas());
        return {fraunhofer_distance(diag.antenna, spec.wavelength()),
                fraunhofer_array_distance(n, diag.antenna, spec.wavelength()), bjornson_distance(n, diag.antenna),
                diag.array, diag.antenna};
    }

    double normalized_array_gain(const ArraySpec &spec, double distance, ArrayGainMode mode,
                                 const QuadratureConfig &quad, int threads)
    {
        if (!(distance > 0))
            throw DomainError("distance must be positive");
        if (mode == ArrayGainMode::bound)
        {
            const double n = double(spec.num_antennas());
            return alpha_total(distance, n, spec.antenna_area()) /
                   (n * alpha_total(distance, 1.0, spec.antenna_area()));
        }

        const SourcePoint source(0.0, 0.0, distance);
        const auto h = channel_vector(spec, source, ChannelModel::integral, quad, threads);
        // Reference antenna: same size, centered at the origin, captures all incident power.
        const double a = spec.antenna_side();
        const auto reference = integrate_rectangle(
            [&](double x, double y) { return field_power_density(source, x, y); }, -a / 2, a / 2, -a / 2, a / 2, quad,
            quad.min_order);
        // sum_n |a h_n|^2 / (N A int |eps|^2), with a^2 = A.
        double received = 0;
        for (Eigen::Index i = 0; i < h.size(); ++i)
            received += std::norm(h.coefficients[i]);
        return received / (double(spec.num_antennas()) * reference.value);
    }

    SphericalPowerLoss spherical_power_loss(double diameter, double distance)
    {
        if (!(distance > 0) || !(diameter > 0))
            throw DomainError("diameter and distance must be positive");
        const double u = (diameter / (2 * distance)) * (diameter / (2 * distance));
        const double ratio = std::log1p(u) / u;
        return {ratio, 1 - ratio, diameter * diameter / (8 * distance * distance)};
    }

} // namespace nearfield
