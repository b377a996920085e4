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

#include "nearfield/gain.hpp"
#include "nearfield/quadrature.hpp"

#include <algorithm>

namespace nearfield
{
    std::string to_string(GainModel model)
    {
        switch (model)
        {
        case GainModel::exact:
            return "exact";
        case GainModel::properties12:
            return "properties12";
        case GainModel::property1:
            return "property1";
        case GainModel::farfield:
            return "farfield";
        }
        return "unknown";
    }

    namespace
    {
        // Breakpoints 0, d, 4d, 16d, ... up to `end`, so each piece sees the 1/r^k
        // decay at a roughly constant relative scale.
        std::vector<double> geometric_breaks(double scale, double end)
        {
            std::vector<double> b{0.0};
            for (double x = scale; x < end; x *= 4)
                b.push_back(x);
            b.push_back(end);
            return b;
        }

        template <typename Func>
        QuadratureResult<double> integrate_pieces(const Func &f, const std::vector<double> &breaks, double rel_tol)
        {
            QuadratureResult<double> out{0.0, 0.0, 0};
            for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            {
                const auto r = integrate_adaptive(f, breaks[i], breaks[i + 1], rel_tol);
                out.value += r.value;
                out.error_estimate += r.error_estimate;
                out.order += r.order;
            }
            return out;
        }
    }

    GainReport aperture_gain(double distance, std::int64_t num_antennas, double antenna_area, PropertySet properties,
                             double rel_tol)
    {
        if (!(distance > 0) || !(antenna_area > 0) || num_antennas < 1)
            throw DomainError("aperture_gain requires d > 0, A > 0, N >= 1");
        const double d = distance;
        const double half = std::sqrt(double(num_antennas) * antenna_area) / 2;

        auto integrand = [d, properties](double x, double y) {
            const double r2 = x * x + y * y + d * d;
            const double pathloss = 1.0 / (4 * pi_v<double> * r2);
            switch (properties)
            {
            case PropertySet::distances:
                return pathloss;
            case PropertySet::distances_effective_area:
                return pathloss * d / std::sqrt(r2);
            case PropertySet::all:
                break;
            }
            return pathloss * d / std::sqrt(r2) * (x * x + d * d) / r2;
        };

        // Symmetric in x and y separately: integrate one quadrant.
        const auto breaks = geometric_breaks(d, half);
        auto inner = [&](double x) {
            return integrate_pieces([&](double y) { return integrand(x, y); }, breaks, rel_tol / 10).value;
        };
        const auto total = integrate_pieces(inner, breaks, rel_tol);

        const GainModel model = properties == PropertySet::all                       ? GainModel::exact
                                : properties == PropertySet::distances_effective_area ? GainModel::properties12
                                                                                      : GainModel::property1;
        return {4 * total.value, model, {distance, 0.0, num_antennas, antenna_area}};
    }

    GainReport partial_property_gain(double distance, std::int64_t num_antennas, double antenna_area,
                                     PropertySet properties, double rel_tol)
    {
        if (properties == PropertySet::all)
            throw DomainError("partial_property_gain takes {1} or {1,2}; use exact_gain for all properties");
        return aperture_gain(distance, num_antennas, antenna_area, properties, rel_tol);
    }

    GainReport exact_gain(double distance, double angle, std::int64_t num_antennas, double antenna_area)
    {
        return {xi_total<double>(distance, angle, double(num_antennas), antenna_area), GainModel::exact,
                {distance, angle, num_antennas, antenna_area}};
    }

    GainReport farfield_report(double distance, double angle, std::int64_t num_antennas, double antenna_area)
    {
        return {farfield_gain<double>(distance, angle, double(num_antennas), antenna_area), GainModel::farfield,
                {distance, angle, num_antennas, antenna_area}};
    }

    ScalingLawCurve scaling_law_sweep(double distance, double antenna_area, double rho, double noise_power,
                                      const std::vector<std::int64_t> &num_antennas,
                                      std::optional<double> reference_power)
    {
        if (!(rho >= 0))
            throw DomainError("power scaling exponent must be non-negative");
        if (!(noise_power > 0))
            throw DomainError("noise power must be positive");
        const double power =
            reference_power ? *reference_power : noise_power / alpha_total<double>(distance, 1.0, antenna_area);

        ScalingLawCurve curve{rho, power, {}};
        curve.points.reserve(num_antennas.size());
        for (const auto n : num_antennas)
        {
            if (n < 1)
                throw DomainError("number of antennas must be positive");
            const double gain = alpha_total<double>(distance, double(n), antenna_area);
            const double tx = power / std::pow(double(n), rho);
            curve.points.push_back({n, snr_mf(gain, tx, noise_power)});
        }
        return curve;
    }

} // namespace nearfield
