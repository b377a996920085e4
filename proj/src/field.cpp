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

#include "nearfield/field.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/gain.hpp"
#include "nearfield/parallel.hpp"
#include "nearfield/units.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace nearfield
{
    namespace
    {
        std::string format_length(double v)
        {
            std::ostringstream os;
            os << std::setprecision(6) << v;
            return os.str();
        }

        void check_guard(double distance, double wavelength)
        {
            const double limit = kReactiveGuardWavelengths * wavelength;
            if (distance < limit)
                throw ValidityError("receiver at " + format_length(distance) + " m from the source is inside the " +
                                    "reactive near-field limit of " + format_length(limit) + " m (" +
                                    format_length(kReactiveGuardWavelengths) + " wavelengths)");
        }

        Complex field_unchecked(const Point3 &src, double x, double y, double wavenumber)
        {
            const double dx = x - src.x();
            const double dy = y - src.y();
            const double d = src.z();
            const double r2 = dx * dx + dy * dy + d * d;
            const double r = std::sqrt(r2);
            const double amplitude = std::sqrt(d * (dx * dx + d * d) / (4 * pi_v<double>)) / std::pow(r2, 1.25);
            return std::polar(amplitude, -wavenumber * r);
        }

        // Distance from the source to the closest point of the square.
        double closest_distance(const Point3 &src, const Point3 &center, double side)
        {
            const double h = side / 2;
            const double cx = std::clamp(src.x(), center.x() - h, center.x() + h);
            const double cy = std::clamp(src.y(), center.y() - h, center.y() + h);
            return (src - Point3(cx, cy, 0.0)).norm();
        }
    }

    Complex electric_field(const SourcePoint &source, const Point3 &at, double wavelength)
    {
        if (at.z() != 0.0)
            throw DomainError("field evaluation point must lie in the array plane z = 0");
        if (!(wavelength > 0))
            throw DomainError("wavelength must be positive");
        check_guard((at - source.position()).norm(), wavelength);
        return field_unchecked(source.position(), at.x(), at.y(), 2 * pi_v<double> / wavelength);
    }

    double field_power_density(const SourcePoint &source, double x, double y)
    {
        const double dx = x - source.x();
        const double dy = y - source.y();
        const double d = source.depth();
        const double r2 = dx * dx + dy * dy + d * d;
        return d * (dx * dx + d * d) / (4 * pi_v<double> * std::pow(r2, 2.5));
    }

    Complex aperture_coefficient(const SourcePoint &source, const Point3 &center, double side, double wavelength,
                                 const QuadratureConfig &quad)
    {
        check_guard(closest_distance(source.position(), center, side), wavelength);
        const double k = 2 * pi_v<double> / wavelength;
        const Point3 &src = source.position();
        auto f = [&src, k](double x, double y) { return field_unchecked(src, x, y, k); };
        const int start = static_cast<int>(std::ceil(quad.nodes_per_wavelength * side / wavelength));
        const auto r = integrate_rectangle(f, center.x() - side / 2, center.x() + side / 2, center.y() - side / 2,
                                           center.y() + side / 2, quad, start);
        return r.value / side;
    }

    Complex channel_coefficient(const ArraySpec &spec, const SourcePoint &source, std::int64_t n,
                                const QuadratureConfig &quad)
    {
        return aperture_coefficient(source, antenna_center(spec, n), spec.antenna_side(), spec.wavelength(), quad);
    }

    double antenna_phase(const SourcePoint &source, const Point3 &center, double wavelength)
    {
        const double cycles = (source.position() - center).norm() / wavelength;
        double frac = cycles - std::floor(cycles);
        if (frac >= 1.0)
            frac = 0.0;
        return 2 * pi_v<double> * frac;
    }

    std::string to_string(ChannelModel model)
    {
        return model == ChannelModel::integral ? "integral" : "hybrid";
    }

    ChannelModel channel_model_from_string(const std::string &name)
    {
        if (name == "integral")
            return ChannelModel::integral;
        if (name == "hybrid")
            return ChannelModel::hybrid;
        throw DomainError("unknown channel model '" + name + "' (expected integral | hybrid)");
    }

    ChannelVector channel_vector(const ArraySpec &spec, const SourcePoint &source, ChannelModel model,
                                 const QuadratureConfig &quad, int threads)
    {
        const auto count = static_cast<std::size_t>(spec.num_antennas());
        ChannelVector h;
        h.model = model;
        h.coefficients.resize(static_cast<Eigen::Index>(count));
        const double a = spec.antenna_side();
        const double lambda = spec.wavelength();

        parallel_for(count, threads, [&](std::size_t i) {
            const auto n = static_cast<std::int64_t>(i) + 1;
            const Point3 center = antenna_center(spec, n);
            Complex value;
            if (model == ChannelModel::integral)
                value = aperture_coefficient(source, center, a, lambda, quad);
            else
                value = std::polar(std::sqrt(zeta_bound(source, center, a)), -antenna_phase(source, center, lambda));
            h.coefficients[static_cast<Eigen::Index>(i)] = value;
        });
        return h;
    }

    void write_csv(std::ostream &os, const ChannelVector &h)
    {
        const auto flags = os.flags();
        const auto precision = os.precision();
        os << "n,re,im\n" << std::setprecision(17);
        for (Eigen::Index i = 0; i < h.size(); ++i)
            os << (i + 1) << ',' << h.coefficients[i].real() << ',' << h.coefficients[i].imag() << '\n';
        os.flags(flags);
        os.precision(precision);
    }

    std::string to_json(const ChannelVector &h, const ArraySpec &spec, const SourcePoint &source)
    {
        nlohmann::json j;
        j["model"] = to_string(h.model);
        j["num_antennas"] = spec.num_antennas();
        j["total_gain"] = h.total_gain();
        j["metadata"] = {{"antenna_area", spec.antenna_area()},
                         {"wavelength", spec.wavelength()},
                         {"source", {source.x(), source.y(), source.depth()}},
                         {"phase_convention", "h_n = |h_n| exp(-j phi_n), phi_n = 2 pi r_n / lambda"}};
        auto &coeffs = j["coefficients"] = nlohmann::json::array();
        for (Eigen::Index i = 0; i < h.size(); ++i)
            coeffs.push_back({h.coefficients[i].real(), h.coefficients[i].imag()});
        return j.dump(2);
    }

} // namespace nearfield
