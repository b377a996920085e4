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

#ifndef NEARFIELD_BEAMS_HPP
#define NEARFIELD_BEAMS_HPP

#include "nearfield/field.hpp"
#include "nearfield/geometry.hpp"
#include "nearfield/quadrature.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nearfield
{
    // Fresnel integrals C(x) = int_0^x cos(pi t^2 / 2) dt and S(x) = int_0^x sin(pi t^2 / 2) dt.
    // Odd in x. Power series below |x| = 1.5, complex continued fraction above.
    struct FresnelPair
    {
        double c;
        double s;
    };

    FresnelPair fresnel(double x);
    inline double fresnel_c(double x) { return fresnel(x).c; }
    inline double fresnel_s(double x) { return fresnel(x).s; }

    // A(x) = (C^2(sqrt x) + S^2(sqrt x))^2 / x^2 with A(0) = 1. Fresnel-approximation
    // array gain; decreasing on [0, 2] with A(1.25) ~ 0.5.
    double fresnel_array_factor(double x);

    // Focal distance of a matched-filter beam on the broadside axis. Infinity is a
    // distinct state (plane-wave beam), not a large number.
    class FocalPoint
    {
    public:
        static FocalPoint at(double distance);
        static FocalPoint infinity() { return FocalPoint(std::nullopt); }

        bool is_infinite() const noexcept { return !distance_; }
        // Throws DomainError for the infinite focal point.
        double distance() const;
        std::string label() const;

        bool operator==(const FocalPoint &) const = default;

    private:
        explicit FocalPoint(std::optional<double> d) : distance_(d) {}
        std::optional<double> distance_;
    };

    // Fresnel-approximation gain at distance z of a beam focused at infinity,
    // (8z/d_FA)^2 (C^2 + S^2)^2 evaluated at sqrt(d_FA / 8z).
    double gain_at_focus(double distance, double fraunhofer_array);

    // Gain at distance d of a beam focused at z: A(d_FA / (8 z_eff)) with
    // z_eff = d z / |d - z| (z_eff = d for z = infinity). Returns 1 at d = z.
    double gain_off_focus(double distance, const FocalPoint &focal, double fraunhofer_array);

    struct DepthOfFocus
    {
        FocalPoint focal;
        double lower;
        std::optional<double> upper; // nullopt: extends to infinity
        std::optional<double> depth; // 3 dB beam depth; nullopt: infinite

        bool finite() const noexcept { return upper.has_value(); }
    };

    // Closed-form 3 dB depth-of-focus [d_FA z/(d_FA + 10z), d_FA z/(d_FA - 10z)] and
    // beam depth 20 d_FA z^2 / (d_FA^2 - 100 z^2). Finite iff z < d_FA / 10; z = d_FA/10
    // and the infinite focal point have no upper limit.
    DepthOfFocus depth_of_focus(const FocalPoint &focal, double fraunhofer_array);

    // Root of A(x) = 1/2 on [0, 2].
    double half_power_argument();

    // Exact 0.5-crossings of gain_off_focus, for comparison with depth_of_focus.
    DepthOfFocus half_power_crossings(const FocalPoint &focal, double fraunhofer_array);

    struct FocusProfile
    {
        FocalPoint focal;
        double fraunhofer_array;
        std::vector<std::pair<double, double>> samples; // (distance, gain)
    };

    FocusProfile focus_profile(const FocalPoint &focal, double fraunhofer_array, const std::vector<double> &distances);

    // Exact counterpart of gain_off_focus on a given array: matched filter steered
    // to `focal` (uniform weights for infinity), received at broadside distance d,
    // normalized by N times the reference-antenna power at d.
    double exact_focus_gain(const ArraySpec &spec, double distance, const FocalPoint &focal,
                            ChannelModel model = ChannelModel::hybrid, const QuadratureConfig &quad = {},
                            int threads = 0);

} // namespace nearfield

#endif
