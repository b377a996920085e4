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

#ifndef NEARFIELD_FIELD_HPP
#define NEARFIELD_FIELD_HPP

#include "nearfield/geometry.hpp"
#include "nearfield/quadrature.hpp"

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <string>

namespace nearfield
{
    using Complex = std::complex<double>;

    // Minimum transmitter-to-receiver separation, in wavelengths, for which the
    // far-zone dyadic Green function is used.
    inline constexpr double kReactiveGuardWavelengths = 3.0;

    // Normalized electric field at `at` (z = 0) from a Y-polarized isotropic source:
    //
    //   eps = sqrt(d ((x-x_t)^2 + d^2)) / (sqrt(4 pi) r^(5/2)) * exp(-j 2 pi r / lambda)
    //
    // with r = |at - p_t|. |eps|^2 integrates to the dimensionless channel gain, so the
    // free-space impedance and the source field intensity cancel out.
    // Throws ValidityError when r < kReactiveGuardWavelengths * lambda.
    Complex electric_field(const SourcePoint &source, const Point3 &at, double wavelength);

    // |eps|^2 without the phase; no validity guard (used by closed-form oracles).
    double field_power_density(const SourcePoint &source, double x, double y);

    // Pre-modulus channel coefficient h_n = (1/a) * integral of eps over antenna n.
    // |h_n|^2 is the channel gain. Throws ValidityError if any point of the antenna is
    // within the reactive guard, NumericalError if quadrature does not converge.
    Complex channel_coefficient(const ArraySpec &spec, const SourcePoint &source, std::int64_t n,
                                const QuadratureConfig &quad = {});

    // Same integral over an arbitrary square of side `side` centered at `center`.
    Complex aperture_coefficient(const SourcePoint &source, const Point3 &center, double side, double wavelength,
                                 const QuadratureConfig &quad = {});

    // Propagation-delay phase 2 pi mod(|p_t - p_n| / lambda, 1), in [0, 2 pi).
    double antenna_phase(const SourcePoint &source, const Point3 &center, double wavelength);

    enum class ChannelModel
    {
        integral, // per-antenna field integral: amplitude and phase
        hybrid    // closed-form amplitude sqrt(zeta) with center-point phase
    };

    std::string to_string(ChannelModel model);
    ChannelModel channel_model_from_string(const std::string &name);

    struct ChannelVector
    {
        Eigen::VectorXcd coefficients;
        ChannelModel model = ChannelModel::hybrid;

        Eigen::Index size() const { return coefficients.size(); }
        double total_gain() const { return coefficients.squaredNorm(); }
    };

    // h_n = |h_n| exp(-j phi_n) for n = 1..N. Per-antenna work is spread over
    // `threads` workers (<= 0: default); the result is independent of the thread count.
    ChannelVector channel_vector(const ArraySpec &spec, const SourcePoint &source, ChannelModel model,
                                 const QuadratureConfig &quad = {}, int threads = 0);

    // CSV with header "n,re,im"; n is 1-based. Values printed with 17 significant digits.
    void write_csv(std::ostream &os, const ChannelVector &h);

    // JSON document {"model", "num_antennas", "total_gain", "coefficients": [[re, im], ...], "metadata": {...}}.
    std::string to_json(const ChannelVector &h, const ArraySpec &spec, const SourcePoint &source);

} // namespace nearfield

#endif
