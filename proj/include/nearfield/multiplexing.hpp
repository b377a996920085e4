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

#ifndef NEARFIELD_MULTIPLEXING_HPP
#define NEARFIELD_MULTIPLEXING_HPP

#include "nearfield/beams.hpp"
#include "nearfield/field.hpp"
#include "nearfield/geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace nearfield
{
    // Broadside focal distances d_1 = d_FA, d_k = d_FA / (20 (k - 1)) for k >= 2.
    // For k >= 2 the 3 dB depth-of-focus of d_{k+1} ends where that of d_k begins;
    // d_2's interval ends at d_FA / 10, where the far-field beam's begins.
    struct FocalLadder
    {
        double fraunhofer_array;
        std::vector<double> distances;

        std::size_t size() const { return distances.size(); }
    };

    FocalLadder focal_ladder(double fraunhofer_array, std::size_t users);

    // Junction distances between consecutive depth-of-focus intervals, nearest
    // last: d_FA/10, d_FA/30, d_FA/50, ...
    std::vector<double> ladder_junctions(const FocalLadder &ladder);

    // w = conj(h) / |h|. Throws DegenerateChannelError for a zero channel.
    Eigen::VectorXcd mf_precoder(const Eigen::VectorXcd &h);

    // |h^T w|^2 P / sigma^2 for a unit-norm precoder w.
    double downlink_snr(const Eigen::VectorXcd &h, const Eigen::VectorXcd &w, double transmit_power,
                        double noise_power);

    // |v^H h|^2 P / (|v|^2 sigma^2) for a receive combiner v.
    double uplink_snr(const Eigen::VectorXcd &h, const Eigen::VectorXcd &v, double transmit_power,
                      double noise_power);

    enum class Precoding
    {
        mf,
        zf
    };

    struct PrecoderSet
    {
        Eigen::MatrixXcd weights;       // N x K, column k is the unit-norm w_k
        Precoding scheme;
        Eigen::VectorXd effective_gains; // g_k = |h_k^T w_k|^2
    };

    // Unit-norm zero-forcing precoders for the K x N channel matrix H (row k = h_k^T):
    // normalized columns of the right pseudo-inverse H^H (H H^H)^-1, so that
    // h_j^T w_k = 0 for j != k. Throws SingularityError naming the most correlated
    // user pair if H is rank deficient.
    PrecoderSet zf_precoders(const Eigen::MatrixXcd &channels);

    // Per-user matched filters (no interference suppression).
    PrecoderSet mf_precoders(const Eigen::MatrixXcd &channels);

    // Maximizes sum log2(1 + g_k p_k / sigma^2) subject to sum p_k = P, p_k >= 0:
    // p_k = max(0, mu - sigma^2 / g_k). Throws NoSignalError if every g_k is zero.
    Eigen::VectorXd waterfilling(const Eigen::VectorXd &gains, double total_power, double noise_power = 1.0);

    enum class Scheme
    {
        zf,        // simultaneous ZF with waterfilling
        scheduling // one user per 1/K time slot with full power and MF
    };

    std::string to_string(Scheme scheme);

    struct SEResult
    {
        Eigen::VectorXd per_user; // bit/s/Hz, time-averaged for scheduling
        double sum;
        Eigen::VectorXd power;    // time-averaged transmit power per user
        double reference_snr;     // linear
        double total_power;       // P, in units of the noise power
    };

    // Channel matrix and ZF precoders for users on the broadside axis at the ladder distances.
    struct MultiplexScenario
    {
        FocalLadder ladder;
        Eigen::MatrixXcd channels;     // K x N
        Eigen::VectorXd channel_gains; // |h_k|^2
        PrecoderSet zf;
    };

    MultiplexScenario make_scenario(const ArraySpec &spec, const FocalLadder &ladder,
                                    ChannelModel model = ChannelModel::hybrid, const QuadratureConfig &quad = {},
                                    int threads = 0);

    // Sum SE at a reference SNR: P is chosen so that the outermost user would see
    // snr_ref if it received all the power with MF.
    SEResult sum_se(const MultiplexScenario &scenario, Scheme scheme, double snr_ref_db, double noise_power = 1.0);

    SEResult sum_se(const ArraySpec &spec, const FocalLadder &ladder, Scheme scheme, double snr_ref_db);

    // Upper bound pi * area / lambda^2 on the spatial degrees of freedom of a planar aperture.
    double dof_limit(double aperture_area, double wavelength);

} // namespace nearfield

#endif
