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

#include "nearfield/multiplexing.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/units.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nearfield
{
    FocalLadder focal_ladder(double fraunhofer_array, std::size_t users)
    {
        if (users < 1)
            throw DomainError("focal ladder needs at least one user");
        if (!(fraunhofer_array > 0))
            throw DomainError("d_FA must be positive");
        FocalLadder ladder{fraunhofer_array, {fraunhofer_array}};
        for (std::size_t k = 2; k <= users; ++k)
            ladder.distances.push_back(fraunhofer_array / (20.0 * double(k - 1)));
        return ladder;
    }

    std::vector<double> ladder_junctions(const FocalLadder &ladder)
    {
        std::vector<double> out;
        for (std::size_t k = 2; k <= ladder.size(); ++k)
            out.push_back(ladder.fraunhofer_array / (20.0 * double(k - 1) - 10.0));
        return out;
    }

    Eigen::VectorXcd mf_precoder(const Eigen::VectorXcd &h)
    {
        const double norm = h.norm();
        if (!(norm > 0))
            throw DegenerateChannelError("matched filter undefined for a zero channel");
        return h.conjugate() / norm;
    }

    double downlink_snr(const Eigen::VectorXcd &h, const Eigen::VectorXcd &w, double transmit_power,
                        double noise_power)
    {
        return std::norm(h.cwiseProduct(w).sum()) * transmit_power / noise_power;
    }

    double uplink_snr(const Eigen::VectorXcd &h, const Eigen::VectorXcd &v, double transmit_power, double noise_power)
    {
        return std::norm(v.dot(h)) * transmit_power / (v.squaredNorm() * noise_power);
    }

    namespace
    {
        void check_rows(const Eigen::MatrixXcd &channels)
        {
            if (channels.rows() < 1)
                throw DomainError("at least one user is required");
            if (channels.rows() > channels.cols())
                throw DomainError("zero-forcing needs K <= N");
            for (Eigen::Index k = 0; k < channels.rows(); ++k)
                if (!(channels.row(k).norm() > 0))
                    throw DegenerateChannelError("user " + std::to_string(k + 1) + " has a zero channel");
        }
    }

    PrecoderSet zf_precoders(const Eigen::MatrixXcd &channels)
    {
        check_rows(channels);
        const Eigen::Index users = channels.rows();
        const Eigen::MatrixXcd gram = channels * channels.adjoint();

        // Rank test on the correlation matrix so the threshold is scale-free.
        const Eigen::VectorXd scale = gram.diagonal().real().cwiseSqrt().cwiseInverse();
        const Eigen::MatrixXcd corr = scale.asDiagonal() * gram * scale.asDiagonal();
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(corr, Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < 1e-13 * double(users))
        {
            std::size_t a = 0, b = users > 1 ? 1 : 0;
            double worst = -1;
            for (Eigen::Index i = 0; i < users; ++i)
                for (Eigen::Index j = i + 1; j < users; ++j)
                    if (std::abs(corr(i, j)) > worst)
                    {
                        worst = std::abs(corr(i, j));
                        a = std::size_t(i);
                        b = std::size_t(j);
                    }
            throw SingularityError("channel matrix is rank deficient; users " + std::to_string(a + 1) + " and " +
                                       std::to_string(b + 1) + " are linearly dependent (|correlation| = " +
                                       std::to_string(worst) + ")",
                                   a + 1, b + 1);
        }

        // Right pseudo-inverse W = H^H (H H^H)^-1, so (H W)_jk = h_j^T w_k = delta_jk.
        // One step of iterative refinement on the Gram solve.
        const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
        Eigen::MatrixXcd coeff = ldlt.solve(Eigen::MatrixXcd::Identity(users, users));
        const Eigen::MatrixXcd residual = Eigen::MatrixXcd::Identity(users, users) - gram * coeff;
        coeff += ldlt.solve(residual);
        const Eigen::MatrixXcd weights = channels.adjoint() * coeff;

        PrecoderSet out{Eigen::MatrixXcd(weights.rows(), users), Precoding::zf, Eigen::VectorXd(users)};
        for (Eigen::Index k = 0; k < users; ++k)
        {
            out.weights.col(k) = weights.col(k).normalized();
            out.effective_gains[k] = std::norm((channels.row(k) * out.weights.col(k)).value());
        }
        return out;
    }

    PrecoderSet mf_precoders(const Eigen::MatrixXcd &channels)
    {
        check_rows(channels);
        const Eigen::Index users = channels.rows();
        PrecoderSet out{Eigen::MatrixXcd(channels.cols(), users), Precoding::mf, Eigen::VectorXd(users)};
        for (Eigen::Index k = 0; k < users; ++k)
        {
            out.weights.col(k) = mf_precoder(channels.row(k).transpose());
            out.effective_gains[k] = channels.row(k).squaredNorm();
        }
        return out;
    }

    Eigen::VectorXd waterfilling(const Eigen::VectorXd &gains, double total_power, double noise_power)
    {
        if (!(total_power > 0) || !(noise_power > 0))
            throw DomainError("waterfilling needs positive total and noise power");
        if ((gains.array() < 0).any())
            throw DomainError("effective gains must be non-negative");
        if (!(gains.array() > 0).any())
            throw NoSignalError("all effective gains are zero; no user can be served");

        std::vector<Eigen::Index> order;
        for (Eigen::Index k = 0; k < gains.size(); ++k)
            if (gains[k] > 0)
                order.push_back(k);
        // Strongest users first.
        std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return gains[a] > gains[b]; });

        double level = 0;
        std::size_t active = order.size();
        for (; active >= 1; --active)
        {
            double inverse_sum = 0;
            for (std::size_t i = 0; i < active; ++i)
                inverse_sum += noise_power / gains[order[i]];
            level = (total_power + inverse_sum) / double(active);
            if (level > noise_power / gains[order[active - 1]])
                break;
        }

        Eigen::VectorXd power = Eigen::VectorXd::Zero(gains.size());
        for (std::size_t i = 0; i < active; ++i)
            power[order[i]] = level - noise_power / gains[order[i]];
        return power;
    }

    std::string to_string(Scheme scheme)
    {
        return scheme == Scheme::zf ? "zf" : "scheduling";
    }

    MultiplexScenario make_scenario(const ArraySpec &spec, const FocalLadder &ladder, ChannelModel model,
                                    const QuadratureConfig &quad, int threads)
    {
        const auto users = static_cast<Eigen::Index>(ladder.size());
        MultiplexScenario s{ladder, Eigen::MatrixXcd(users, spec.num_antennas()), Eigen::VectorXd(users), {}};
        for (Eigen::Index k = 0; k < users; ++k)
        {
            const auto h = channel_vector(spec, SourcePoint(0.0, 0.0, ladder.distances[std::size_t(k)]), model, quad,
                                          threads);
            s.channels.row(k) = h.coefficients.transpose();
            s.channel_gains[k] = h.total_gain();
        }
        s.zf = zf_precoders(s.channels);
        return s;
    }

    SEResult sum_se(const MultiplexScenario &scenario, Scheme scheme, double snr_ref_db, double noise_power)
    {
        const Eigen::Index users = scenario.channels.rows();
        const auto &dist = scenario.ladder.distances;
        const auto outermost = std::distance(dist.begin(), std::max_element(dist.begin(), dist.end()));
        const double snr_ref = from_db(snr_ref_db);
        const double power = snr_ref * noise_power / scenario.channel_gains[outermost];

        SEResult r{Eigen::VectorXd(users), 0.0, Eigen::VectorXd(users), snr_ref, power};
        if (scheme == Scheme::zf)
        {
            r.power = waterfilling(scenario.zf.effective_gains, power, noise_power);
            for (Eigen::Index k = 0; k < users; ++k)
                r.per_user[k] = std::log2(1 + scenario.zf.effective_gains[k] * r.power[k] / noise_power);
        }
        else
        {
            for (Eigen::Index k = 0; k < users; ++k)
            {
                r.per_user[k] = std::log2(1 + scenario.channel_gains[k] * power / noise_power) / double(users);
                r.power[k] = power / double(users);
            }
        }
        r.sum = r.per_user.sum();
        return r;
    }

    SEResult sum_se(const ArraySpec &spec, const FocalLadder &ladder, Scheme scheme, double snr_ref_db)
    {
        return sum_se(make_scenario(spec, ladder), scheme, snr_ref_db);
    }

    double dof_limit(double aperture_area, double wavelength)
    {
        if (!(aperture_area > 0) || !(wavelength > 0))
            throw DomainError("aperture area and wavelength must be positive");
        return pi_v<double> * aperture_area / (wavelength * wavelength);
    }

} // namespace nearfield
