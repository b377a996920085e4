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

#include "nearfield/experiments.hpp"
#include "nearfield/beams.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/gain.hpp"
#include "nearfield/multiplexing.hpp"
#include "nearfield/parallel.hpp"
#include "nearfield/regions.hpp"
#include "nearfield/units.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#ifndef NEARFIELD_VERSION
#define NEARFIELD_VERSION "unknown"
#endif

namespace nearfield
{
    namespace fs = std::filesystem;

    std::string_view library_version() { return NEARFIELD_VERSION; }

    bool ExperimentOutcome::passed() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.passed; });
    }

    std::string format_number(double value)
    {
        if (std::isnan(value))
            return "nan";
        if (std::isinf(value))
            return value > 0 ? "inf" : "-inf";
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, value);
        return std::string(buf, res.ptr);
    }

    void write_file_atomically(const fs::path &path, const std::string &content)
    {
        fs::path tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out)
                throw std::runtime_error("cannot write " + tmp.string());
            out << content;
            out.flush();
            if (!out)
                throw std::runtime_error("write failed for " + tmp.string());
        }
        fs::rename(tmp, path);
    }

    namespace
    {
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        struct Csv
        {
            std::ostringstream os;

            explicit Csv(const std::vector<std::string> &header)
            {
                for (std::size_t i = 0; i < header.size(); ++i)
                    os << (i ? "," : "") << header[i];
                os << '\n';
            }

            template <typename... Cells>
            void row(const Cells &...cells)
            {
                std::size_t i = 0;
                ((os << (i++ ? "," : "") << cell(cells)), ...);
                os << '\n';
            }

            void row(const std::vector<double> &cells)
            {
                for (std::size_t i = 0; i < cells.size(); ++i)
                    os << (i ? "," : "") << format_number(cells[i]);
                os << '\n';
            }

            static std::string cell(double v) { return format_number(v); }
            static std::string cell(std::int64_t v) { return std::to_string(v); }
            static std::string cell(const std::string &v) { return v; }
        };

        class Checks
        {
        public:
            std::vector<Check> items;

            // Passes when value <= limit.
            void at_most(const std::string &name, double value, double limit)
            {
                items.push_back({name, value <= limit, value, limit});
            }

            void holds(const std::string &name, bool ok) { items.push_back({name, ok, ok ? 1.0 : 0.0, 1.0}); }
        };

        ArraySpec spec_of(const ExperimentConfig &c)
        {
            return ArraySpec(c.array.num_antennas, c.array.antenna_area, c.array.wavelength);
        }

        struct Run
        {
            std::string data; // file content
            std::string data_name;
            Checks checks;
            nlohmann::json residuals = nlohmann::json::object();
        };

        Run gain_sweep(const ExperimentConfig &c)
        {
            const double d = c.source.distance, A = c.array.antenna_area;
            const auto &ns = c.num_antennas;
            std::vector<double> exact(ns.size()), p12(ns.size()), p1(ns.size()), ff(ns.size()), numeric(ns.size());
            parallel_for(ns.size(), c.threads, [&](std::size_t i) {
                const auto n = ns[i];
                exact[i] = exact_gain(d, 0.0, n, A).value;
                p12[i] = partial_property_gain(d, n, A, PropertySet::distances_effective_area).value;
                p1[i] = partial_property_gain(d, n, A, PropertySet::distances).value;
                ff[i] = farfield_report(d, 0.0, n, A).value;
                numeric[i] = aperture_gain(d, n, A, PropertySet::all).value;
            });

            Run r;
            r.data_name = "gain-sweep.csv";
            Csv csv({"N", "diagonal_m", "gain_exact", "gain_p12", "gain_p1", "gain_farfield"});
            double integral_residual = 0, farfield_quarter = 0, farfield_half = 0, order_violation = 0, above_third = -1;
            for (std::size_t i = 0; i < ns.size(); ++i)
            {
                const double diag = std::sqrt(2 * double(ns[i]) * A);
                csv.row(ns[i], diag, exact[i], p12[i], p1[i], ff[i]);
                integral_residual = std::max(integral_residual, std::abs(numeric[i] / exact[i] - 1));
                if (diag <= d / 4)
                    farfield_quarter = std::max(farfield_quarter, std::abs(ff[i] / exact[i] - 1));
                if (diag <= d / 2)
                    farfield_half = std::max(farfield_half, std::abs(ff[i] / exact[i] - 1));
                order_violation = std::max({order_violation, exact[i] / p12[i] - 1, p12[i] / p1[i] - 1});
                above_third = std::max(above_third, exact[i] - 1.0 / 3);
            }
            r.data = csv.os.str();
            r.checks.at_most("closed form matches the aperture integral (relative)", integral_residual, 1e-6);
            r.checks.at_most("far-field model within 1% where diagonal <= d/4", farfield_quarter, 1e-2);
            r.checks.at_most("exact <= properties{1,2} <= property{1} (relative excess)", order_violation, 1e-9);
            r.checks.at_most("exact gain stays below 1/3", above_third, 0.0);
            r.residuals["closed_form_vs_integral_max_rel"] = integral_residual;
            r.residuals["farfield_vs_exact_max_rel_diagonal_le_d_over_4"] = farfield_quarter;
            r.residuals["farfield_vs_exact_max_rel_diagonal_le_d_over_2"] = farfield_half;
            if (!ns.empty())
                r.residuals["largest_aperture"] = {{"N", ns.back()},
                                                   {"gain_exact", exact.back()},
                                                   {"gain_p12", p12.back()},
                                                   {"gain_p1", p1.back()}};
            return r;
        }

        Run scaling_law(const ExperimentConfig &c)
        {
            Run r;
            r.data_name = "scaling-law.csv";
            Csv csv({"N", "snr_db", "rho"});
            const double d = c.source.distance, A = c.array.antenna_area;
            const double alpha1 = alpha_total(d, 1.0, A);
            const double ceiling_db = to_db((1.0 / 3) / alpha1);
            double calibration = 0, over_ceiling = -std::numeric_limits<double>::infinity();
            bool tail_decreasing = true;
            for (const double rho : c.rho)
            {
                const auto curve = scaling_law_sweep(d, A, rho, 1.0, c.num_antennas);
                double peak = -std::numeric_limits<double>::infinity();
                for (const auto &p : curve.points)
                {
                    const double db = to_db(p.snr);
                    csv.row(p.num_antennas, db, rho);
                    if (p.num_antennas == 1)
                        calibration = std::max(calibration, std::abs(db));
                    over_ceiling = std::max(over_ceiling, db - ceiling_db);
                    peak = std::max(peak, db);
                }
                if (rho > 0 && !curve.points.empty() && curve.points.back().num_antennas >= 10000000)
                    tail_decreasing = tail_decreasing && to_db(curve.points.back().snr) < peak;
            }
            r.data = csv.os.str();
            r.checks.at_most("N = 1 sits at 0 dB", calibration, 1e-9);
            r.checks.at_most("SNR stays below the 1/3 ceiling", over_ceiling, 0.0);
            r.checks.holds("rho > 0 curves fall off for large N", tail_decreasing);
            r.residuals["ceiling_db"] = ceiling_db;
            r.residuals["reference_power"] = 1.0 / alpha1;
            return r;
        }

        Run array_gain(const ExperimentConfig &c)
        {
            const auto spec = spec_of(c);
            const auto regions = region_report(spec);
            Run r;
            r.data_name = "array-gain.csv";
            Csv csv({"d_over_dF", "G_exact", "G_bound"});
            double max_gap = 0, gap_at = nan, excess = 0, out_of_range = 0;
            for (const double k : c.distances)
            {
                const double d = k * regions.fraunhofer;
                const double gb = normalized_array_gain(spec, d, ArrayGainMode::bound);
                const double ge =
                    c.exact ? normalized_array_gain(spec, d, ArrayGainMode::exact, c.quadrature, c.threads) : nan;
                csv.row(k, ge, gb);
                out_of_range = std::max(out_of_range, std::max(gb - 1, -gb));
                if (c.exact)
                {
                    excess = std::max(excess, ge / gb - 1);
                    out_of_range = std::max(out_of_range, std::max(ge - 1, -ge));
                    if (gb - ge > max_gap)
                    {
                        max_gap = gb - ge;
                        gap_at = k;
                    }
                }
            }
            r.data = csv.os.str();
            r.checks.at_most("gains lie in [0, 1]", out_of_range, 0.0);
            if (c.exact)
                r.checks.at_most("exact <= bound (relative excess)", excess, 1e-9);
            r.residuals["bound_minus_exact_max"] = c.exact ? max_gap : nan;
            r.residuals["bound_minus_exact_argmax_d_over_dF"] = gap_at;
            r.residuals["bound_at_dB"] = normalized_array_gain(spec, regions.bjornson, ArrayGainMode::bound);
            r.residuals["bound_at_dFA"] = normalized_array_gain(spec, regions.fraunhofer_array, ArrayGainMode::bound);
            r.residuals["reference_antenna"] = "origin-centered, side sqrt(A)";
            return r;
        }

        Run focus(const ExperimentConfig &c)
        {
            const auto spec = spec_of(c);
            const auto regions = region_report(spec);
            const double dF = regions.fraunhofer, dFA = regions.fraunhofer_array;
            Run r;
            r.data_name = "focus.csv";
            Csv csv({"d_over_dF", "gain", "focal_label"});
            double out_of_range = 0, crossing_error = 0, peak_excess = 0;
            nlohmann::json per_focal = nlohmann::json::array();
            for (const auto &token : c.focal)
            {
                const auto focal = focal_from_string(token, regions);
                std::vector<double> ds;
                for (double k : c.distances)
                    ds.push_back(k * dF);
                const auto profile = focus_profile(focal, dFA, ds);
                for (std::size_t i = 0; i < ds.size(); ++i)
                {
                    const double g = profile.samples[i].second;
                    csv.row(c.distances[i], g, token);
                    out_of_range = std::max(out_of_range, std::max(g - 1, -g));
                }

                const auto closed = depth_of_focus(focal, dFA);
                const auto numeric = half_power_crossings(focal, dFA);
                crossing_error = std::max(crossing_error, std::abs(gain_off_focus(numeric.lower, focal, dFA) - 0.5));
                if (numeric.upper)
                    crossing_error =
                        std::max(crossing_error, std::abs(gain_off_focus(*numeric.upper, focal, dFA) - 0.5));
                if (!focal.is_infinite())
                    for (const double d : ds)
                        peak_excess = std::max(peak_excess, gain_off_focus(d, focal, dFA) -
                                                                gain_off_focus(focal.distance(), focal, dFA));

                // Fresnel model against the exact matched filter at a few distances >= 50 d_F.
                double fresnel_gap = 0;
                std::vector<double> probes;
                for (double k : {50.0, 300.0, 2000.0, 10000.0, 50000.0})
                    probes.push_back(k * dF);
                for (const double d : probes)
                    fresnel_gap = std::max(fresnel_gap, std::abs(exact_focus_gain(spec, d, focal, c.channel_model,
                                                                                  c.quadrature, c.threads) -
                                                                 gain_off_focus(d, focal, dFA)));

                auto opt = [&](const std::optional<double> &v) { return v ? nlohmann::json(*v / dF) : nlohmann::json(); };
                per_focal.push_back({{"focal", token},
                                     {"closed_form_lower_over_dF", closed.lower / dF},
                                     {"closed_form_upper_over_dF", opt(closed.upper)},
                                     {"crossing_lower_over_dF", numeric.lower / dF},
                                     {"crossing_upper_over_dF", opt(numeric.upper)},
                                     {"fresnel_vs_exact_max_abs", fresnel_gap}});
            }
            r.data = csv.os.str();
            r.checks.at_most("gains lie in [0, 1]", out_of_range, 0.0);
            r.checks.at_most("numeric crossings sit at 0.5", crossing_error, 1e-9);
            r.checks.at_most("no sample exceeds the gain at the focal point", peak_excess, 0.0);
            r.residuals["focal_points"] = per_focal;
            return r;
        }

        std::string ladder_label(std::size_t k)
        {
            return k == 0 ? "dFA" : "dFA/" + std::to_string(20 * k);
        }

        Run multiplex(const ExperimentConfig &c)
        {
            const auto regions = region_report(spec_of(c));
            const double dF = regions.fraunhofer, dFA = regions.fraunhofer_array;
            const auto ladder = focal_ladder(dFA, std::size_t(c.users));
            Run r;
            r.data_name = "multiplex.csv";
            Csv csv({"d_over_dF", "gain", "focal_label"});
            for (std::size_t k = 0; k < ladder.size(); ++k)
            {
                const auto focal = FocalPoint::at(ladder.distances[k]);
                for (const double m : c.distances)
                    csv.row(m, gain_off_focus(m * dF, focal, dFA), ladder_label(k));
            }
            r.data = csv.os.str();

            // Junction k sits between beams k and k + 1; the first one borders the far-field beam.
            double junction_error = 0, abutment_error = 0;
            nlohmann::json junctions = nlohmann::json::array();
            const auto js = ladder_junctions(ladder);
            for (std::size_t k = 0; k < js.size(); ++k)
            {
                const auto nearer = FocalPoint::at(ladder.distances[k + 1]);
                const auto farther = k == 0 ? FocalPoint::infinity() : FocalPoint::at(ladder.distances[k]);
                const double g_near = gain_off_focus(js[k], nearer, dFA);
                const double g_far = gain_off_focus(js[k], farther, dFA);
                junction_error = std::max({junction_error, std::abs(g_near - 0.5), std::abs(g_far - 0.5)});
                const auto upper = depth_of_focus(nearer, dFA).upper;
                const double lower = depth_of_focus(farther, dFA).lower;
                abutment_error = std::max(abutment_error, upper ? std::abs(*upper / lower - 1) : 1.0);
                junctions.push_back({{"d_over_dF", js[k] / dF}, {"gain_nearer", g_near}, {"gain_farther", g_far}});
            }
            r.checks.at_most("gain at every junction within 0.02 of 0.5", junction_error, 0.02);
            r.checks.at_most("consecutive depth-of-focus intervals abut (relative)", abutment_error, 1e-12);
            r.residuals["junctions"] = junctions;
            if (ladder.size() > 1)
                r.residuals["dFA_beam_gain_at_dFA_over_10"] =
                    gain_off_focus(dFA / 10, FocalPoint::at(ladder.distances[0]), dFA);
            return r;
        }

        Run sum_se_run(const ExperimentConfig &c)
        {
            const auto spec = spec_of(c);
            const auto ladder = focal_ladder(region_report(spec).fraunhofer_array, std::size_t(c.users));
            const auto scenario = make_scenario(spec, ladder, c.channel_model, c.quadrature, c.threads);
            const auto K = scenario.channels.rows();

            double zf_residual = 0;
            for (Eigen::Index k = 0; k < K; ++k)
                for (Eigen::Index j = 0; j < K; ++j)
                    if (j != k)
                        zf_residual = std::max(zf_residual, std::abs((scenario.channels.row(j) *
                                                                      scenario.zf.weights.col(k)).value()) /
                                                                scenario.channels.row(j).norm());

            std::vector<std::string> header{"snr_db", "se_zf", "se_sched"};
            for (Eigen::Index k = 0; k < K; ++k)
                header.push_back("se_user_" + std::to_string(k + 1));
            Csv csv(header);

            std::vector<double> zf(c.snr_db.size()), sched(c.snr_db.size());
            double power_excess = 0;
            nlohmann::json at20;
            for (std::size_t i = 0; i < c.snr_db.size(); ++i)
            {
                const auto z = sum_se(scenario, Scheme::zf, c.snr_db[i]);
                const auto s = sum_se(scenario, Scheme::scheduling, c.snr_db[i]);
                zf[i] = z.sum;
                sched[i] = s.sum;
                std::vector<double> cells{c.snr_db[i], z.sum, s.sum};
                for (Eigen::Index k = 0; k < K; ++k)
                    cells.push_back(z.per_user[k]);
                csv.row(cells);
                power_excess = std::max(power_excess, z.power.sum() / z.total_power - 1);
                if (c.snr_db[i] == 20.0)
                {
                    Eigen::Index best = 0;
                    z.per_user.maxCoeff(&best);
                    at20 = {{"zf_over_scheduling", z.sum / s.sum}, {"best_user", best + 1}};
                }
            }
            bool monotone = true;
            for (std::size_t i = 1; i < zf.size(); ++i)
                if (c.snr_db[i] > c.snr_db[i - 1])
                    monotone = monotone && zf[i] >= zf[i - 1] && sched[i] >= sched[i - 1];

            Run r;
            r.data_name = "sum-se.csv";
            r.data = csv.os.str();
            r.checks.at_most("ZF residual |h_j^T w_k| / |h_j|", zf_residual, 1e-10);
            r.checks.at_most("waterfilling spends at most the budget (relative excess)", power_excess, 1e-12);
            r.checks.holds("sum SE non-decreasing in reference SNR", monotone);
            r.residuals["zf_residual"] = zf_residual;
            r.residuals["channel_model"] = to_string(c.channel_model);
            if (!at20.is_null())
                r.residuals["at_20_dB"] = at20;

            // Finite-difference slope in bits per log2(SNR) over 30..50 dB when both are on the grid.
            const auto find = [&](double db) {
                const auto it = std::find(c.snr_db.begin(), c.snr_db.end(), db);
                return it == c.snr_db.end() ? std::ptrdiff_t(-1) : it - c.snr_db.begin();
            };
            const auto i30 = find(30.0), i50 = find(50.0);
            if (i30 >= 0 && i50 >= 0)
                r.residuals["zf_high_snr_slope"] = (zf[i50] - zf[i30]) / (20 / to_db(2.0));
            return r;
        }

        Run distances_run(const ExperimentConfig &c)
        {
            const auto spec = spec_of(c);
            const auto regions = region_report(spec);
            const double n = double(spec.num_antennas());
            nlohmann::json j = {{"d_F", regions.fraunhofer},
                                {"d_B", regions.bjornson},
                                {"d_FA", regions.fraunhofer_array},
                                {"W", regions.array_diagonal},
                                {"D", regions.antenna_diagonal},
                                {"dof_limit", dof_limit(spec.aperture_area(), spec.wavelength())}};
            Run r;
            r.data_name = "distances.json";
            r.data = j.dump(2) + "\n";
            r.checks.at_most("d_FA = N d_F (relative)", std::abs(regions.fraunhofer_array / (n * regions.fraunhofer) - 1),
                             1e-12);
            const double D = regions.antenna_diagonal, wl = spec.wavelength();
            r.checks.holds("d_FA >= d_B exactly when N >= lambda^2 / D^2",
                           (regions.fraunhofer_array >= regions.bjornson) == (n >= wl * wl / (D * D)));
            r.residuals["d_B_over_d_F"] = regions.bjornson / regions.fraunhofer;
            r.residuals["d_FA_over_d_B"] = regions.fraunhofer_array / regions.bjornson;
            return r;
        }
    }

    ExperimentOutcome run_experiment(const ExperimentConfig &config)
    {
        if (const auto issues = config_issues(config); !issues.empty())
            throw ConfigError(issues);

        const auto start = std::chrono::steady_clock::now();
        Run run;
        switch (config.experiment)
        {
        case Experiment::gain_sweep:
            run = gain_sweep(config);
            break;
        case Experiment::scaling_law:
            run = scaling_law(config);
            break;
        case Experiment::array_gain:
            run = array_gain(config);
            break;
        case Experiment::focus:
            run = focus(config);
            break;
        case Experiment::multiplex:
            run = multiplex(config);
            break;
        case Experiment::sum_se:
            run = sum_se_run(config);
            break;
        case Experiment::distances:
            run = distances_run(config);
            break;
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        const fs::path dir(config.output);
        fs::create_directories(dir);
        ExperimentOutcome out;
        out.data = dir / run.data_name;
        out.metadata = dir / (to_string(config.experiment) + ".meta.json");
        out.checks = std::move(run.checks.items);
        out.residuals = std::move(run.residuals);
        out.runtime_seconds = seconds;

        nlohmann::json meta;
        meta["schema_version"] = kSidecarSchemaVersion;
        meta["experiment"] = to_string(config.experiment);
        meta["library_version"] = std::string(library_version());
        meta["config"] = to_json(config);
        meta["data"] = run.data_name;
        meta["runtime_seconds"] = seconds;
        meta["threads"] = config.threads > 0 ? config.threads : default_thread_count();
        nlohmann::json checks = nlohmann::json::array();
        for (const auto &c : out.checks)
            checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"limit", c.tolerance}});
        meta["checks"] = checks;
        meta["residuals"] = out.residuals;
        meta["passed"] = out.passed();

        write_file_atomically(out.data, run.data);
        write_file_atomically(out.metadata, meta.dump(2) + "\n");
        return out;
    }

} // namespace nearfield
