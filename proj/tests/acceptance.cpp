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

// Acceptance suite: one PASS/FAIL line per criterion, indented detail lines
// underneath. Exit status is the number of failed criteria.

#include "nearfield/beams.hpp"
#include "nearfield/field.hpp"
#include "nearfield/gain.hpp"
#include "nearfield/multiplexing.hpp"
#include "nearfield/regions.hpp"
#include "nearfield/units.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace nearfield;

namespace
{
    constexpr double pi = std::numbers::pi;
    constexpr double lambda = 0.1;
    constexpr double a = lambda / 4;
    constexpr double A = a * a;

#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wformat-security"
#pragma GCC diagnostic ignored "-Wformat-nonliteral"
    struct Verdict
    {
        bool pass = true;
        std::vector<std::string> notes;

        void require(bool ok, const char *fmt, auto... args)
        {
            char buf[512];
            std::snprintf(buf, sizeof buf, fmt, args...);
            notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + buf);
            pass = pass && ok;
        }

        void info(const char *fmt, auto... args)
        {
            char buf[512];
            std::snprintf(buf, sizeof buf, fmt, args...);
            notes.push_back(std::string("info  ") + buf);
        }
    };

#pragma GCC diagnostic pop

    int failures = 0;

    void criterion(int id, const char *title, double budget_seconds, const std::function<void(Verdict &)> &body)
    {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try
        {
            body(v);
        }
        catch (const std::exception &e)
        {
            v.require(false, "exception: %s", e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        v.require(seconds < budget_seconds, "runtime %.2f s (budget %.0f s)", seconds, budget_seconds);
        std::printf("%s criterion %d: %s\n", v.pass ? "PASS" : "FAIL", id, title);
        for (const auto &n : v.notes)
            std::printf("    %s\n", n.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }

    std::vector<double> log_space(double lo, double hi, int count)
    {
        std::vector<double> out;
        for (int i = 0; i < count; ++i)
            out.push_back(lo * std::pow(hi / lo, double(i) / (count - 1)));
        return out;
    }

    const ArraySpec fig9(10000, A, lambda);
}

int main()
{
    criterion(1, "asymptotic gain limits (1/3, 1/2, divergence)", 60, [](Verdict &v) {
        const double d = 20;
        const double exact = alpha_total(d, 1e12, A);
        v.require(std::abs(exact - 1.0 / 3) < 1e-3, "alpha(N = 1e12) = %.6f, |alpha - 1/3| = %.2e < 1e-3", exact,
                  std::abs(exact - 1.0 / 3));
        const auto n_big = std::int64_t(std::llround(1e8 / (2 * A))); // diagonal 10^4 m
        const double p12 = partial_property_gain(d, n_big, A, PropertySet::distances_effective_area).value;
        v.require(std::abs(p12 - 0.5) < 2e-2, "properties{1,2} at diagonal 1e4 m = %.5f, within 2e-2 of 1/2", p12);
        double first_above = 0;
        for (double diag = 1; diag <= 1e6 && first_above == 0; diag *= 1.25)
        {
            const auto n = std::int64_t(std::llround(diag * diag / (2 * A)));
            if (partial_property_gain(d, n, A, PropertySet::distances).value > 1)
                first_above = diag;
        }
        v.require(first_above > 0, "property{1} exceeds 1 from diagonal ~%.0f m", first_above);
    });

    criterion(2, "far-field agreement alpha vs N beta < 1% for diagonal <= d/2", 10, [](Verdict &v) {
        const double d = 20;
        double worst = 0, worst_diag = 0, last_within = 0;
        for (double diag = std::sqrt(2 * A); diag <= d / 2 * (1 + 1e-12); diag *= 1.01)
        {
            const double n = diag * diag / (2 * A);
            const double err = std::abs(alpha_total(d, n, A) / (n * friis_gain(A, d)) - 1);
            if (err > worst)
            {
                worst = err;
                worst_diag = diag;
            }
            if (err < 1e-2)
                last_within = diag;
        }
        const double n_half = (d / 2) * (d / 2) / (2 * A);
        const double at_half = std::abs(alpha_total(d, n_half, A) / (n_half * friis_gain(A, d)) - 1);
        worst = std::max(worst, at_half);
        v.require(worst < 1e-2, "max relative error %.4f at diagonal %.2f m (%.4f at exactly d/2 = 10 m)", worst,
                  std::max(worst_diag, at_half >= worst ? d / 2 : worst_diag), at_half);
        v.info("relative error stays below 1%% up to diagonal %.2f m (~d/4)", last_within);
        v.info("difference at d/2 is %.3f dB", -to_db(1 - at_half));
    });

    criterion(3, "zeta bounds integrated |h_n|^2 within 1e-2 (100 random pairs); zeta additivity 1e-12", 120,
              [](Verdict &v) {
                  std::mt19937_64 rng(20261018);
                  std::uniform_real_distribution<double> u(0, 1);
                  int bound_violations = 0, within = 0;
                  double worst_gap = 0, worst_angle = 0, max_angle_within = 0;
                  for (int trial = 0; trial < 100; ++trial)
                  {
                      const double side = lambda / 4 * (0.25 + 0.75 * u(rng));
                      const Point3 c((u(rng) - 0.5) * 4, (u(rng) - 0.5) * 4, 0);
                      // Direction uniform on the front hemisphere, distance 10..100 wavelengths.
                      const double cos_t = u(rng), phi = 2 * pi * u(rng);
                      const double sin_t = std::sqrt(1 - cos_t * cos_t);
                      const double r = lambda * (10 + 90 * u(rng));
                      const SourcePoint s(c.x() + r * sin_t * std::cos(phi), c.y() + r * sin_t * std::sin(phi),
                                          std::max(r * cos_t, 1e-3));
                      const double g = std::norm(aperture_coefficient(s, c, side, lambda));
                      const double zeta = zeta_bound(s, c, side);
                      const double gap = 1 - g / zeta;
                      const double angle = std::acos(s.depth() / (s.position() - c).norm()) * 180 / pi;
                      bound_violations += g > zeta * (1 + 1e-12);
                      if (gap <= 1e-2)
                      {
                          ++within;
                          max_angle_within = std::max(max_angle_within, angle);
                      }
                      if (gap > worst_gap)
                      {
                          worst_gap = gap;
                          worst_angle = angle;
                      }
                  }
                  v.require(bound_violations == 0, "zeta >= |h_n|^2 in %d of 100 pairs", 100 - bound_violations);
                  v.require(worst_gap <= 1e-2, "largest relative gap %.4f (incidence %.1f deg)", worst_gap,
                            worst_angle);
                  v.info("%d of 100 pairs within 1e-2; gap ~ (pi a/lambda)^2 sin^2(theta)/3 from the phase slope",
                         within);

                  double additivity = 0;
                  for (int trial = 0; trial < 5; ++trial)
                  {
                      const SourcePoint s = trial == 0 ? SourcePoint(0, 0, 20)
                                                       : SourcePoint((u(rng) - 0.5) * 6, (u(rng) - 0.5) * 6,
                                                                     0.5 + 10 * u(rng));
                      long double sum = 0;
                      for (std::int64_t n = 1; n <= fig9.num_antennas(); ++n)
                          sum += zeta_bound(s, antenna_center(fig9, n), a);
                      const double whole = zeta_bound(s, Point3::Zero(), fig9.aperture_side());
                      additivity = std::max(additivity, std::abs(double(sum) / whole - 1));
                      if (trial == 0)
                          additivity =
                              std::max(additivity, std::abs(double(sum) / alpha_total(20.0, 1e4, A) - 1));
                  }
                  v.require(additivity <= 1e-12, "sum of per-antenna zeta vs whole aperture / alpha: %.2e <= 1e-12",
                            additivity);
              });

    criterion(4, "power scaling law (calibration, +3 dB per doubling, saturation, rho = 1)", 10, [](Verdict &v) {
        const double d = 20;
        std::vector<std::int64_t> ns;
        for (int k = 0; k <= 40; ++k)
            ns.push_back(std::int64_t(1) << k);
        const auto flat = scaling_law_sweep(d, A, 0.0, 1.0, ns);
        v.require(std::abs(to_db(flat.points[0].snr)) < 1e-9, "N = 1 at %.2e dB", to_db(flat.points[0].snr));
        double worst_step = 0;
        for (std::size_t i = 1; i < flat.points.size() && flat.points[i].num_antennas <= 100000; ++i)
            worst_step = std::max(worst_step, std::abs(to_db(flat.points[i].snr / flat.points[i - 1].snr) -
                                                       to_db(2.0)));
        v.require(worst_step < 0.5, "per-doubling step within %.3f dB of 3.01 dB for N <= 1e5 (tolerance 0.5 dB)",
                  worst_step);
        const double ceiling = to_db((1.0 / 3) / alpha_total(d, 1.0, A));
        double above = -1e9;
        for (const auto &p : flat.points)
            above = std::max(above, to_db(p.snr) - ceiling);
        const double last = to_db(flat.points.back().snr);
        v.require(above < 0 && ceiling - last < 0.1, "saturates below the %.3f dB ceiling (N = 2^40: %.3f dB)",
                  ceiling, last);

        std::vector<std::int64_t> ns1 = ns;
        ns1.push_back(100000);
        const auto one = scaling_law_sweep(d, A, 1.0, 1.0, ns1);
        double worst_flat = 0;
        for (const auto &p : one.points)
            if (p.num_antennas <= 100000)
                worst_flat = std::max(worst_flat, std::abs(to_db(p.snr)));
        v.require(worst_flat <= 1.0, "rho = 1 within %.3f dB of flat for N <= 1e5 (tolerance 1 dB)", worst_flat);
        bool decreasing = true;
        for (std::size_t i = 1; i < one.points.size(); ++i)
            if (one.points[i - 1].num_antennas >= 10000000 && one.points[i].num_antennas > one.points[i - 1].num_antennas)
                decreasing = decreasing && one.points[i].snr < one.points[i - 1].snr;
        v.require(decreasing, "rho = 1 strictly decreasing beyond N = 1e7");
    });

    criterion(5, "array-gain saturation (bound at d_B and d_FA; exact within 1e-2 of bound)", 300, [](Verdict &v) {
        const auto r = region_report(fig9);
        const double at_db = normalized_array_gain(fig9, r.bjornson, ArrayGainMode::bound);
        const double at_dfa = normalized_array_gain(fig9, r.fraunhofer_array, ArrayGainMode::bound);
        v.require(at_db >= 0.94 && at_db <= 0.98, "bound at d_B = %.1f d_F: %.5f in [0.94, 0.98]",
                  r.bjornson / r.fraunhofer, at_db);
        v.require(at_dfa >= 0.99, "bound at d_FA = %.0f d_F: %.5f >= 0.99", r.fraunhofer_array / r.fraunhofer, at_dfa);
        double worst = 0, worst_at = 0;
        for (const double d : log_space(r.bjornson, r.fraunhofer_array, 10))
        {
            const double gap = normalized_array_gain(fig9, d, ArrayGainMode::bound) -
                               normalized_array_gain(fig9, d, ArrayGainMode::exact);
            if (std::abs(gap) > worst)
            {
                worst = std::abs(gap);
                worst_at = d / r.fraunhofer;
            }
        }
        v.require(worst <= 1e-2, "10 log-spaced distances in [d_B, d_FA]: max |bound - exact| = %.5f at %.0f d_F",
                  worst, worst_at);
        double wide = 0, wide_at = 0;
        for (const double k : log_space(13, 1e5, 25))
        {
            const double d = k * r.fraunhofer;
            const double gap = normalized_array_gain(fig9, d, ArrayGainMode::bound) -
                               normalized_array_gain(fig9, d, ArrayGainMode::exact);
            if (gap > wide)
            {
                wide = gap;
                wide_at = k;
            }
        }
        v.info("over [13, 1e5] d_F the gap peaks at %.4f near %.0f d_F (oblique phase slope per antenna)", wide,
               wide_at);
    });

    criterion(6, "depth of focus (far-field start, d_B crossings, closed form vs numeric)", 10, [](Verdict &v) {
        const double dF = 1, dFA = 1e4 * dF, dB = 200 * std::sqrt(2.0) * dF;
        const auto inf = half_power_crossings(FocalPoint::infinity(), dFA);
        v.require(std::abs(inf.lower / (dFA / 10) - 1) <= 2e-2, "z = inf: 3 dB region starts at %.1f d_F (d_FA/10 = %.0f)",
                  inf.lower, dFA / 10);
        const auto db = half_power_crossings(FocalPoint::at(dB), dFA);
        v.require(std::abs(db.lower / 220 - 1) <= 3e-2 && db.upper && std::abs(*db.upper / 394 - 1) <= 3e-2,
                  "z = d_B: crossings at %.1f and %.1f d_F (targets 220, 394 within 3%%)", db.lower,
                  db.upper.value_or(NAN));
        double worst = 0;
        std::string where;
        const std::vector<std::pair<std::string, FocalPoint>> focals = {
            {"inf", FocalPoint::infinity()},     {"d_FA/10", FocalPoint::at(dFA / 10)}, {"d_B", FocalPoint::at(dB)},
            {"d_FA/20", FocalPoint::at(dFA / 20)}, {"d_FA/40", FocalPoint::at(dFA / 40)},
            {"d_FA/60", FocalPoint::at(dFA / 60)}, {"d_FA/80", FocalPoint::at(dFA / 80)}};
        for (const auto &[name, f] : focals)
        {
            const auto closed = depth_of_focus(f, dFA);
            const auto numeric = half_power_crossings(f, dFA);
            const double lo = std::abs(closed.lower / numeric.lower - 1);
            if (lo > worst)
            {
                worst = lo;
                where = name + " lower";
            }
            if (closed.upper && numeric.upper)
            {
                const double hi = std::abs(*closed.upper / *numeric.upper - 1);
                if (hi > worst)
                {
                    worst = hi;
                    where = name + " upper";
                }
            }
        }
        v.require(worst <= 3e-2, "Theorem 3 endpoints vs numeric 0.5-crossings: worst %.4f (%s)", worst,
                  where.c_str());
        const auto edge = half_power_crossings(FocalPoint::at(dFA / 10), dFA);
        v.info("z = d_FA/10: closed form upper end is infinite, exact crossing at %.0f d_F", edge.upper.value_or(NAN));
    });

    criterion(7, "focal ladder K = 5: abutting intervals, gain 0.5 +- 0.02 at each junction", 10, [](Verdict &v) {
        const double dFA = 1e4;
        const auto l = focal_ladder(dFA, 5);
        const std::vector<double> expected{dFA, dFA / 20, dFA / 40, dFA / 60, dFA / 80};
        bool ladder_ok = l.size() == 5;
        for (std::size_t k = 0; ladder_ok && k < 5; ++k)
            ladder_ok = std::abs(l.distances[k] / expected[k] - 1) < 1e-15;
        v.require(ladder_ok, "distances {d_FA, d_FA/20, d_FA/40, d_FA/60, d_FA/80}");
        const auto js = ladder_junctions(l);
        double abut = 0, worst = 0;
        for (std::size_t k = 0; k < js.size(); ++k)
        {
            const auto nearer = FocalPoint::at(l.distances[k + 1]);
            const auto farther = k == 0 ? FocalPoint::infinity() : FocalPoint::at(l.distances[k]);
            abut = std::max(abut, std::abs(*depth_of_focus(nearer, dFA).upper / depth_of_focus(farther, dFA).lower - 1));
            const double g1 = gain_off_focus(js[k], nearer, dFA), g2 = gain_off_focus(js[k], farther, dFA);
            worst = std::max({worst, std::abs(g1 - 0.5), std::abs(g2 - 0.5)});
            v.info("junction d_FA/%.0f: gains %.4f (nearer beam) and %.4f (%s)", dFA / js[k], g1, g2,
                   k == 0 ? "far-field beam" : "farther beam");
        }
        v.require(abut < 1e-12, "intervals abut (relative mismatch %.1e)", abut);
        v.require(worst <= 0.02, "max |gain - 0.5| at junctions = %.4f", worst);
        v.info("the d_FA-focused beam itself gives %.4f at d_FA/10",
               gain_off_focus(dFA / 10, FocalPoint::at(dFA), dFA));
    });

    criterion(8, "depth multiplexing: ZF slope 5 log2(SNR), ZF/scheduling in [3, 5] at 20 dB, closest user best",
              120, [](Verdict &v) {
                  const auto dFA = region_report(fig9).fraunhofer_array;
                  const auto s = make_scenario(fig9, focal_ladder(dFA, 5));
                  const double slope =
                      (sum_se(s, Scheme::zf, 50).sum - sum_se(s, Scheme::zf, 30).sum) / (20 / to_db(2.0));
                  v.require(std::abs(slope / 5 - 1) <= 5e-2, "slope over 30..50 dB = %.4f bits per log2(SNR)", slope);
                  const auto zf = sum_se(s, Scheme::zf, 20), sched = sum_se(s, Scheme::scheduling, 20);
                  const double ratio = zf.sum / sched.sum;
                  v.require(ratio >= 3 && ratio <= 5, "ZF %.3f / scheduling %.3f = %.3f", zf.sum, sched.sum, ratio);
                  Eigen::Index best = 0;
                  zf.per_user.maxCoeff(&best);
                  v.require(best == 4, "highest per-user SE: user %d (closest is user 5)", int(best + 1));
              });

    criterion(9, "property suites and worked examples", 60, [](Verdict &v) {
        // Waterfilling.
        const Eigen::Vector3d g(1.0, 0.5, 0.1);
        const Eigen::VectorXd p = waterfilling(g, 3.0);
        const Eigen::Vector3d grid = oracle::simplex_grid_argmax(g, 3.0, 1e-3);
        double kkt = 0;
        const double mu = p[0] + 1 / g[0];
        for (int k = 0; k < 3; ++k)
            kkt = std::max(kkt, std::abs(p[k] - std::max(0.0, mu - 1 / g[k])));
        v.require((p - grid).cwiseAbs().maxCoeff() <= 1e-3 && kkt < 1e-12,
                  "waterfilling (%.4f, %.4f, %.4f) vs simplex grid (%.3f, %.3f, %.3f); KKT residual %.1e", p[0], p[1],
                  p[2], grid[0], grid[1], grid[2], kkt);

        // ZF residual on the ladder and on random channels.
        const auto s = make_scenario(fig9, focal_ladder(region_report(fig9).fraunhofer_array, 5));
        std::mt19937_64 rng(9);
        double residual = 0;
        auto measure = [&](const Eigen::MatrixXcd &h) {
            const auto w = zf_precoders(h).weights;
            for (Eigen::Index k = 0; k < h.rows(); ++k)
                for (Eigen::Index j = 0; j < h.rows(); ++j)
                    if (j != k)
                        residual = std::max(residual, std::abs((h.row(j) * w.col(k)).value()) / h.row(j).norm());
        };
        measure(s.channels);
        for (int t = 0; t < 20; ++t)
        {
            Eigen::MatrixXcd h(6, 64);
            for (Eigen::Index k = 0; k < 6; ++k)
                h.row(k) = oracle::random_unit_vector(rng, 64).transpose();
            measure(h);
        }
        v.require(residual <= 1e-10, "ZF residual %.2e <= 1e-10", residual);

        // Uplink / downlink MF duality.
        double duality = 0;
        for (int t = 0; t < 100; ++t)
        {
            const Eigen::VectorXcd h = oracle::random_unit_vector(rng, 128) * (0.01 + t);
            const auto w = mf_precoder(h);
            const double dl = downlink_snr(h, w, 2.0, 0.3), ul = uplink_snr(h, w.conjugate(), 2.0, 0.3);
            duality = std::max(duality, std::abs(dl / ul - 1));
        }
        v.require(duality <= 1e-14, "uplink/downlink MF SNR relative difference %.1e", duality);

        // Fresnel.
        bool monotone = true;
        for (double x = 0.001; x <= 2.0; x += 0.001)
            monotone = monotone && fresnel_array_factor(x) < fresnel_array_factor(x - 0.001);
        const double a125 = fresnel_array_factor(1.25);
        v.require(monotone && a125 >= 0.49 && a125 <= 0.51, "A(x) decreasing on [0, 2]; A(1.25) = %.5f", a125);
        double fres = 0;
        for (double x = 0; x <= 10.0; x += 0.01)
            fres = std::max({fres, std::abs(fresnel_c(x) - oracle::fresnel_c(x)),
                             std::abs(fresnel_s(x) - oracle::fresnel_s(x))});
        v.require(fres <= 1e-8, "Fresnel C/S vs quadrature oracle on [0, 10]: %.1e", fres);

        // Worked examples: relative agreement within 1% (3 significant figures of rounded inputs).
        auto close = [](double ours, double paper) { return std::abs(ours / paper - 1) <= 1e-2; };
        const double iso = lambda * lambda / (4 * pi);
        const double e1a = to_db(friis_gain(iso, 2.5)), e1b = to_db(friis_gain(iso, 25.0));
        v.require(close(e1a, -50) && close(e1b, -70), "Example 1: %.3g dB at 2.5 m, %.3g dB at 25 m", e1a, e1b);
        v.info("Example 1 at 250 m gives %.3g dB; the quoted 20 dB span matches a decade of distance",
               to_db(friis_gain(iso, 250.0)));
        const double e2 = fraunhofer_distance(lambda, lambda);
        v.require(close(e2, 0.2), "Example 2: d_F = %.3g m", e2);
        const double e3[4] = {fraunhofer_array_distance(1.0, 1.0, 0.1), fraunhofer_array_distance(1.0, 10.0, 0.1),
                              fraunhofer_array_distance(1.0, 1.0, 0.01), fraunhofer_array_distance(1.0, 10.0, 0.01)};
        v.require(close(e3[0], 20) && close(e3[1], 2000) && close(e3[2], 200) && close(e3[3], 20000),
                  "Example 3: d_FA = %.3g m, %.3g m, %.3g m, %.3g m", e3[0], e3[1], e3[2], e3[3]);
        const double e4a = dof_limit(1.79 * 1.79, 0.1), e4b = dof_limit(1.79 * 1.79, 0.01);
        v.require(close(e4a, 1000) && close(e4b, 1e5), "Example 4: DoF %.3g and %.3g", e4a, e4b);
    });

    std::printf("%d of 9 criteria failed\n", failures);
    return failures;
}
