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

#ifndef NEARFIELD_QUADRATURE_HPP
#define NEARFIELD_QUADRATURE_HPP

#include "nearfield/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace nearfield
{
    struct QuadratureConfig
    {
        double rel_tol = 1e-9;             // successive orders must agree to this
        int min_order = 4;                 // Gauss-Legendre nodes per axis to start from
        int max_order = 1024;              // give up beyond this
        double nodes_per_wavelength = 8.0; // floor on nodes per axis for oscillatory integrands

        bool operator==(const QuadratureConfig &) const = default;
    };

    // Nodes and weights on [-1, 1].
    struct GaussLegendreRule
    {
        std::vector<double> nodes;
        std::vector<double> weights;
    };

    // Thread-safe; rules are computed once per order and shared.
    std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order);

    template <typename Value>
    struct QuadratureResult
    {
        Value value;
        double error_estimate;
        int order;
    };

    namespace detail
    {
        template <typename Value>
        double magnitude(const Value &v)
        {
            using std::abs;
            return abs(v);
        }

        template <typename Value, typename Func>
        Value tensor_gauss(const Func &f, double x0, double x1, double y0, double y1, const GaussLegendreRule &rule)
        {
            const double hx = (x1 - x0) / 2, cx = (x0 + x1) / 2;
            const double hy = (y1 - y0) / 2, cy = (y0 + y1) / 2;
            Value total{};
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            {
                const double x = cx + hx * rule.nodes[i];
                Value row{};
                for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                    row += rule.weights[j] * f(x, cy + hy * rule.nodes[j]);
                total += rule.weights[i] * row;
            }
            return total * (hx * hy);
        }
    }

    // Tensor-product Gauss-Legendre over [x0,x1]x[y0,y1], doubling the order until two
    // successive estimates agree to cfg.rel_tol. Throws NumericalError past cfg.max_order.
    template <typename Func, typename Value = decltype(std::declval<Func>()(0.0, 0.0))>
    QuadratureResult<Value> integrate_rectangle(const Func &f, double x0, double x1, double y0, double y1,
                                                const QuadratureConfig &cfg, int start_order)
    {
        int order = std::max({start_order, cfg.min_order, 1});
        Value previous = detail::tensor_gauss<Value>(f, x0, x1, y0, y1, *gauss_legendre(order));
        double err = 0;
        while (true)
        {
            const int next = 2 * order;
            if (next > cfg.max_order)
                throw NumericalError("tensor Gauss-Legendre did not reach rel_tol " + std::to_string(cfg.rel_tol) +
                                         " within " + std::to_string(cfg.max_order) + " nodes per axis",
                                     detail::magnitude(previous), err);
            Value current = detail::tensor_gauss<Value>(f, x0, x1, y0, y1, *gauss_legendre(next));
            err = detail::magnitude(current - previous);
            order = next;
            if (err <= cfg.rel_tol * detail::magnitude(current) || err == 0)
                return {current, err, order};
            previous = current;
        }
    }

    // Fixed tensor-product rule, no convergence check.
    template <typename Func, typename Value = decltype(std::declval<Func>()(0.0, 0.0))>
    Value integrate_rectangle_fixed(const Func &f, double x0, double x1, double y0, double y1, int order)
    {
        return detail::tensor_gauss<Value>(f, x0, x1, y0, y1, *gauss_legendre(order));
    }

    namespace detail
    {
        // 15-point Kronrod extension of the 7-point Gauss rule.
        template <typename Func>
        double gauss_kronrod_15(const Func &f, double a, double b, double &err)
        {
            static constexpr double xk[8] = {
                0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
            static constexpr double wk[8] = {
                0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
            static constexpr double wg[4] = {
                0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

            const double c = (a + b) / 2, h = (b - a) / 2;
            const double fc = f(c);
            double kronrod = wk[7] * fc;
            double gauss = wg[3] * fc;
            for (int i = 0; i < 7; ++i)
            {
                const double dx = h * xk[i];
                const double pair = f(c - dx) + f(c + dx);
                kronrod += wk[i] * pair;
                if (i % 2 == 1)
                    gauss += wg[i / 2] * pair;
            }
            kronrod *= h;
            gauss *= h;
            err = std::abs(kronrod - gauss);
            return kronrod;
        }
    }

    // Globally adaptive Gauss-Kronrod on [a,b] for smooth real integrands.
    template <typename Func>
    QuadratureResult<double> integrate_adaptive(const Func &f, double a, double b, double rel_tol = 1e-10,
                                                double abs_tol = 0.0, int max_intervals = 20000)
    {
        struct Interval
        {
            double a, b, value, err;
        };
        auto less_err = [](const Interval &l, const Interval &r) { return l.err < r.err; };

        std::vector<Interval> heap;
        double e0;
        const double v0 = detail::gauss_kronrod_15(f, a, b, e0);
        heap.push_back({a, b, v0, e0});
        double total = v0, total_err = e0;

        while (total_err > std::max(abs_tol, rel_tol * std::abs(total)))
        {
            if (static_cast<int>(heap.size()) >= max_intervals)
                throw NumericalError("adaptive Gauss-Kronrod exceeded " + std::to_string(max_intervals) + " intervals",
                                     total, total_err);
            std::pop_heap(heap.begin(), heap.end(), less_err);
            const Interval worst = heap.back();
            heap.pop_back();
            const double mid = (worst.a + worst.b) / 2;
            double el, er;
            const double vl = detail::gauss_kronrod_15(f, worst.a, mid, el);
            const double vr = detail::gauss_kronrod_15(f, mid, worst.b, er);
            heap.push_back({worst.a, mid, vl, el});
            std::push_heap(heap.begin(), heap.end(), less_err);
            heap.push_back({mid, worst.b, vr, er});
            std::push_heap(heap.begin(), heap.end(), less_err);

            // Re-sum from scratch so that the running total does not drift.
            total = 0;
            total_err = 0;
            for (const auto &iv : heap)
            {
                total += iv.value;
                total_err += iv.err;
            }
        }
        return {total, total_err, static_cast<int>(heap.size())};
    }

    // Nested adaptive integration over [x0,x1]x[y0,y1]: outer in x, inner in y.
    template <typename Func>
    QuadratureResult<double> integrate_adaptive_2d(const Func &f, double x0, double x1, double y0, double y1,
                                                   double rel_tol = 1e-10)
    {
        double inner_err = 0;
        auto inner = [&](double x) {
            auto r = integrate_adaptive([&](double y) { return f(x, y); }, y0, y1, rel_tol / 10);
            inner_err = std::max(inner_err, r.error_estimate);
            return r.value;
        };
        auto outer = integrate_adaptive(inner, x0, x1, rel_tol);
        outer.error_estimate += inner_err * (x1 - x0);
        return outer;
    }

} // namespace nearfield

#endif
