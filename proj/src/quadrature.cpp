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

#include "nearfield/quadrature.hpp"
#include "nearfield/units.hpp"

#include <map>
#include <mutex>

namespace nearfield
{
    namespace
    {
        GaussLegendreRule compute_rule(int order)
        {
            GaussLegendreRule rule;
            rule.nodes.resize(order);
            rule.weights.resize(order);
            const int half = (order + 1) / 2;
            for (int i = 0; i < half; ++i)
            {
                // Tricomi initial guess, then Newton on P_n.
                double x = std::cos(pi_v<double> * (i + 0.75) / (order + 0.5));
                double dp = 0;
                for (int iter = 0; iter < 100; ++iter)
                {
                    double p0 = 1, p1 = x;
                    for (int k = 2; k <= order; ++k)
                    {
                        const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                        p0 = p1;
                        p1 = pk;
                    }
                    dp = order * (x * p1 - p0) / (x * x - 1);
                    const double dx = p1 / dp;
                    x -= dx;
                    if (std::abs(dx) < 1e-16)
                        break;
                }
                // Recompute the derivative at the converged node.
                double p0 = 1, p1 = x;
                for (int k = 2; k <= order; ++k)
                {
                    const double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = pk;
                }
                dp = order * (x * p1 - p0) / (x * x - 1);
                const double w = 2 / ((1 - x * x) * dp * dp);
                rule.nodes[i] = -x;
                rule.nodes[order - 1 - i] = x;
                rule.weights[i] = w;
                rule.weights[order - 1 - i] = w;
            }
            if (order % 2 == 1)
                rule.nodes[order / 2] = 0.0;
            return rule;
        }
    }

    std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order)
    {
        if (order < 1)
            throw DomainError("Gauss-Legendre order must be positive");
        if (order == 1)
            return std::make_shared<const GaussLegendreRule>(GaussLegendreRule{{0.0}, {2.0}});

        static std::mutex mutex;
        static std::map<int, std::shared_ptr<const GaussLegendreRule>> cache;
        std::lock_guard lock(mutex);
        auto it = cache.find(order);
        if (it == cache.end())
            it = cache.emplace(order, std::make_shared<const GaussLegendreRule>(compute_rule(order))).first;
        return it->second;
    }

} // namespace nearfield
