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

#ifndef NEARFIELD_UNITS_HPP
#define NEARFIELD_UNITS_HPP

#include <cmath>
#include <numbers>

namespace nearfield
{
    template <typename Scalar>
    inline constexpr Scalar pi_v = std::numbers::pi_v<Scalar>;

    // All gains, SNRs and losses in this library are power ratios, so dB is 10*log10.
    template <typename Scalar>
    Scalar to_db(Scalar power_ratio)
    {
        using std::log10;
        return Scalar(10) * log10(power_ratio);
    }

    template <typename Scalar>
    Scalar from_db(Scalar db)
    {
        using std::pow;
        return pow(Scalar(10), db / Scalar(10));
    }

} // namespace nearfield

#endif
