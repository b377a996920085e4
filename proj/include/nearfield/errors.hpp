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

#ifndef NEARFIELD_ERRORS_HPP
#define NEARFIELD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nearfield
{
    // Argument outside the mathematical domain of an operation (e.g. |phi| >= pi/2).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Evaluation point inside the reactive near-field where the far-zone Green
    // function is no longer valid.
    class ValidityError : public std::range_error
    {
    public:
        using std::range_error::range_error;
    };

    // Quadrature did not reach the requested tolerance.
    class NumericalError : public std::runtime_error
    {
    public:
        NumericalError(const std::string &what, double estimate, double error_bound)
            : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

        double estimate() const noexcept { return estimate_; }
        double error_bound() const noexcept { return error_bound_; }

    private:
        double estimate_;
        double error_bound_;
    };

    // Channel matrix without full row rank. Users are 1-based, as in the message.
    class SingularityError : public std::runtime_error
    {
    public:
        SingularityError(const std::string &what, std::size_t user_a, std::size_t user_b)
            : std::runtime_error(what), users_(user_a, user_b) {}

        std::pair<std::size_t, std::size_t> users() const noexcept { return users_; }

    private:
        std::pair<std::size_t, std::size_t> users_;
    };

    class DegenerateChannelError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class NoSignalError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Invalid experiment configuration; carries every problem found, not just the first.
    class ConfigError : public std::runtime_error
    {
    public:
        explicit ConfigError(std::vector<std::string> issues)
            : std::runtime_error(join(issues)), issues_(std::move(issues)) {}

        const std::vector<std::string> &issues() const noexcept { return issues_; }

    private:
        static std::string join(const std::vector<std::string> &issues)
        {
            std::string out = "invalid configuration:";
            for (const auto &i : issues)
                out += "\n  - " + i;
            return out;
        }

        std::vector<std::string> issues_;
    };

} // namespace nearfield

#endif
