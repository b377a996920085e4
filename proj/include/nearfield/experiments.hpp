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

#ifndef NEARFIELD_EXPERIMENTS_HPP
#define NEARFIELD_EXPERIMENTS_HPP

#include "nearfield/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace nearfield
{
    std::string_view library_version();

    inline constexpr int kSidecarSchemaVersion = 1;

    // A sanity assertion embedded in an experiment run.
    struct Check
    {
        std::string name;
        bool passed;
        double value;     // observed quantity
        double tolerance; // limit it was compared against
    };

    struct ExperimentOutcome
    {
        std::filesystem::path data;     // CSV, or JSON for `distances`
        std::filesystem::path metadata; // <experiment>.meta.json sidecar
        std::vector<Check> checks;
        nlohmann::json residuals;
        double runtime_seconds = 0;

        bool passed() const;
    };

    // Runs one experiment into config.output (created if missing). Data and
    // sidecar are each written to a temporary file and renamed into place.
    // Numerical failures propagate as exceptions.
    ExperimentOutcome run_experiment(const ExperimentConfig &config);

    // Shortest round-trip decimal form; "nan" / "inf" / "-inf" for non-finite values.
    std::string format_number(double value);

    void write_file_atomically(const std::filesystem::path &path, const std::string &content);

} // namespace nearfield

#endif
