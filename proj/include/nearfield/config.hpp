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

#ifndef NEARFIELD_CONFIG_HPP
#define NEARFIELD_CONFIG_HPP

#include "nearfield/beams.hpp"
#include "nearfield/field.hpp"
#include "nearfield/quadrature.hpp"
#include "nearfield/regions.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nearfield
{
    enum class Experiment
    {
        gain_sweep,
        scaling_law,
        array_gain,
        focus,
        multiplex,
        sum_se,
        distances
    };

    std::string to_string(Experiment e);
    // Throws ConfigError listing the valid names.
    Experiment experiment_from_string(const std::string &name);
    const std::vector<std::string> &experiment_names();

    struct ArrayConfig
    {
        std::int64_t num_antennas = 10000;
        double antenna_area = 0.025 * 0.025;
        double wavelength = 0.1;

        bool operator==(const ArrayConfig &) const = default;
    };

    struct SourceConfig
    {
        double distance = 20.0;
        double angle = 0.0; // radians; "angle_deg" is accepted on input

        bool operator==(const SourceConfig &) const = default;
    };

    struct ExperimentConfig
    {
        Experiment experiment = Experiment::gain_sweep;
        ArrayConfig array;
        SourceConfig source;

        std::vector<std::int64_t> num_antennas; // gain-sweep, scaling-law
        std::vector<double> distances;          // array-gain, focus, multiplex; multiples of d_F
        std::vector<double> rho;                // scaling-law
        std::vector<double> snr_db;             // sum-se reference SNRs
        std::vector<std::string> focal;         // focus: "inf", "dB", "dFA", "dFA/k" or a multiple of d_F
        std::int64_t users = 5;                 // multiplex, sum-se
        bool exact = true;                      // array-gain: also run the per-antenna integrals
        ChannelModel channel_model = ChannelModel::hybrid;
        QuadratureConfig quadrature = array_gain_quadrature();
        std::string output = "out";
        int threads = 0;

        bool operator==(const ExperimentConfig &) const = default;
    };

    // Sweep grids used when a list is absent; empty for lists the experiment ignores.
    void fill_defaults(ExperimentConfig &config);

    // Every problem with the config at once; empty when valid.
    std::vector<std::string> config_issues(const ExperimentConfig &config);

    nlohmann::json to_json(const ExperimentConfig &config);

    // Strict parse: unknown keys and type mismatches are reported with their key
    // path. Throws ConfigError with all issues. Defaults are filled in.
    ExperimentConfig config_from_json(const nlohmann::json &j);

    // Reads a JSON config; an empty (or whitespace-only) file is the default
    // gain-sweep config. `experiment`, when given, replaces the file's choice
    // before defaults are filled. Throws ConfigError on parse or validation failure.
    ExperimentConfig validate_config(const std::filesystem::path &path,
                                     std::optional<Experiment> experiment = std::nullopt);
    ExperimentConfig parse_config(const std::string &text, const std::string &origin = "<string>",
                                  std::optional<Experiment> experiment = std::nullopt);

    // Focal-point token relative to the array's region distances.
    FocalPoint focal_from_string(const std::string &token, const RegionReport &regions);

} // namespace nearfield

#endif
