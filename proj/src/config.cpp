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

#include "nearfield/config.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/units.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace nearfield
{
    namespace
    {
        const std::vector<std::pair<Experiment, std::string>> kNames = {
            {Experiment::gain_sweep, "gain-sweep"}, {Experiment::scaling_law, "scaling-law"},
            {Experiment::array_gain, "array-gain"}, {Experiment::focus, "focus"},
            {Experiment::multiplex, "multiplex"},   {Experiment::sum_se, "sum-se"},
            {Experiment::distances, "distances"}};

        std::vector<double> log_grid(double lo_exp, double hi_exp, int per_decade)
        {
            std::vector<double> out;
            const int steps = int(std::lround((hi_exp - lo_exp) * per_decade));
            for (int i = 0; i <= steps; ++i)
                out.push_back(std::pow(10.0, lo_exp + (hi_exp - lo_exp) * i / steps));
            return out;
        }

        std::string fmt(double v)
        {
            std::ostringstream os;
            os.precision(10);
            os << v;
            return os.str();
        }

        // Strict readers: on a type mismatch they record an issue and leave `out` alone.
        class Reader
        {
        public:
            std::vector<std::string> issues;

            void number(const nlohmann::json &j, const std::string &path, double &out)
            {
                if (j.is_number())
                    out = j.get<double>();
                else
                    issues.push_back(path + ": expected a number, got " + j.type_name());
            }

            template <typename Int>
            void integer(const nlohmann::json &j, const std::string &path, Int &out)
            {
                if (j.is_number_integer())
                    out = j.get<Int>();
                else if (j.is_number_float() && std::floor(j.get<double>()) == j.get<double>() &&
                         std::abs(j.get<double>()) < 9e15)
                    out = Int(j.get<double>());
                else
                    issues.push_back(path + ": expected an integer, got " + j.dump());
            }

            void boolean(const nlohmann::json &j, const std::string &path, bool &out)
            {
                if (j.is_boolean())
                    out = j.get<bool>();
                else
                    issues.push_back(path + ": expected true or false, got " + j.type_name());
            }

            void string(const nlohmann::json &j, const std::string &path, std::string &out)
            {
                if (j.is_string())
                    out = j.get<std::string>();
                else
                    issues.push_back(path + ": expected a string, got " + j.type_name());
            }

            template <typename T, typename Item>
            void list(const nlohmann::json &j, const std::string &path, std::vector<T> &out, Item item)
            {
                if (!j.is_array())
                {
                    issues.push_back(path + ": expected a list, got " + j.type_name());
                    return;
                }
                std::vector<T> values(j.size());
                for (std::size_t i = 0; i < j.size(); ++i)
                    (this->*item)(j[i], path + "[" + std::to_string(i) + "]", values[i]);
                out = std::move(values);
            }

            bool object(const nlohmann::json &j, const std::string &path)
            {
                if (j.is_object())
                    return true;
                issues.push_back(path + ": expected an object, got " + j.type_name());
                return false;
            }

            void unknown(const std::string &path) { issues.push_back(path + ": unknown key"); }
        };

        bool perfect_square(std::int64_t n)
        {
            if (n < 1)
                return false;
            auto s = static_cast<std::int64_t>(std::sqrt(double(n)));
            while (s * s > n)
                --s;
            while ((s + 1) * (s + 1) <= n)
                ++s;
            return s * s == n;
        }
    }

    std::string to_string(Experiment e)
    {
        for (const auto &[k, name] : kNames)
            if (k == e)
                return name;
        return "unknown";
    }

    const std::vector<std::string> &experiment_names()
    {
        static const std::vector<std::string> names = [] {
            std::vector<std::string> out;
            for (const auto &[k, name] : kNames)
                out.push_back(name);
            return out;
        }();
        return names;
    }

    Experiment experiment_from_string(const std::string &name)
    {
        for (const auto &[k, n] : kNames)
            if (n == name)
                return k;
        std::string valid;
        for (const auto &n : experiment_names())
            valid += (valid.empty() ? "" : ", ") + n;
        throw ConfigError({"experiment: unknown name '" + name + "' (expected one of " + valid + ")"});
    }

    void fill_defaults(ExperimentConfig &c)
    {
        switch (c.experiment)
        {
        case Experiment::gain_sweep:
            if (c.num_antennas.empty())
            {
                // Array diagonals from one antenna up to about 10^4 m for the default antenna.
                const double max_side = 1e4 / std::sqrt(2 * c.array.antenna_area);
                std::int64_t last = 0;
                for (double side : log_grid(0.0, std::log10(max_side), 8))
                {
                    const auto s = std::max<std::int64_t>(1, std::llround(side));
                    if (s != last)
                        c.num_antennas.push_back(s * s);
                    last = s;
                }
            }
            break;
        case Experiment::scaling_law:
            if (c.num_antennas.empty())
                for (int k = 0; k <= 40; ++k)
                    c.num_antennas.push_back(std::int64_t(1) << k);
            if (c.rho.empty())
                c.rho = {0.0, 0.5, 1.0};
            break;
        case Experiment::array_gain:
            if (c.distances.empty())
                c.distances = log_grid(1.2, 5.0, 5);
            break;
        case Experiment::focus:
            if (c.distances.empty())
                c.distances = log_grid(1.5, 6.0, 20);
            if (c.focal.empty())
                c.focal = {"inf", "dFA/10", "dB"};
            break;
        case Experiment::multiplex:
            if (c.distances.empty())
                c.distances = log_grid(1.5, 6.0, 20);
            break;
        case Experiment::sum_se:
            if (c.snr_db.empty())
                for (int db = -10; db <= 60; db += 2)
                    c.snr_db.push_back(db);
            break;
        case Experiment::distances:
            break;
        }
    }

    FocalPoint focal_from_string(const std::string &token, const RegionReport &regions)
    {
        auto bad = [&] {
            return ConfigError({"focal: cannot parse '" + token + "' (use inf, dB, dFA, dFA/<k> or a multiple of d_F)"});
        };
        if (token == "inf")
            return FocalPoint::infinity();
        if (token == "dB")
            return FocalPoint::at(regions.bjornson);
        if (token == "dFA")
            return FocalPoint::at(regions.fraunhofer_array);
        auto number = [&](const std::string &s) {
            std::size_t used = 0;
            double v = 0;
            try
            {
                v = std::stod(s, &used);
            }
            catch (const std::exception &)
            {
                throw bad();
            }
            if (used != s.size() || !(v > 0) || !std::isfinite(v))
                throw bad();
            return v;
        };
        if (token.rfind("dFA/", 0) == 0)
            return FocalPoint::at(regions.fraunhofer_array / number(token.substr(4)));
        return FocalPoint::at(number(token) * regions.fraunhofer);
    }

    std::vector<std::string> config_issues(const ExperimentConfig &c)
    {
        std::vector<std::string> issues;
        const auto &a = c.array;
        if (!perfect_square(a.num_antennas))
            issues.push_back("array.num_antennas = " + std::to_string(a.num_antennas) +
                             " is not a perfect square (square-grid assumption: sqrt(N) x sqrt(N) antennas)");
        if (!(a.antenna_area > 0) || !std::isfinite(a.antenna_area))
            issues.push_back("array.antenna_area must be positive");
        if (!(a.wavelength > 0) || !std::isfinite(a.wavelength))
            issues.push_back("array.wavelength must be positive");
        if (!(c.source.distance > 0) || !std::isfinite(c.source.distance))
            issues.push_back("source.distance must be positive");
        if (!(std::abs(c.source.angle) < pi_v<double> / 2))
            issues.push_back("source.angle = " + fmt(c.source.angle * 180 / pi_v<double>) +
                             " deg violates |phi| < pi/2");
        if (c.experiment == Experiment::gain_sweep && c.source.angle != 0)
            issues.push_back("source.angle: gain-sweep compares broadside models only; use angle 0");

        for (std::size_t i = 0; i < c.num_antennas.size(); ++i)
            if (c.num_antennas[i] < 1)
                issues.push_back("num_antennas[" + std::to_string(i) + "] must be at least 1");
        for (std::size_t i = 0; i < c.distances.size(); ++i)
            if (!(c.distances[i] > 0) || !std::isfinite(c.distances[i]))
                issues.push_back("distances[" + std::to_string(i) + "] must be positive");
        for (std::size_t i = 0; i < c.rho.size(); ++i)
            if (!(c.rho[i] >= 0))
                issues.push_back("rho[" + std::to_string(i) + "] must be non-negative");
        for (std::size_t i = 0; i < c.snr_db.size(); ++i)
            if (!std::isfinite(c.snr_db[i]))
                issues.push_back("snr_db[" + std::to_string(i) + "] must be finite");
        if (c.users < 1)
            issues.push_back("users must be at least 1");
        else if (c.users > a.num_antennas)
            issues.push_back("users = " + std::to_string(c.users) + " exceeds array.num_antennas");

        if (issues.empty() && !c.focal.empty())
        {
            const auto regions = region_report(ArraySpec(a.num_antennas, a.antenna_area, a.wavelength));
            for (const auto &f : c.focal)
                try
                {
                    focal_from_string(f, regions);
                }
                catch (const ConfigError &e)
                {
                    issues.push_back(e.issues().front());
                }
        }
        if (c.experiment == Experiment::array_gain && c.exact && issues.empty())
        {
            const double dF = region_report(ArraySpec(a.num_antennas, a.antenna_area, a.wavelength)).fraunhofer;
            const double guard = kReactiveGuardWavelengths * a.wavelength;
            for (std::size_t i = 0; i < c.distances.size(); ++i)
                if (c.distances[i] * dF < guard)
                    issues.push_back("distances[" + std::to_string(i) + "] = " + fmt(c.distances[i]) +
                                     " d_F is inside the reactive near-field guard (" + fmt(guard / dF) +
                                     " d_F) required by exact mode");
        }

        const auto &q = c.quadrature;
        if (!(q.rel_tol > 0))
            issues.push_back("quadrature.rel_tol must be positive");
        if (q.min_order < 1)
            issues.push_back("quadrature.min_order must be at least 1");
        if (q.max_order < q.min_order)
            issues.push_back("quadrature.max_order must be at least quadrature.min_order");
        if (!(q.nodes_per_wavelength > 0))
            issues.push_back("quadrature.nodes_per_wavelength must be positive");
        if (c.output.empty())
            issues.push_back("output must name a directory");
        if (c.threads < 0)
            issues.push_back("threads must be non-negative (0 = automatic)");
        return issues;
    }

    nlohmann::json to_json(const ExperimentConfig &c)
    {
        nlohmann::json j;
        j["experiment"] = to_string(c.experiment);
        j["array"] = {{"num_antennas", c.array.num_antennas},
                      {"antenna_area", c.array.antenna_area},
                      {"wavelength", c.array.wavelength}};
        j["source"] = {{"distance", c.source.distance}, {"angle", c.source.angle}};
        j["num_antennas"] = c.num_antennas;
        j["distances"] = c.distances;
        j["rho"] = c.rho;
        j["snr_db"] = c.snr_db;
        j["focal"] = c.focal;
        j["users"] = c.users;
        j["exact"] = c.exact;
        j["channel_model"] = to_string(c.channel_model);
        j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol},
                           {"min_order", c.quadrature.min_order},
                           {"max_order", c.quadrature.max_order},
                           {"nodes_per_wavelength", c.quadrature.nodes_per_wavelength}};
        j["output"] = c.output;
        j["threads"] = c.threads;
        return j;
    }

    ExperimentConfig config_from_json(const nlohmann::json &j)
    {
        ExperimentConfig c;
        Reader r;
        if (!r.object(j, "<root>"))
            throw ConfigError(r.issues);

        if (j.contains("experiment"))
        {
            std::string name;
            r.string(j["experiment"], "experiment", name);
            if (!name.empty())
                try
                {
                    c.experiment = experiment_from_string(name);
                }
                catch (const ConfigError &e)
                {
                    r.issues.push_back(e.issues().front());
                }
        }

        std::optional<double> angle, angle_deg;
        for (const auto &[key, value] : j.items())
        {
            if (key == "experiment")
                continue;
            if (key == "array")
            {
                if (!r.object(value, "array"))
                    continue;
                for (const auto &[k, v] : value.items())
                {
                    if (k == "num_antennas")
                        r.integer(v, "array.num_antennas", c.array.num_antennas);
                    else if (k == "antenna_area")
                        r.number(v, "array.antenna_area", c.array.antenna_area);
                    else if (k == "wavelength")
                        r.number(v, "array.wavelength", c.array.wavelength);
                    else
                        r.unknown("array." + k);
                }
            }
            else if (key == "source")
            {
                if (!r.object(value, "source"))
                    continue;
                for (const auto &[k, v] : value.items())
                {
                    double x = 0;
                    if (k == "distance")
                        r.number(v, "source.distance", c.source.distance);
                    else if (k == "angle")
                    {
                        r.number(v, "source.angle", x);
                        angle = x;
                    }
                    else if (k == "angle_deg")
                    {
                        r.number(v, "source.angle_deg", x);
                        angle_deg = x;
                    }
                    else
                        r.unknown("source." + k);
                }
            }
            else if (key == "num_antennas")
                r.list(value, key, c.num_antennas, &Reader::integer<std::int64_t>);
            else if (key == "distances")
                r.list(value, key, c.distances, &Reader::number);
            else if (key == "rho")
                r.list(value, key, c.rho, &Reader::number);
            else if (key == "snr_db")
                r.list(value, key, c.snr_db, &Reader::number);
            else if (key == "focal")
                r.list(value, key, c.focal, &Reader::string);
            else if (key == "users")
                r.integer(value, key, c.users);
            else if (key == "exact")
                r.boolean(value, key, c.exact);
            else if (key == "channel_model")
            {
                std::string m;
                r.string(value, key, m);
                if (!m.empty())
                    try
                    {
                        c.channel_model = channel_model_from_string(m);
                    }
                    catch (const std::exception &)
                    {
                        r.issues.push_back("channel_model: expected 'hybrid' or 'integral', got '" + m + "'");
                    }
            }
            else if (key == "quadrature")
            {
                if (!r.object(value, "quadrature"))
                    continue;
                for (const auto &[k, v] : value.items())
                {
                    if (k == "rel_tol")
                        r.number(v, "quadrature.rel_tol", c.quadrature.rel_tol);
                    else if (k == "min_order")
                        r.integer(v, "quadrature.min_order", c.quadrature.min_order);
                    else if (k == "max_order")
                        r.integer(v, "quadrature.max_order", c.quadrature.max_order);
                    else if (k == "nodes_per_wavelength")
                        r.number(v, "quadrature.nodes_per_wavelength", c.quadrature.nodes_per_wavelength);
                    else
                        r.unknown("quadrature." + k);
                }
            }
            else if (key == "output")
                r.string(value, key, c.output);
            else if (key == "threads")
                r.integer(value, key, c.threads);
            else
                r.unknown(key);
        }

        if (angle && angle_deg)
            r.issues.push_back("source: give either angle (radians) or angle_deg, not both");
        else if (angle)
            c.source.angle = *angle;
        else if (angle_deg)
            c.source.angle = *angle_deg * pi_v<double> / 180;

        fill_defaults(c);
        auto more = config_issues(c);
        r.issues.insert(r.issues.end(), more.begin(), more.end());
        if (!r.issues.empty())
            throw ConfigError(r.issues);
        return c;
    }

    ExperimentConfig parse_config(const std::string &text, const std::string &origin,
                                  std::optional<Experiment> experiment)
    {
        if (std::all_of(text.begin(), text.end(), [](unsigned char ch) { return std::isspace(ch); }))
        {
            ExperimentConfig c;
            if (experiment)
                c.experiment = *experiment;
            fill_defaults(c);
            return c;
        }
        nlohmann::json j;
        try
        {
            j = nlohmann::json::parse(text);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            // Byte offset to line/column for the message.
            std::size_t line = 1, column = 1;
            for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    column = 1;
                }
                else
                    ++column;
            }
            throw ConfigError({origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                               ": parse error: " + e.what()});
        }
        if (experiment && j.is_object())
            j["experiment"] = to_string(*experiment);
        return config_from_json(j);
    }

    ExperimentConfig validate_config(const std::filesystem::path &path, std::optional<Experiment> experiment)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ConfigError({path.string() + ": cannot open for reading"});
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return parse_config(buffer.str(), path.string(), experiment);
    }

} // namespace nearfield
