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

// nearfield-sim: runs one named experiment and writes CSV plus a JSON sidecar.
//
//   nearfield-sim <experiment> --config <path> [--out dir] [--threads k] [--tolerance t]
//   nearfield-sim validate --config <path>
//
// Exit status: 0 all checks passed, 1 a check failed, 2 usage or config error,
// 3 numerical failure.

#include "nearfield/config.hpp"
#include "nearfield/errors.hpp"
#include "nearfield/experiments.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace
{
    enum Exit
    {
        ok = 0,
        check_failed = 1,
        usage = 2,
        numerical = 3
    };

    struct Options
    {
        std::string config;
        std::string out;
        int threads = -1;
        double tolerance = 0;
        std::string focal;
    };

    int report_config_error(const nearfield::ConfigError &e)
    {
        std::cerr << "nearfield-sim: invalid configuration\n";
        for (const auto &issue : e.issues())
            std::cerr << "  " << issue << '\n';
        return usage;
    }

    int run(const std::string &name, const Options &opt)
    {
        using namespace nearfield;
        try
        {
            // The command line names the experiment; absent grids follow it.
            const auto experiment = experiment_from_string(name);
            auto config = opt.config.empty() ? parse_config("", "<defaults>", experiment)
                                             : validate_config(opt.config, experiment);
            if (!opt.out.empty())
                config.output = opt.out;
            if (opt.threads >= 0)
                config.threads = opt.threads;
            if (opt.tolerance > 0)
                config.quadrature.rel_tol = opt.tolerance;
            if (!opt.focal.empty())
            {
                if (config.experiment != Experiment::focus)
                    throw ConfigError({"--focal applies to the focus experiment only"});
                config.focal = {opt.focal};
            }
            if (const auto issues = config_issues(config); !issues.empty())
                throw ConfigError(issues);

            const auto outcome = run_experiment(config);
            std::cout << "wrote " << outcome.data.string() << " and " << outcome.metadata.string() << " in "
                      << outcome.runtime_seconds << " s\n";
            for (const auto &c : outcome.checks)
                std::cout << (c.passed ? "  ok    " : "  FAIL  ") << c.name << " (" << c.value << " vs " << c.tolerance
                          << ")\n";
            return outcome.passed() ? ok : check_failed;
        }
        catch (const ConfigError &e)
        {
            return report_config_error(e);
        }
        catch (const DomainError &e)
        {
            std::cerr << "nearfield-sim: " << e.what() << '\n';
            return usage;
        }
        catch (const NumericalError &e)
        {
            std::cerr << "nearfield-sim: numerical failure: " << e.what() << " (estimate " << e.estimate()
                      << ", error bound " << e.error_bound() << ")\n";
            return numerical;
        }
        catch (const std::exception &e)
        {
            std::cerr << "nearfield-sim: " << e.what() << '\n';
            return numerical;
        }
    }

    int validate(const std::string &path)
    {
        try
        {
            std::cout << nearfield::to_json(nearfield::validate_config(path)).dump(2) << '\n';
            return ok;
        }
        catch (const nearfield::ConfigError &e)
        {
            return report_config_error(e);
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Radiative near-field channel experiments for planar antenna arrays"};
    app.set_version_flag("--version", std::string(nearfield::library_version()));
    app.require_subcommand(1);

    Options opt;
    for (const auto &name : nearfield::experiment_names())
    {
        auto *sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opt.config, "JSON config file (empty file or omitted: defaults)");
        sub->add_option("--out", opt.out, "output directory (overrides the config)");
        sub->add_option("--threads", opt.threads, "worker threads, 0 = automatic (overrides NEARFIELD_THREADS)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--tolerance", opt.tolerance, "quadrature relative tolerance")->check(CLI::PositiveNumber);
        if (name == "focus")
            sub->add_option("--focal", opt.focal, "focal point: inf, dB, dFA, dFA/<k> or a multiple of d_F");
    }
    auto *val = app.add_subcommand("validate", "print the normalized config or list every problem in it");
    val->add_option("--config", opt.config, "JSON config file")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    auto *chosen = app.get_subcommands().front();
    if (chosen == val)
        return validate(opt.config);
    return run(chosen->get_name(), opt);
}
