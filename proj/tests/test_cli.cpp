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

#include <doctest.h>

#include "nearfield/experiments.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace
{
    int run(const std::string &args)
    {
        const std::string cmd = std::string(NEARFIELD_CLI) + " " + args + " > /dev/null 2>&1";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }

    fs::path scratch(const std::string &name)
    {
        const auto dir = fs::temp_directory_path() / ("nearfield_cli_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    fs::path write_config(const fs::path &dir, const std::string &text)
    {
        const auto p = dir / "config.json";
        std::ofstream(p) << text;
        return p;
    }
}

TEST_CASE("distances report")
{
    const auto dir = scratch("distances");
    REQUIRE(run("distances --out " + dir.string()) == 0);
    const auto j = nlohmann::json::parse(slurp(dir / "distances.json"));
    CHECK(j["d_F"].get<double>() == doctest::Approx(0.025));
    CHECK(j["d_B"].get<double>() == doctest::Approx(7.0711).epsilon(1e-4));
    CHECK(j["d_FA"].get<double>() == doctest::Approx(250.0));
    CHECK(j["W"].get<double>() == doctest::Approx(3.5355).epsilon(1e-4));
    CHECK(j["D"].get<double>() == doctest::Approx(0.035355).epsilon(1e-4));
    CHECK(j.contains("dof_limit"));

    const auto meta = nlohmann::json::parse(slurp(dir / "distances.meta.json"));
    CHECK(meta["schema_version"] == nearfield::kSidecarSchemaVersion);
    CHECK(meta["passed"] == true);
    CHECK(meta["config"]["experiment"] == "distances");
    CHECK(meta["library_version"] == std::string(nearfield::library_version()));
    CHECK(meta["checks"].size() >= 1);
    CHECK(meta.contains("residuals"));
    fs::remove_all(dir);
}

TEST_CASE("CSV output is byte-identical across runs and thread counts")
{
    const auto dir = scratch("determinism");
    const auto cfg = write_config(dir, R"({"experiment": "sum-se", "snr_db": [0, 20, 40]})");
    REQUIRE(run("sum-se --config " + cfg.string() + " --out " + (dir / "a").string() + " --threads 1") == 0);
    REQUIRE(run("sum-se --config " + cfg.string() + " --out " + (dir / "b").string() + " --threads 4") == 0);
    const auto a = slurp(dir / "a" / "sum-se.csv");
    CHECK(a == slurp(dir / "b" / "sum-se.csv"));
    CHECK(a.rfind("snr_db,se_zf,se_sched,se_user_1,se_user_2,se_user_3,se_user_4,se_user_5\n", 0) == 0);
    CHECK(std::count(a.begin(), a.end(), '\n') == 4);

    const auto ag = write_config(dir, R"({"experiment": "array-gain", "distances": [283, 10000]})");
    REQUIRE(run("array-gain --config " + ag.string() + " --out " + (dir / "c").string() + " --threads 1") == 0);
    REQUIRE(run("array-gain --config " + ag.string() + " --out " + (dir / "d").string() + " --threads 3") == 0);
    CHECK(slurp(dir / "c" / "array-gain.csv") == slurp(dir / "d" / "array-gain.csv"));
    fs::remove_all(dir);
}

TEST_CASE("every experiment runs with defaults and writes its schema")
{
    const auto dir = scratch("all");
    const std::vector<std::pair<std::string, std::string>> expected = {
        {"gain-sweep", "N,diagonal_m,gain_exact,gain_p12,gain_p1,gain_farfield"},
        {"scaling-law", "N,snr_db,rho"},
        {"focus", "d_over_dF,gain,focal_label"},
        {"multiplex", "d_over_dF,gain,focal_label"},
        {"sum-se", "snr_db,se_zf,se_sched,se_user_1,se_user_2,se_user_3,se_user_4,se_user_5"}};
    for (const auto &[name, header] : expected)
    {
        CHECK_MESSAGE(run(name + " --out " + dir.string()) == 0, name);
        const auto csv = slurp(dir / (name + ".csv"));
        CHECK(csv.substr(0, csv.find('\n')) == header);
        CHECK(fs::exists(dir / (name + ".meta.json")));
        CHECK_FALSE(fs::exists(dir / (name + ".csv.tmp")));
    }
    const auto gs = slurp(dir / "gain-sweep.csv");
    const auto last = gs.substr(gs.rfind('\n', gs.size() - 2) + 1);
    std::istringstream cells(last);
    std::vector<double> v;
    for (std::string cell; std::getline(cells, cell, ',');)
        v.push_back(std::stod(cell));
    REQUIRE(v.size() == 6);
    CHECK(v[2] == doctest::Approx(1.0 / 3).epsilon(1e-2));
    CHECK(v[3] == doctest::Approx(0.5).epsilon(1e-2));
    CHECK(v[4] > 1.0);
    fs::remove_all(dir);
}

TEST_CASE("focus --focal override and array-gain schema")
{
    const auto dir = scratch("focal");
    REQUIRE(run("focus --focal dB --out " + dir.string()) == 0);
    const auto csv = slurp(dir / "focus.csv");
    CHECK(csv.find(",dB\n") != std::string::npos);
    CHECK(csv.find(",inf\n") == std::string::npos);

    const auto cfg = write_config(dir, R"({"distances": [100, 283], "exact": false})");
    REQUIRE(run("array-gain --config " + cfg.string() + " --out " + dir.string()) == 0);
    const auto ag = slurp(dir / "array-gain.csv");
    CHECK(ag.rfind("d_over_dF,G_exact,G_bound\n100,nan,", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("usage and config errors exit with status 2")
{
    const auto dir = scratch("errors");
    CHECK(run("") == 2);
    CHECK(run("warp-drive") == 2);
    CHECK(run("gain-sweep --threads -3") == 2);
    const auto bad = write_config(dir, R"({"array": {"num_antennas": 10}})");
    CHECK(run("gain-sweep --config " + bad.string() + " --out " + dir.string()) == 2);
    CHECK(run("validate --config " + bad.string()) == 2);
    const auto angle = write_config(dir, R"({"experiment": "focus", "source": {"angle_deg": 95}})");
    CHECK(run("validate --config " + angle.string()) == 2);
    const auto good = write_config(dir, "");
    CHECK(run("validate --config " + good.string()) == 0);
    CHECK(run("multiplex --focal inf") == 2);
    fs::remove_all(dir);
}
