// SPDX-License-Identifier: Apache-2.0
//
// eewf - energy-efficient zoned water-filling for massive MIMO downlink
// Copyright (C) 2026 The eewf authors
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

// Drives the eewf executable end to end.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run
{
    int code = -1;
    std::string out;
};

Run run(const std::string &args)
{
    const std::string cmd = std::string(EEWF_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe))
        r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string read(const std::filesystem::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::filesystem::path scratch(const std::string &name)
{
    auto dir = std::filesystem::temp_directory_path() / ("eewf_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_config(const std::filesystem::path &dir, const std::string &json)
{
    const auto p = dir / "config.json";
    std::ofstream(p) << json;
    return p.string();
}

TEST(CliSolve, ThreeUserExample)
{
    const auto r = run("--machine solve --gains 4,2,1 --budget 1");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("user.0.rho=0.625\n"), std::string::npos);
    EXPECT_NE(r.out.find("user.1.rho=0.375\n"), std::string::npos);
    EXPECT_NE(r.out.find("user.2.rho=0\n"), std::string::npos);
    EXPECT_NE(r.out.find("near.water_level=0.875\n"), std::string::npos);
    EXPECT_NE(r.out.find("converged=1\n"), std::string::npos);
}

TEST(CliSolve, OneUserTakesEverything)
{
    const auto r = run("--machine solve --gains 3 --budget 0.4");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("user.0.rho=0.4\n"), std::string::npos);
}

TEST(CliSolve, TwoZones)
{
    const auto r = run("--machine solve --gains 4,2,8 --distances 100,400,450 --radius 500 --budget 0.5");
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("user.0.zone=near\n"), std::string::npos);
    EXPECT_NE(r.out.find("user.2.zone=far\n"), std::string::npos);
    EXPECT_NE(r.out.find("far.water_level="), std::string::npos);
}

TEST(CliSolve, ErrorsAndExitCodes)
{
    EXPECT_EQ(run("solve --gains 4,2 --distances 10 --radius 20").code, 2);
    EXPECT_EQ(run("solve --gains 4,-2").code, 2);
    EXPECT_EQ(run("solve").code, 2);
    EXPECT_EQ(run("frobnicate").code, 2);
    EXPECT_EQ(run("solve --gains 4,2,1,0.5 --budget 0.1 --max-iterations 1").code, 3);
}

TEST(CliSimulate, DefaultScenarioIsReproducible)
{
    const auto dir = scratch("simulate");
    const auto a = run("--machine simulate --seed 5 --out " + dir.string());
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("proposed.converged=1\n"), std::string::npos);
    const auto first = read(dir / "simulate.csv");
    const auto b = run("--machine simulate --seed 5 --out " + dir.string());
    ASSERT_EQ(b.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(first, read(dir / "simulate.csv"));
}

TEST(CliSimulate, TableOneConfigConverges)
{
    const auto dir = scratch("table1");
    const auto r = run("--machine simulate --config " + std::string(EEWF_CONFIG_DIR) + "/table1.json --out " + dir.string());
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("proposed.converged=1\n"), std::string::npos);
}

TEST(CliSimulate, RejectsBadConfig)
{
    const auto dir = scratch("badconfig");
    EXPECT_EQ(run("simulate --config " + write_config(dir, R"({"users_per_cluster": 0})") + " --out " + dir.string()).code, 2);
    EXPECT_EQ(run("simulate --config " + write_config(dir, R"({"colour": "blue"})") + " --out " + dir.string()).code, 2);
    EXPECT_EQ(run("simulate --config " + (dir / "missing.json").string()).code, 4);
}

TEST(CliSweep, WritesCsvAndMetadata)
{
    const auto dir = scratch("sweep");
    const auto cfg = write_config(dir, R"({"sweep_variable": "antennas", "sweep_values": [150, 220, 345],
                                          "trials": 4, "schemes": ["proposed", "equal_split"], "seed": 3})");
    const auto r = run("--machine sweep --config " + cfg + " --out " + dir.string());
    ASSERT_EQ(r.code, 0);
    std::stringstream csv(read(dir / "sweep_antennas.csv"));
    int lines = 0;
    for (std::string l; std::getline(csv, l);)
        ++lines;
    EXPECT_EQ(lines, 1 + 3 * 2);
    const auto meta = read(dir / "sweep_antennas.json");
    EXPECT_NE(meta.find("\"version\""), std::string::npos);
    EXPECT_NE(meta.find("\"sweep_values\""), std::string::npos);

    std::stringstream imp(read(dir / "sweep_antennas_improvement.csv"));
    std::string line;
    std::getline(imp, line);
    int rows = 0;
    while (std::getline(imp, line)) {
        ++rows;
        std::stringstream ls(line);
        std::vector<std::string> f;
        for (std::string x; std::getline(ls, x, ',');)
            f.push_back(x);
        ASSERT_EQ(f.size(), 6u);
        EXPECT_GT(std::stod(f[3]), 0.0) << line;
    }
    EXPECT_EQ(rows, 3);
}

TEST(CliSweep, SameSpecSameBytes)
{
    const auto dir = scratch("sweep_repeat");
    const auto cfg = write_config(dir, R"({"sweep_variable": "p_circuit_dbm", "sweep_values": [2, 6],
                                          "trials": 6, "num_bs_antennas": 32})");
    ASSERT_EQ(run("sweep --config " + cfg + " --threads 1 --out " + (dir / "a").string()).code, 0);
    ASSERT_EQ(run("sweep --config " + cfg + " --threads 3 --out " + (dir / "b").string()).code, 0);
    EXPECT_EQ(read(dir / "a" / "sweep_p_circuit_dbm.csv"), read(dir / "b" / "sweep_p_circuit_dbm.csv"));
}

TEST(CliSweep, ValidationErrors)
{
    const auto dir = scratch("sweep_bad");
    EXPECT_EQ(run("sweep --config " + write_config(dir, R"({"sweep_values": []})") + " --out " + dir.string()).code, 2);
    EXPECT_EQ(run("sweep --config " + write_config(dir, R"({"sweep_values": [4, 2]})") + " --out " + dir.string()).code, 2);
    EXPECT_EQ(run("sweep --out " + dir.string()).code, 2);
}

} // namespace
