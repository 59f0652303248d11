// Copyright 2026 The NLA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nla/cli.h"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nla/epr.h"
#include "nla/optimizer.h"

using namespace nla;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);) {
        v.push_back(line);
    }
    return v;
}

std::vector<std::string> split(const std::string &s) {
    std::vector<std::string> v;
    std::istringstream in(s);
    for (std::string cell; std::getline(in, cell, ',');) {
        v.push_back(cell);
    }
    return v;
}

}  // namespace

TEST(Cli, format_number) {
    EXPECT_EQ(cli::format_number(0.25), "0.25");
    EXPECT_EQ(cli::format_number(1.0 / 3.0), "0.333333333333333");
    EXPECT_EQ(cli::format_number(1e-20), "1e-20");
}

TEST(Cli, coherent_csv_layout) {
    auto r = run_cli({"coherent", "--alpha", "0", "--g-min", "1", "--g-max", "3", "--g-steps", "5",
                      "--n", "1..2"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 12u);
    EXPECT_EQ(ls[0].rfind("# manifest {", 0), 0u);
    auto manifest = nlohmann::json::parse(ls[0].substr(11));
    EXPECT_EQ(manifest["command"], "coherent");
    EXPECT_EQ(manifest["version"], cli::kVersion);
    EXPECT_FALSE(manifest.contains("timestamp"));
    EXPECT_EQ(ls[1], "g,N,P,F");
    for (size_t i = 2; i < ls.size(); ++i) {
        auto cells = split(ls[i]);
        ASSERT_EQ(cells.size(), 4u);
        double g = std::stod(cells[0]);
        int n = std::stoi(cells[1]);
        EXPECT_NEAR(std::stod(cells[2]), std::pow(g, -2 * n), 1e-14);
        EXPECT_EQ(cells[3], "1");
    }
}

TEST(Cli, coherent_auto_cutoff) {
    auto r = run_cli({"coherent", "--alpha", "0.1", "--fmin", "0.99", "--g-max", "3", "--g-steps", "50"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 52u);
    for (size_t i = 2; i < ls.size(); ++i) {
        EXPECT_EQ(split(ls[i])[1], "1");
    }
}

TEST(Cli, epr_reports_input_squeezing) {
    auto r = run_cli({"epr", "--chi-prime", "0.5", "--eta", "1", "--g", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 3u);
    EXPECT_EQ(ls[1], "g,N,chi_in,P,F_lower,epsilon");
    auto cells = split(ls[2]);
    EXPECT_NEAR(std::stod(cells[2]), 0.5 / 3.0, 1e-14);
    EXPECT_NEAR(std::stod(cells[5]), 0.36, 1e-14);
}

TEST(Cli, epr_baselines) {
    auto r = run_cli({"epr", "--chi-prime", "0.5", "--eta", "0.25", "--g-min", "1", "--g-max", "4",
                      "--g-steps", "4", "--with-baselines", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema_version"], cli::kSchemaVersion);
    ASSERT_EQ(j["rows"].size(), 4u);
    EXPECT_EQ(j["columns"].back(), "eps_inf_squeezing");
    for (const auto &row : j["rows"]) {
        EXPECT_NEAR(row["eps_inf_squeezing"].get<double>(), 0.5625, 1e-15);
        EXPECT_NEAR(row["eps_no_amp"].get<double>(), 0.81, 1e-15);
    }
}

TEST(Cli, optimize_single_point_matches_library) {
    auto r = run_cli({"optimize", "--chi-prime", "0.5", "--pmin", "0.001", "--eta-grid", "1",
                      "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["rows"].size(), 1u);
    auto lib = optimize_epr(ConstraintSet(0.99, 0.001, 0.5, 1.0));
    const auto &row = j["rows"][0];
    EXPECT_EQ(row["N"].get<int>(), lib.n_star);
    EXPECT_EQ(row["g"].get<double>(), std::stod(cli::format_number(lib.g_star)));
    EXPECT_EQ(row["epsilon"].get<double>(), std::stod(cli::format_number(lib.epsilon)));
    EXPECT_EQ(row["binding"], to_string(lib.binding));
    EXPECT_EQ(row["error"], "");
}

TEST(Cli, optimize_row_count) {
    auto r = run_cli({"optimize", "--chi-prime", "0.5", "--pmin", "0.1,0.01", "--eta-grid", "0.5:1:3"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 8u);
    EXPECT_EQ(ls[1], "p_min,eta,N,g,chi_in,epsilon,F,P,binding,eps_no_amp,eps_inf_squeezing,error");
}

TEST(Cli, deterministic_and_job_independent) {
    std::vector<std::string> base{"optimize", "--chi-prime", "0.8", "--pmin", "0.01", "--eta-grid",
                                  "0.1:1:10"};
    auto a = run_cli(base);
    auto b = run_cli(base);
    auto with_jobs = base;
    with_jobs.insert(with_jobs.end(), {"--jobs", "4"});
    auto c = run_cli(with_jobs);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
}

TEST(Cli, timestamp_opt_in) {
    auto r = run_cli({"epr", "--chi-prime", "0.5", "--eta", "0.3", "--g", "2", "--timestamp"});
    ASSERT_EQ(r.code, 0);
    auto manifest = nlohmann::json::parse(lines(r.out)[0].substr(11));
    EXPECT_TRUE(manifest.contains("timestamp"));
}

TEST(Cli, validate) {
    auto ok = run_cli({"validate", "--grid", "small"});
    EXPECT_EQ(ok.code, 0) << ok.out;
    auto loose = run_cli({"validate", "--grid", "small", "--tol", "1e-3", "--format", "json"});
    ASSERT_EQ(loose.code, 0);
    auto j = nlohmann::json::parse(loose.out);
    for (const auto &check : j["checks"]) {
        EXPECT_EQ(check["tolerance"].get<double>(), 1e-3);
        EXPECT_TRUE(check["passed"].get<bool>());
    }
    auto strict = run_cli({"validate", "--grid", "small", "--tol", "1e-30"});
    EXPECT_EQ(strict.code, 1);
}

TEST(Cli, out_file) {
    auto path = std::filesystem::temp_directory_path() / "nla_cli_test_out.csv";
    std::filesystem::remove(path);
    auto r = run_cli({"epr", "--chi-prime", "0.5", "--eta", "0.3", "--g", "2", "--out", path.string()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(lines(buf.str()).size(), 3u);
    std::filesystem::remove(path);
}

TEST(Cli, exit_codes) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"coherent"}).code, 2);
    EXPECT_EQ(run_cli({"coherent", "--alpha", "-1"}).code, 2);
    EXPECT_EQ(run_cli({"coherent", "--alpha", "1", "--n", "1", "--fmin", "0.9"}).code, 2);
    EXPECT_EQ(run_cli({"coherent", "--alpha", "1", "--g-min", "3", "--g-max", "2"}).code, 2);
    EXPECT_EQ(run_cli({"epr", "--chi-prime", "1.2", "--eta", "0.3", "--g", "2"}).code, 2);
    EXPECT_EQ(run_cli({"optimize", "--chi-prime", "0.5", "--eta-grid", "0.5,0.2"}).code, 2);
    EXPECT_EQ(run_cli({"validate", "--grid", "huge"}).code, 2);
    auto numeric = run_cli({"coherent", "--alpha", "30", "--g-min", "4", "--g-max", "4", "--g-steps",
                            "1", "--fmin", "0.999999"});
    EXPECT_EQ(numeric.code, 3);
    EXPECT_FALSE(numeric.err.empty());
    EXPECT_EQ(run_cli({"--version"}).code, 0);
}
