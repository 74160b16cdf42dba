// Copyright 2026 The entfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "entfid/cli.hpp"
#include "gtest/gtest.h"

using namespace entfid;
using std::numbers::pi;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / ("entfid_cli_" + name)).string();
}

std::string write_file(const std::string& name, const std::string& text) {
  const std::string path = temp_path(name);
  std::ofstream(path) << text;
  return path;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::map<std::string, double> key_values(const std::string& text) {
  std::map<std::string, double> out;
  for (const auto& l : lines(text)) {
    const auto eq = l.find('=');
    if (eq != std::string::npos) out[l.substr(0, eq)] = std::stod(l.substr(eq + 1));
  }
  return out;
}

scenario::SweepConfig single_point(double lt) {
  scenario::SweepConfig cfg;
  cfg.lambda_t_min = cfg.lambda_t_max = lt;
  cfg.steps = 1;
  return cfg;
}

std::string export_channel(double lt, const std::string& name) {
  const std::string path = temp_path(name);
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_export_channel(lt, path, out, err), cli::exit_code::ok) << err.str();
  return path;
}

}  // namespace

TEST(cli, format_value) {
  EXPECT_EQ(cli::format_value(0.0), "0");
  EXPECT_EQ(cli::format_value(-0.0), "0");
  EXPECT_EQ(cli::format_value(3e-13), "0");
  EXPECT_EQ(cli::format_value(1.0), "1");
  EXPECT_EQ(cli::format_value(0.5), "0.5");
  EXPECT_EQ(cli::format_value(pi), "3.14159265359");
  EXPECT_EQ(cli::format_value(1.0 / 3.0), "0.333333333333");
}

TEST(cli, sweep_header_and_pi_row) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_sweep(single_point(pi), std::nullopt, out, err), cli::exit_code::ok) << err.str();
  const auto rows = lines(out.str());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "lambda_t,concurrence,ef,ef_direct,mef_numeric,mef_analytic");
  EXPECT_EQ(rows[1], "3.14159265359,1,0,0,1,1");
  EXPECT_NE(err.str().find("max residual: concurrence="), std::string::npos);
}

TEST(cli, default_sweep_is_byte_identical_and_sign_independent) {
  const std::string a = temp_path("sweep_a.csv"), b = temp_path("sweep_b.csv"), m = temp_path("sweep_m.csv");
  std::ostringstream out, err;
  scenario::SweepConfig cfg;
  ASSERT_EQ(cli::run_sweep(cfg, a, out, err), cli::exit_code::ok) << err.str();
  ASSERT_EQ(cli::run_sweep(cfg, b, out, err), cli::exit_code::ok) << err.str();
  cfg.sign = BellSign::minus;
  ASSERT_EQ(cli::run_sweep(cfg, m, out, err), cli::exit_code::ok) << err.str();
  EXPECT_TRUE(out.str().empty());
  const std::string text = read_file(a);
  EXPECT_EQ(lines(text).size(), 202u);
  EXPECT_EQ(text, read_file(b));
  EXPECT_EQ(text, read_file(m));
}

TEST(cli, unwritable_output_exits_2) {
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_sweep(single_point(0.0), "/nonexistent-dir/out.csv", out, err), cli::exit_code::unwritable_output);
  EXPECT_EQ(cli::run_export_channel(0.0, "/nonexistent-dir/ch.txt", out, err), cli::exit_code::unwritable_output);
}

TEST(cli, coarse_optimizer_trips_residual_guard) {
  // A 5-point grid misses the Z correction and a loose tolerance disables refinement.
  scenario::SweepConfig cfg = single_point(0.9 * pi);
  cfg.optimizer.grid_points_per_angle = 5;
  cfg.optimizer.refine_tolerance = 1.0;
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_sweep(cfg, std::nullopt, out, err), cli::exit_code::residual_exceeded);
  EXPECT_EQ(lines(out.str()).size(), 2u);  // CSV is still written
}

TEST(cli, invalid_sweep_config_fails) {
  scenario::SweepConfig cfg;
  cfg.lambda_t_min = 1.0;
  cfg.lambda_t_max = 0.0;
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_sweep(cfg, std::nullopt, out, err), cli::exit_code::failure);
}

TEST(cli, metrics_identity_channel) {
  const auto path = write_file("identity.txt", "dim=2 ops=1\n1+0j 0+0j\n0+0j 1+0j\n");
  for (const char* state : {"bell+", "bell-", "mixed"}) {
    std::ostringstream out, err;
    ASSERT_EQ(cli::run_metrics(path, *cli::StateSpec::parse(state), {}, out, err), cli::exit_code::ok) << err.str();
    const auto kv = key_values(out.str());
    EXPECT_EQ(kv.at("ef"), 1.0) << state;
    EXPECT_NEAR(kv.at("mef"), 1.0, 1e-12) << state;
    EXPECT_NEAR(kv.at("concurrence"), 1.0, 1e-12) << state;
  }
}

TEST(cli, metrics_on_exported_channel_match_sweep) {
  for (double lt : {pi / 2, 1.0, 2.5}) {
    const auto path = export_channel(lt, "scenario.txt");
    std::ostringstream out, err;
    ASSERT_EQ(cli::run_metrics(path, *cli::StateSpec::parse("bell+"), {}, out, err), cli::exit_code::ok) << err.str();
    const auto kv = key_values(out.str());
    const auto row = scenario::evaluate_point({lt}, {});
    EXPECT_NEAR(kv.at("ef"), row.ef, 1e-9) << lt;
    EXPECT_NEAR(kv.at("mef"), row.mef_numeric, 1e-9) << lt;
    EXPECT_NEAR(kv.at("concurrence"), row.concurrence, 1e-9) << lt;
  }
  const auto kv = [] {
    std::ostringstream out, err;
    cli::run_metrics(export_channel(pi / 2, "half.txt"), *cli::StateSpec::parse("bell+"), {}, out, err);
    return key_values(out.str());
  }();
  EXPECT_EQ(kv.at("ef"), 0.5);
  EXPECT_EQ(kv.at("mef"), 0.5);
  EXPECT_EQ(kv.at("concurrence"), 0.0);
}

TEST(cli, metrics_with_state_file) {
  const auto channel = export_channel(0.8, "file_state.txt");
  const auto state = write_file("state.txt", "dim=2\n0.5+0j 0+0j\n0+0j 0.5+0j\n");
  std::ostringstream a, b, err;
  ASSERT_EQ(cli::run_metrics(channel, *cli::StateSpec::parse("file:" + state), {}, a, err), cli::exit_code::ok) << err.str();
  ASSERT_EQ(cli::run_metrics(channel, *cli::StateSpec::parse("mixed"), {}, b, err), cli::exit_code::ok) << err.str();
  EXPECT_EQ(a.str(), b.str());
}

TEST(cli, metrics_exit_codes) {
  const auto spec = *cli::StateSpec::parse("bell+");
  std::ostringstream out, err;
  EXPECT_EQ(cli::run_metrics(temp_path("missing.txt"), spec, {}, out, err), cli::exit_code::parse_failure);

  const auto malformed = write_file("malformed.txt", "dim=2 ops=1\n1+0j 0+0j\n0+0j\n");
  err.str("");
  EXPECT_EQ(cli::run_metrics(malformed, spec, {}, out, err), cli::exit_code::parse_failure);
  EXPECT_NE(err.str().find("line 3, column 5"), std::string::npos) << err.str();

  const auto lossy = write_file("lossy.txt", "dim=2 ops=1\n1+0j 0+0j\n0+0j 0.5+0j\n");
  err.str("");
  EXPECT_EQ(cli::run_metrics(lossy, spec, {}, out, err), cli::exit_code::not_trace_preserving);
  EXPECT_NE(err.str().find("0.75"), std::string::npos) << err.str();

  const auto qutrit = write_file("qutrit.txt", "dim=3 ops=1\n1+0j 0+0j 0+0j\n0+0j 1+0j 0+0j\n0+0j 0+0j 1+0j\n");
  EXPECT_EQ(cli::run_metrics(qutrit, spec, {}, out, err), cli::exit_code::failure);
  std::ostringstream qout;
  EXPECT_EQ(cli::run_metrics(qutrit, *cli::StateSpec::parse("mixed"), {}, qout, err), cli::exit_code::ok);
  EXPECT_EQ(qout.str(), "ef=1\n");
}

TEST(cli, state_spec_parsing) {
  EXPECT_EQ(cli::StateSpec::parse("bell-")->kind, cli::StateSpec::Kind::bell_minus);
  EXPECT_EQ(cli::StateSpec::parse("file:/tmp/x")->path, "/tmp/x");
  EXPECT_FALSE(cli::StateSpec::parse("file:"));
  EXPECT_FALSE(cli::StateSpec::parse("bell"));
}

TEST(cli, export_channel_round_trips) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::run_export_channel(1.3, std::nullopt, out, err), cli::exit_code::ok);
  std::istringstream in(out.str());
  EXPECT_LT(max_action_difference(io::read_channel(in), scenario::scenario_channel({1.3})), 1e-15);
}
