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

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "entfid/cli.hpp"

namespace {

std::optional<entfid::BellSign> parse_sign(const std::string& s) {
  if (s == "+" || s == "plus") return entfid::BellSign::plus;
  if (s == "-" || s == "minus") return entfid::BellSign::minus;
  return std::nullopt;
}

void add_optimizer_flags(CLI::App* cmd, entfid::OptimizerConfig& opt) {
  cmd->add_option("--grid-points", opt.grid_points_per_angle, "Grid points per angle for the MEF seed search")
      ->check(CLI::Range(std::size_t{4}, std::size_t{1000}))
      ->capture_default_str();
  cmd->add_option("--tol", opt.refine_tolerance, "Simplex diameter at which MEF refinement stops")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement fidelity, modified entanglement fidelity and concurrence of qubit channels"};
  app.require_subcommand(1);

  entfid::scenario::SweepConfig sweep_cfg;
  std::string sign_text = "+";
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Evaluate the control-qubit model over a lambda*t grid and write CSV");
  sweep->add_option("--min", sweep_cfg.lambda_t_min, "First lambda*t value")->capture_default_str();
  sweep->add_option("--max", sweep_cfg.lambda_t_max, "Last lambda*t value")->capture_default_str();
  sweep->add_option("--steps", sweep_cfg.steps, "Number of grid points")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--sign", sign_text, "Initial Bell state: + or -")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV output path (default: standard output)");
  add_optimizer_flags(sweep, sweep_cfg.optimizer);

  entfid::OptimizerConfig metrics_opt;
  std::string channel_path;
  std::string state_text = "bell+";
  auto* metrics = app.add_subcommand("metrics", "Evaluate ef, mef and concurrence for a channel file");
  metrics->add_option("--channel", channel_path, "Channel file")->required();
  metrics->add_option("--state", state_text, "Input state: bell+, bell-, mixed or file:<path>")->capture_default_str();
  add_optimizer_flags(metrics, metrics_opt);

  double export_lambda_t = 0.0;
  std::string export_out;
  auto* export_cmd = app.add_subcommand("export-channel", "Write the control-qubit channel at one lambda*t");
  export_cmd->add_option("--lambda-t", export_lambda_t, "lambda*t value")->required();
  export_cmd->add_option("--out", export_out, "Output path (default: standard output)");

  CLI11_PARSE(app, argc, argv);

  if (sweep->parsed()) {
    const auto sign = parse_sign(sign_text);
    if (!sign) {
      std::cerr << "error: --sign must be + or -\n";
      return entfid::cli::exit_code::failure;
    }
    sweep_cfg.sign = *sign;
    if (sweep_cfg.lambda_t_min > sweep_cfg.lambda_t_max) {
      std::cerr << "error: --min must not exceed --max\n";
      return entfid::cli::exit_code::failure;
    }
    return entfid::cli::run_sweep(sweep_cfg, sweep_out.empty() ? std::nullopt : std::optional(sweep_out), std::cout,
                                  std::cerr);
  }
  if (metrics->parsed()) {
    const auto state = entfid::cli::StateSpec::parse(state_text);
    if (!state) {
      std::cerr << "error: --state must be bell+, bell-, mixed or file:<path>\n";
      return entfid::cli::exit_code::failure;
    }
    return entfid::cli::run_metrics(channel_path, *state, metrics_opt, std::cout, std::cerr);
  }
  return entfid::cli::run_export_channel(export_lambda_t,
                                         export_out.empty() ? std::nullopt : std::optional(export_out), std::cout,
                                         std::cerr);
}
