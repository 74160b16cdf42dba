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

// Command implementations behind tools/entfid. Each returns a process exit
// status and writes only to the streams it is given.

#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "entfid/channel_io.hpp"
#include "entfid/channels.hpp"
#include "entfid/metrics.hpp"
#include "entfid/scenario.hpp"
#include "entfid/state.hpp"

namespace entfid::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int unwritable_output = 2;
inline constexpr int residual_exceeded = 3;
inline constexpr int parse_failure = 4;
inline constexpr int not_trace_preserving = 5;
}  // namespace exit_code

inline constexpr const char* csv_header = "lambda_t,concurrence,ef,ef_direct,mef_numeric,mef_analytic";

/** Sweep regression guard on numeric-vs-analytic residuals. */
inline constexpr double max_sweep_residual = 1e-5;

/** 12 significant digits, C locale; magnitudes below 1e-12 print as 0. */
inline std::string format_value(double x) {
  if (std::abs(x) < 1e-12) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline void write_csv(std::ostream& out, const std::vector<scenario::SweepRow>& rows) {
  out << csv_header << '\n';
  for (const auto& r : rows) {
    out << format_value(r.lambda_t) << ',' << format_value(r.concurrence) << ',' << format_value(r.ef) << ','
        << format_value(r.ef_direct) << ',' << format_value(r.mef_numeric) << ',' << format_value(r.mef_analytic)
        << '\n';
  }
}

/**
 * Runs the scenario sweep and writes CSV to `output_path` (or `stdout_stream`
 * when empty). A residual summary goes to `err`.
 */
inline int run_sweep(const scenario::SweepConfig& cfg, const std::optional<std::string>& output_path,
                     std::ostream& stdout_stream, std::ostream& err) {
  std::vector<scenario::SweepRow> rows;
  try {
    rows = scenario::sweep(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }

  std::ostringstream csv;
  write_csv(csv, rows);
  if (output_path) {
    std::ofstream file(*output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << csv.str()) || !file.flush()) {
      err << "error: cannot write output file '" << *output_path << "'\n";
      return exit_code::unwritable_output;
    }
  } else {
    stdout_stream << csv.str();
  }

  const auto res = scenario::residuals(rows);
  char summary[160];
  std::snprintf(summary, sizeof summary, "max residual: concurrence=%.3e ef=%.3e ef_direct=%.3e mef=%.3e",
                res.concurrence, res.ef, res.ef_direct, res.mef);
  err << summary << '\n';
  if (res.max() > max_sweep_residual) {
    err << "error: residual " << res.max() << " exceeds " << max_sweep_residual << '\n';
    return exit_code::residual_exceeded;
  }
  return exit_code::ok;
}

/** Input state for `metrics`: bell+, bell-, mixed, or file:<path>. */
struct StateSpec {
  enum class Kind { bell_plus, bell_minus, mixed, file } kind = Kind::bell_plus;
  std::string path;

  static std::optional<StateSpec> parse(const std::string& s) {
    if (s == "bell+") return StateSpec{Kind::bell_plus, {}};
    if (s == "bell-") return StateSpec{Kind::bell_minus, {}};
    if (s == "mixed") return StateSpec{Kind::mixed, {}};
    if (s.rfind("file:", 0) == 0 && s.size() > 5) return StateSpec{Kind::file, s.substr(5)};
    return std::nullopt;
  }
};

/**
 * Prints ef, mef (qubit channels) and concurrence (qubit channels, on the
 * channel applied to the first factor of the joint state) as key=value lines.
 */
inline int run_metrics(const std::string& channel_path, const StateSpec& state, const OptimizerConfig& optimizer,
                       std::ostream& out, std::ostream& err) {
  std::optional<KrausChannel> channel;
  std::optional<DensityMatrix> rho_q;
  try {
    std::ifstream file(channel_path);
    if (!file) {
      err << "error: cannot open channel file '" << channel_path << "'\n";
      return exit_code::parse_failure;
    }
    channel = io::read_channel(file);
    if (state.kind == StateSpec::Kind::file) {
      std::ifstream sf(state.path);
      if (!sf) {
        err << "error: cannot open state file '" << state.path << "'\n";
        return exit_code::parse_failure;
      }
      rho_q = io::read_density_matrix(sf);
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return exit_code::parse_failure;
  } catch (const NotTracePreserving& e) {
    err << "error: " << e.what() << " (tolerance " << io::load_tolerance << ")\n";
    return exit_code::not_trace_preserving;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::parse_failure;
  }

  try {
    const std::size_t d = channel->dim();
    DensityMatrix joint = bell_state(BellSign::plus);
    switch (state.kind) {
      case StateSpec::Kind::bell_plus:
      case StateSpec::Kind::bell_minus: {
        if (d != 2) throw DimensionMismatch("Bell input needs a qubit channel, got dimension " + std::to_string(d));
        joint = bell_state(state.kind == StateSpec::Kind::bell_plus ? BellSign::plus : BellSign::minus);
        rho_q = reduced_state(joint, 0);
        break;
      }
      case StateSpec::Kind::mixed:
        rho_q = maximally_mixed(d);
        joint = from_pure(purify(*rho_q));
        break;
      case StateSpec::Kind::file:
        if (rho_q->dim() != d) {
          throw DimensionMismatch("state dimension " + std::to_string(rho_q->dim()) +
                                  " does not match channel dimension " + std::to_string(d));
        }
        joint = from_pure(purify(*rho_q));
        break;
    }
    out << "ef=" << format_value(entanglement_fidelity_intrinsic(*rho_q, *channel)) << '\n';
    if (d == 2) {
      out << "mef=" << format_value(mef(*rho_q, *channel, optimizer).value) << '\n';
      out << "concurrence=" << format_value(concurrence(apply_local_channel(*channel, joint, 0))) << '\n';
    } else {
      err << "note: mef and concurrence are only computed for qubit channels\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  return exit_code::ok;
}

/** Writes the scenario channel at `lambda_t` in channel-file format. */
inline int run_export_channel(double lambda_t, const std::optional<std::string>& output_path,
                              std::ostream& stdout_stream, std::ostream& err) {
  std::ostringstream text;
  try {
    io::write_channel(text, scenario::scenario_channel({lambda_t, BellSign::plus}));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::failure;
  }
  if (output_path) {
    std::ofstream file(*output_path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text.str()) || !file.flush()) {
      err << "error: cannot write output file '" << *output_path << "'\n";
      return exit_code::unwritable_output;
    }
  } else {
    stdout_stream << text.str();
  }
  return exit_code::ok;
}

}  // namespace entfid::cli
