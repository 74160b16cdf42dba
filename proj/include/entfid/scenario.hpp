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

// Control-qubit model: Bell pair A-B, qubit A coupled to a maximally mixed
// control qubit C through H = (lambda/2) sZ_A (x) (|0><0| - |1><1|)_C, hbar = 1.
// Only the dimensionless product lambda*t enters the API.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "entfid/channels.hpp"
#include "entfid/linalg.hpp"
#include "entfid/metrics.hpp"
#include "entfid/state.hpp"

namespace entfid::scenario {

struct ScenarioPoint {
  double lambda_t = 0.0;
  BellSign sign = BellSign::plus;
};

/** (|0><0| - |1><1|) on the control qubit; |alpha>, |beta> are its computational basis. */
inline ComplexMatrix control_projector_difference() { return pauli::z(); }

/** A (x) C coupling Hamiltonian for interaction strength `lambda`. */
inline ComplexMatrix scenario_hamiltonian(double lambda) {
  return kron(pauli::z(), control_projector_difference()) * (lambda / 2.0);
}

/** exp(-i t H) on A (x) C with lambda t = point.lambda_t. */
inline ComplexMatrix scenario_unitary(const ScenarioPoint& point) {
  return expm_i(scenario_hamiltonian(1.0), point.lambda_t);
}

/** Induced channel on A with the control qubit in I/2. */
inline KrausChannel scenario_channel(const ScenarioPoint& point) {
  return kraus_from_unitary_env(scenario_unitary(point), maximally_mixed(2), 2);
}

/** Tr_C[(U (x) 1_B) W (U (x) 1_B)^dagger] with W = rho_AB (x) I/2, evaluated on the A (x) B (x) C space. */
inline DensityMatrix evolved_state_via_environment(const ScenarioPoint& point) {
  const ComplexMatrix h = kron(pauli::z(), ComplexMatrix::identity(2), control_projector_difference()) * 0.5;
  const ComplexMatrix u = expm_i(h, point.lambda_t);
  const DensityMatrix w = tensor(bell_state(point.sign), maximally_mixed(2));
  const ComplexMatrix evolved = u * w.matrix() * dagger(u);
  return DensityMatrix(partial_trace(evolved, {2, 2, 2}, 2), {2, 2});
}

/** The induced channel applied to qubit A of the Bell pair. */
inline DensityMatrix evolved_state_via_channel(const ScenarioPoint& point) {
  return apply_local_channel(scenario_channel(point), bell_state(point.sign), 0);
}

/** Largest entry-wise disagreement tolerated between the two evolution routes. */
inline constexpr double route_agreement = 1e-12;

/**
 * rho_pm cos^2(lt/2) + rho_mp sin^2(lt/2). Computed through the channel and
 * cross-checked against the full three-qubit evolution.
 */
inline DensityMatrix evolved_state(const ScenarioPoint& point) {
  DensityMatrix via_channel = evolved_state_via_channel(point);
  const DensityMatrix via_env = evolved_state_via_environment(point);
  const double gap = max_abs_diff(via_channel.matrix(), via_env.matrix());
  if (gap > route_agreement) {
    std::ostringstream msg;
    msg << "evolution routes disagree by " << gap << " at lambda_t=" << point.lambda_t;
    throw Error(msg.str());
  }
  return via_channel;
}

inline double analytic_concurrence(double lambda_t) { return std::abs(std::cos(lambda_t)); }

inline double analytic_ef(double lambda_t) {
  const double c = std::cos(lambda_t / 2.0);
  return c * c;
}

/** max(cos^2, sin^2)(lt/2). */
inline double analytic_mef(double lambda_t) {
  const double c2 = analytic_ef(lambda_t);
  return 2.0 * c2 - 1.0 >= 0.0 ? c2 : 1.0 - c2;
}

//------------------------------------------------------------------------------
// Sweep
//------------------------------------------------------------------------------

struct SweepConfig {
  double lambda_t_min = 0.0;
  double lambda_t_max = 2.0 * std::numbers::pi;
  std::size_t steps = 201;
  BellSign sign = BellSign::plus;
  OptimizerConfig optimizer;
};

struct SweepRow {
  double lambda_t = 0.0;
  double concurrence = 0.0;
  double ef = 0.0;
  double mef_numeric = 0.0;
  double mef_analytic = 0.0;
  double ef_direct = 0.0;
};

/** Raised when a metric fails at one grid point; carries that point. */
class SweepError : public Error {
 public:
  SweepError(double lambda_t, const std::string& what)
      : Error("at lambda_t=" + std::to_string(lambda_t) + ": " + what), lambda_t_(lambda_t) {}
  double lambda_t() const noexcept { return lambda_t_; }

 private:
  double lambda_t_;
};

/** Evenly spaced, ascending; the last point is exactly lambda_t_max. */
inline std::vector<double> sweep_grid(const SweepConfig& cfg) {
  if (cfg.steps < 1) throw Error("sweep needs at least one step");
  if (!std::isfinite(cfg.lambda_t_min) || !std::isfinite(cfg.lambda_t_max)) {
    throw Error("sweep bounds must be finite");
  }
  if (cfg.lambda_t_min > cfg.lambda_t_max) throw Error("sweep minimum exceeds maximum");
  std::vector<double> grid(cfg.steps);
  if (cfg.steps == 1) {
    grid[0] = cfg.lambda_t_min;
    return grid;
  }
  const double span = cfg.lambda_t_max - cfg.lambda_t_min;
  const double last = static_cast<double>(cfg.steps - 1);
  for (std::size_t i = 0; i < cfg.steps; ++i) {
    grid[i] = cfg.lambda_t_min + span * (static_cast<double>(i) / last);
  }
  grid.back() = cfg.lambda_t_max;
  return grid;
}

inline SweepRow evaluate_point(const ScenarioPoint& point, const OptimizerConfig& optimizer) {
  try {
    const KrausChannel channel = scenario_channel(point);
    const DensityMatrix joint = evolved_state(point);
    const DensityMatrix rho_a = reduced_state(bell_state(point.sign), 0);
    SweepRow row;
    row.lambda_t = point.lambda_t;
    row.concurrence = concurrence(joint);
    row.ef = entanglement_fidelity_intrinsic(rho_a, channel);
    row.ef_direct = entanglement_fidelity_direct(bell_vector(point.sign), joint);
    row.mef_numeric = mef(rho_a, channel, optimizer).value;
    row.mef_analytic = analytic_mef(point.lambda_t);
    return row;
  } catch (const SweepError&) {
    throw;
  } catch (const std::exception& e) {
    throw SweepError(point.lambda_t, e.what());
  }
}

inline std::vector<SweepRow> sweep(const SweepConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double lt : sweep_grid(cfg)) rows.push_back(evaluate_point({lt, cfg.sign}, cfg.optimizer));
  return rows;
}

/** Largest |numeric - analytic| per column pair. */
struct SweepResiduals {
  double concurrence = 0.0;
  double ef = 0.0;
  double ef_direct = 0.0;
  double mef = 0.0;

  double max() const { return std::max({concurrence, ef, ef_direct, mef}); }
};

inline SweepResiduals residuals(const std::vector<SweepRow>& rows) {
  SweepResiduals r;
  for (const auto& row : rows) {
    r.concurrence = std::max(r.concurrence, std::abs(row.concurrence - analytic_concurrence(row.lambda_t)));
    r.ef = std::max(r.ef, std::abs(row.ef - analytic_ef(row.lambda_t)));
    r.ef_direct = std::max(r.ef_direct, std::abs(row.ef_direct - analytic_ef(row.lambda_t)));
    r.mef = std::max(r.mef, std::abs(row.mef_numeric - row.mef_analytic));
  }
  return r;
}

}  // namespace entfid::scenario
