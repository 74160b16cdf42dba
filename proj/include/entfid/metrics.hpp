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

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "entfid/channels.hpp"
#include "entfid/linalg.hpp"
#include "entfid/nelder_mead.hpp"
#include "entfid/state.hpp"

namespace entfid {

namespace detail {
inline double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

/** Eigenvalues of rho eigenvalues at or below this are treated as outside the support. */
inline constexpr double support_cutoff = 1e-14;

/**
 * Nonzero spectrum of sqrt(rho) m sqrt(rho), descending, computed on the support of rho.
 *
 * Restricting to the support keeps rounding-noise eigenvalues of rank-deficient rho out of
 * the result; their square roots would otherwise add errors of order 1e-8.
 */
inline std::vector<double> sandwich_spectrum(const ComplexMatrix& rho, const ComplexMatrix& m) {
  const HermEigResult er = herm_eig(hermitian_part(rho));
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < er.eigenvalues.size(); ++i) {
    if (er.eigenvalues[i] > support_cutoff) keep.push_back(i);
  }
  std::vector<double> out;
  if (keep.empty()) return out;
  const std::size_t n = rho.rows(), k = keep.size();
  ComplexMatrix basis(n, k);
  for (std::size_t c = 0; c < k; ++c) {
    const double w = std::sqrt(er.eigenvalues[keep[c]]);
    for (std::size_t r = 0; r < n; ++r) basis(r, c) = er.eigenvectors(r, keep[c]) * w;
  }
  const HermEigResult eig = herm_eig(hermitian_part(dagger(basis) * m * basis));
  for (std::size_t i = k; i-- > 0;) out.push_back(std::max(eig.eigenvalues[i], 0.0));
  return out;
}
}  // namespace detail

//------------------------------------------------------------------------------
// Entanglement fidelity and static fidelity
//------------------------------------------------------------------------------

/** <psi| rho_after |psi>, the probability that rho_after passes a test for psi. */
inline double entanglement_fidelity_direct(const PureState& psi_joint, const DensityMatrix& rho_after) {
  detail::require_same_dim(psi_joint.dim(), rho_after.dim(), "entanglement fidelity");
  return detail::clamp_unit(psi_joint.expectation(rho_after.matrix()).real());
}

/** sum_j |Tr(rho E_j)|^2, from the reduced input state and the Kraus operators alone. */
inline double entanglement_fidelity_intrinsic(const DensityMatrix& rho_q, const KrausChannel& ch) {
  detail::require_same_dim(rho_q.dim(), ch.dim(), "entanglement fidelity");
  double s = 0.0;
  for (const auto& e : ch.operators()) s += std::norm(trace(rho_q.matrix() * e));
  return detail::clamp_unit(s);
}

/** Tr sqrt(sqrt(rho) sigma sqrt(rho)). */
inline double static_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  detail::require_same_dim(rho.dim(), sigma.dim(), "static fidelity");
  double s = 0.0;
  for (double lambda : detail::sandwich_spectrum(rho.matrix(), sigma.matrix())) s += std::sqrt(lambda);
  return detail::clamp_unit(s);
}

//------------------------------------------------------------------------------
// Concurrence
//------------------------------------------------------------------------------

/** rho~ = (s2 (x) s2) rho* (s2 (x) s2). */
inline ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  return yy * conjugate(rho) * yy;
}

/**
 * Eigenvalues of rho rho~, descending, computed from the Hermitian matrix
 * sqrt(rho) rho~ sqrt(rho) (same spectrum). Tiny negatives are clamped to 0.
 */
inline std::array<double, 4> spin_flip_spectrum(const DensityMatrix& rho) {
  if (rho.dim() != 4) {
    throw UnsupportedDimension("concurrence is defined for two-qubit states, got dimension " +
                               std::to_string(rho.dim()));
  }
  const auto spectrum = detail::sandwich_spectrum(rho.matrix(), spin_flip(rho.matrix()));
  std::array<double, 4> out{};
  std::copy(spectrum.begin(), spectrum.end(), out.begin());
  return out;
}

/** Wootters concurrence max(0, r1 - r2 - r3 - r4), r_k = sqrt of the spin-flip spectrum. */
inline double concurrence(const DensityMatrix& rho) {
  const auto lambda = spin_flip_spectrum(rho);
  const double c = std::sqrt(lambda[0]) - std::sqrt(lambda[1]) - std::sqrt(lambda[2]) - std::sqrt(lambda[3]);
  return detail::clamp_unit(c);
}

//------------------------------------------------------------------------------
// Single-qubit unitaries
//------------------------------------------------------------------------------

/** Angles of exp(-i alpha) Rz(beta) Ry(gamma) Rz(delta), radians. */
struct LocalUnitaryParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;

  /** Copy with every angle wrapped into [0, 2pi). */
  LocalUnitaryParams canonical() const {
    auto wrap = [](double a) {
      constexpr double two_pi = 2.0 * std::numbers::pi;
      double w = std::fmod(a, two_pi);
      if (w < 0.0) w += two_pi;
      return w >= two_pi ? 0.0 : w;
    };
    return {wrap(alpha), wrap(beta), wrap(gamma), wrap(delta)};
  }

  friend bool operator==(const LocalUnitaryParams&, const LocalUnitaryParams&) = default;
};

inline ComplexMatrix local_unitary(const LocalUnitaryParams& p) {
  const double c = std::cos(p.gamma / 2.0), s = std::sin(p.gamma / 2.0);
  const double hb = p.beta / 2.0, hd = p.delta / 2.0;
  const complex g = std::polar(1.0, -p.alpha);
  return ComplexMatrix{{g * std::polar(c, -hb - hd), -g * std::polar(s, -hb + hd)},
                       {g * std::polar(s, hb - hd), g * std::polar(c, hb + hd)}};
}

//------------------------------------------------------------------------------
// Modified entanglement fidelity
//------------------------------------------------------------------------------

struct OptimizerConfig {
  std::size_t grid_points_per_angle = 24;
  double refine_tolerance = 1e-10;
  std::size_t max_refine_iters = 500;
};

struct MefResult {
  double value = 0.0;
  LocalUnitaryParams argmax;
  std::size_t evaluations = 0;
};

namespace detail {
inline void require_qubit(std::size_t dim) {
  if (dim != 2) {
    throw UnsupportedDimension("modified entanglement fidelity is implemented for qubits only, got dimension " +
                               std::to_string(dim));
  }
}

/** sum_j |Tr(U E_j rho)|^2 with the products E_j rho precomputed. */
class MefObjective {
 public:
  MefObjective(const DensityMatrix& rho_q, const KrausChannel& ch) {
    require_qubit(rho_q.dim());
    require_same_dim(rho_q.dim(), ch.dim(), "modified entanglement fidelity");
    for (const auto& e : ch.operators()) products_.push_back(e * rho_q.matrix());
  }

  double operator()(const LocalUnitaryParams& p) const {
    const ComplexMatrix u = local_unitary(p);
    double s = 0.0;
    for (const auto& k : products_) {
      const complex t = u(0, 0) * k(0, 0) + u(0, 1) * k(1, 0) + u(1, 0) * k(0, 1) + u(1, 1) * k(1, 1);
      s += std::norm(t);
    }
    return s;
  }

 private:
  std::vector<ComplexMatrix> products_;
};
}  // namespace detail

/** sum_j |Tr(rho U E_j)|^2 for U = local_unitary(p). */
inline double mef_objective(const LocalUnitaryParams& p, const DensityMatrix& rho_q, const KrausChannel& ch) {
  return detail::clamp_unit(detail::MefObjective(rho_q, ch)(p));
}

/**
 * Maximize the local-unitary-corrected entanglement fidelity over
 * (beta, gamma, delta); alpha is a global phase and stays 0.
 *
 * A uniform grid on [0, 2pi)^3 seeds a Nelder-Mead refinement from the best
 * cell. Grid ties go to the lexicographically smallest angles. The grid
 * contains the identity, so the result never falls below the plain
 * entanglement fidelity.
 */
inline MefResult mef(const DensityMatrix& rho_q, const KrausChannel& ch, const OptimizerConfig& cfg = {}) {
  if (cfg.grid_points_per_angle < 4) throw Error("grid_points_per_angle must be at least 4");
  const detail::MefObjective objective(rho_q, ch);
  const std::size_t n = cfg.grid_points_per_angle;
  const double spacing = 2.0 * std::numbers::pi / static_cast<double>(n);

  MefResult best;
  best.value = -1.0;
  for (std::size_t ib = 0; ib < n; ++ib) {
    for (std::size_t ig = 0; ig < n; ++ig) {
      for (std::size_t id = 0; id < n; ++id) {
        const LocalUnitaryParams p{0.0, spacing * static_cast<double>(ib), spacing * static_cast<double>(ig),
                                   spacing * static_cast<double>(id)};
        const double v = objective(p);
        ++best.evaluations;
        if (v > best.value) {
          best.value = v;
          best.argmax = p;
        }
      }
    }
  }

  const auto refined = nelder_mead_maximize<3>(
      [&](const std::array<double, 3>& x) { return objective({0.0, x[0], x[1], x[2]}); },
      {best.argmax.beta, best.argmax.gamma, best.argmax.delta}, spacing / 2.0, cfg.refine_tolerance,
      cfg.max_refine_iters);
  best.evaluations += refined.evaluations;
  if (refined.value > best.value) {
    best.value = refined.value;
    best.argmax = LocalUnitaryParams{0.0, refined.point[0], refined.point[1], refined.point[2]}.canonical();
  }
  best.value = detail::clamp_unit(best.value);
  return best;
}

}  // namespace entfid
