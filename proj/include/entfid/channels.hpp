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
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "entfid/linalg.hpp"
#include "entfid/state.hpp"

namespace entfid {

namespace tol {
/** Completeness tolerance for channels built in-process. */
inline constexpr double completeness = 1e-10;
/** Environment eigenvalues below this contribute no Kraus operator. */
inline constexpr double env_weight = 1e-14;
}  // namespace tol

/** Max-abs deviation of sum_j E_j^dagger E_j from the identity. */
inline double completeness_residual(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) return INFINITY;
  ComplexMatrix sum(ops.front().rows(), ops.front().cols());
  for (const auto& e : ops) sum += dagger(e) * e;
  return max_abs_diff(sum, ComplexMatrix::identity(sum.rows()));
}

/**
 * Trace-preserving quantum operation rho -> sum_j E_j rho E_j^dagger.
 *
 * Kraus decompositions are not unique, so two channels are compared by
 * their action (see `max_action_difference`), never operator by operator.
 */
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators, double tolerance = tol::completeness)
      : operators_(std::move(operators)), tolerance_(tolerance) {
    if (operators_.empty()) throw NotTracePreserving("a channel needs at least one Kraus operator");
    dim_ = operators_.front().rows();
    for (const auto& e : operators_) {
      if (e.rows() != dim_ || e.cols() != dim_) {
        throw DimensionMismatch("Kraus operators must all be " + std::to_string(dim_) + "x" +
                                std::to_string(dim_) + ", got " + e.shape_string());
      }
    }
    const double dev = completeness_residual(operators_);
    if (dev > tolerance_) {
      throw NotTracePreserving("Kraus operators violate completeness by " + std::to_string(dev));
    }
  }

  /** Skips the completeness check; for inspecting broken operator sets with check_trace_preserving. */
  static KrausChannel unchecked(std::vector<ComplexMatrix> operators) {
    return KrausChannel(std::move(operators), INFINITY);
  }

  static KrausChannel identity(std::size_t dim) { return KrausChannel({ComplexMatrix::identity(dim)}); }

  /** Single-operator channel rho -> U rho U^dagger. */
  static KrausChannel unitary(const ComplexMatrix& u) { return KrausChannel({u}); }

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  double tolerance() const noexcept { return tolerance_; }

  /** sum_j E_j m E_j^dagger on an arbitrary matrix (no state validation). */
  ComplexMatrix act(const ComplexMatrix& m) const {
    if (m.rows() != dim_ || m.cols() != dim_) {
      throw DimensionMismatch("channel on dimension " + std::to_string(dim_) + " applied to " +
                              m.shape_string());
    }
    ComplexMatrix out(dim_, dim_);
    for (const auto& e : operators_) out += e * m * dagger(e);
    return out;
  }

 private:
  std::vector<ComplexMatrix> operators_;
  std::size_t dim_ = 0;
  double tolerance_ = tol::completeness;
};

inline double check_trace_preserving(const KrausChannel& ch) { return completeness_residual(ch.operators()); }

/** Behavioral distance: max over the matrix-unit basis |a><b| of the max-abs difference in action. */
inline double max_action_difference(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("channels act on different dimensions");
  double m = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = 0; c < a.dim(); ++c) {
      ComplexMatrix unit(a.dim(), a.dim());
      unit(r, c) = 1.0;
      m = std::max(m, max_abs_diff(a.act(unit), b.act(unit)));
    }
  }
  return m;
}

namespace detail {
inline DensityMatrix::Tolerances output_tolerances(const KrausChannel& ch) {
  DensityMatrix::Tolerances t;
  t.trace = std::max(t.trace, ch.tolerance());
  return t;
}
}  // namespace detail

inline DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
  if (rho.dim() != ch.dim()) {
    throw DimensionMismatch("channel on dimension " + std::to_string(ch.dim()) +
                            " applied to state of dimension " + std::to_string(rho.dim()));
  }
  return DensityMatrix(ch.act(rho.matrix()), rho.subsystem_dims(), detail::output_tolerances(ch));
}

/** Apply `ch` to factor `acted_index` of a multipartite state, identity elsewhere. */
inline DensityMatrix apply_local_channel(const KrausChannel& ch, const DensityMatrix& rho_joint,
                                         std::size_t acted_index) {
  const auto& dims = rho_joint.subsystem_dims();
  if (acted_index >= dims.size()) {
    throw IndexOutOfRange("subsystem index " + std::to_string(acted_index) + " out of range for " +
                          std::to_string(dims.size()) + " subsystems");
  }
  if (dims[acted_index] != ch.dim()) {
    throw DimensionMismatch("channel on dimension " + std::to_string(ch.dim()) + " applied to subsystem of dimension " +
                            std::to_string(dims[acted_index]));
  }
  std::span<const std::size_t> all(dims);
  const ComplexMatrix left = ComplexMatrix::identity(product(all.first(acted_index)));
  const ComplexMatrix right = ComplexMatrix::identity(product(all.subspan(acted_index + 1)));
  ComplexMatrix out(rho_joint.dim(), rho_joint.dim());
  for (const auto& e : ch.operators()) {
    const ComplexMatrix lifted = kron(left, e, right);
    out += lifted * rho_joint.matrix() * dagger(lifted);
  }
  return DensityMatrix(std::move(out), dims, detail::output_tolerances(ch));
}

/**
 * Kraus operators of rho_S -> Tr_E[U (rho_S (x) rho_E) U^dagger] for a
 * unitary on system (x) environment (system outer).
 *
 * With rho_E = sum_i p_i |i><i| and {|j>} the computational environment
 * basis, E_ij = sqrt(p_i) <j|U|i>, flattened in (i, j) order. Terms with
 * p_i below tol::env_weight are dropped, as are operators that come out
 * exactly zero.
 */
inline KrausChannel kraus_from_unitary_env(const ComplexMatrix& u, const DensityMatrix& rho_env,
                                           std::size_t sys_dim) {
  const std::size_t env_dim = rho_env.dim();
  if (sys_dim == 0 || !u.is_square() || u.rows() != sys_dim * env_dim) {
    throw DimensionMismatch("unitary " + u.shape_string() + " does not act on system dimension " +
                            std::to_string(sys_dim) + " times environment dimension " +
                            std::to_string(env_dim));
  }
  const double dev = unitarity_residual(u);
  if (dev > tol::unitary) throw NotUnitary("system-environment operator is not unitary (deviation " + std::to_string(dev) + ")");

  const HermEigResult env = herm_eig(hermitian_part(rho_env.matrix()));
  std::vector<ComplexMatrix> ops;
  for (std::size_t i = 0; i < env_dim; ++i) {
    const double p = env.eigenvalues[i];
    if (p < tol::env_weight) continue;
    const double w = std::sqrt(p);
    for (std::size_t j = 0; j < env_dim; ++j) {
      ComplexMatrix e(sys_dim, sys_dim);
      for (std::size_t a = 0; a < sys_dim; ++a) {
        for (std::size_t b = 0; b < sys_dim; ++b) {
          complex s{};
          for (std::size_t k = 0; k < env_dim; ++k) s += u(a * env_dim + j, b * env_dim + k) * env.eigenvectors(k, i);
          e(a, b) = w * s;
        }
      }
      const bool all_zero = std::all_of(e.data().begin(), e.data().end(), [](complex z) { return z == complex{}; });
      if (!all_zero) ops.push_back(std::move(e));
    }
  }
  return KrausChannel(std::move(ops));
}

}  // namespace entfid
