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

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "entfid/linalg.hpp"

namespace entfid {

enum class BellSign { plus, minus };

inline BellSign opposite(BellSign s) { return s == BellSign::plus ? BellSign::minus : BellSign::plus; }

inline const char* to_string(BellSign s) { return s == BellSign::plus ? "+" : "-"; }

namespace tol {
inline constexpr double trace = 1e-12;
inline constexpr double norm = 1e-12;
}  // namespace tol

//------------------------------------------------------------------------------
// PureState
//------------------------------------------------------------------------------

/** Normalized state vector on a tensor product of subsystems (first factor outermost). */
class PureState {
 public:
  PureState(std::vector<complex> amplitudes, std::vector<std::size_t> subsystem_dims)
      : amplitudes_(std::move(amplitudes)), dims_(std::move(subsystem_dims)) {
    if (dims_.empty()) dims_ = {amplitudes_.size()};
    if (amplitudes_.empty() || product(dims_) != amplitudes_.size()) {
      throw DimensionMismatch("state vector of length " + std::to_string(amplitudes_.size()) +
                              " does not match subsystem dimensions");
    }
    double n2 = 0.0;
    for (const auto& a : amplitudes_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw InvalidState("state amplitudes must be finite");
      }
      n2 += std::norm(a);
    }
    if (std::abs(std::sqrt(n2) - 1.0) > tol::norm) {
      throw InvalidState("state vector is not normalized (norm " + std::to_string(std::sqrt(n2)) + ")");
    }
  }

  /** Scales `amplitudes` to unit norm first. */
  static PureState normalized(std::vector<complex> amplitudes, std::vector<std::size_t> subsystem_dims = {}) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw InvalidState("cannot normalize a zero or non-finite vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a *= inv;
    return PureState(std::move(amplitudes), std::move(subsystem_dims));
  }

  static PureState basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw IndexOutOfRange("basis index out of range");
    std::vector<complex> amps(dim);
    amps[index] = 1.0;
    return PureState(std::move(amps), {dim});
  }

  std::size_t dim() const noexcept { return amplitudes_.size(); }
  const std::vector<complex>& amplitudes() const noexcept { return amplitudes_; }
  const std::vector<std::size_t>& subsystem_dims() const noexcept { return dims_; }

  /** <this| m |this>. */
  complex expectation(const ComplexMatrix& m) const {
    if (m.rows() != dim() || m.cols() != dim()) {
      throw DimensionMismatch("operator " + m.shape_string() + " does not act on a state of dimension " +
                              std::to_string(dim()));
    }
    complex s{};
    for (std::size_t i = 0; i < dim(); ++i) {
      complex row{};
      for (std::size_t j = 0; j < dim(); ++j) row += m(i, j) * amplitudes_[j];
      s += std::conj(amplitudes_[i]) * row;
    }
    return s;
  }

 private:
  std::vector<complex> amplitudes_;
  std::vector<std::size_t> dims_;
};

//------------------------------------------------------------------------------
// DensityMatrix
//------------------------------------------------------------------------------

/**
 * Validated density matrix: Hermitian, unit trace, positive semidefinite,
 * with tensor-factor metadata.
 */
class DensityMatrix {
 public:
  struct Tolerances {
    double hermitian = tol::hermitian;
    double trace = tol::trace;
    double negative = tol::psd_clamp;
  };

  explicit DensityMatrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims = {})
      : DensityMatrix(std::move(m), std::move(subsystem_dims), Tolerances{}) {}

  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims, const Tolerances& tolerances)
      : matrix_(std::move(m)), dims_(std::move(subsystem_dims)) {
    if (!matrix_.is_square()) throw InvalidState("density matrix must be square, got " + matrix_.shape_string());
    if (dims_.empty()) dims_ = {matrix_.rows()};
    if (product(dims_) != matrix_.rows()) {
      throw DimensionMismatch("subsystem dimensions multiply to " + std::to_string(product(dims_)) +
                              " but density matrix is " + matrix_.shape_string());
    }
    const double asym = hermiticity_residual(matrix_);
    if (asym > tolerances.hermitian) {
      throw InvalidState("density matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
    }
    const complex tr = trace(matrix_);
    if (std::abs(tr - 1.0) > tolerances.trace) {
      throw InvalidState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
    }
    const double lowest = herm_eig(hermitian_part(matrix_)).eigenvalues.front();
    if (lowest < -tolerances.negative) {
      throw InvalidState("density matrix has negative eigenvalue " + std::to_string(lowest));
    }
  }

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<std::size_t>& subsystem_dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  std::vector<std::size_t> dims_;
};

//------------------------------------------------------------------------------
// Constructors
//------------------------------------------------------------------------------

namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() { return ComplexMatrix{{0.0, complex(0, -1)}, {complex(0, 1), 0.0}}; }
inline ComplexMatrix z() { return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

/** |psi><psi|, keeping the subsystem structure. */
inline DensityMatrix from_pure(const PureState& psi) {
  const auto& a = psi.amplitudes();
  ComplexMatrix m(psi.dim(), psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    for (std::size_t j = 0; j < psi.dim(); ++j) m(i, j) = a[i] * std::conj(a[j]);
  }
  return DensityMatrix(std::move(m), psi.subsystem_dims());
}

/** (|01> + |10>)/sqrt(2) for plus, (|01> - |10>)/sqrt(2) for minus. */
inline PureState bell_vector(BellSign sign) {
  const double r = 1.0 / std::sqrt(2.0);
  return PureState({0.0, r, sign == BellSign::plus ? r : -r, 0.0}, {2, 2});
}

/** (1 +- s1 s1 +- s2 s2 - s3 s3) / 4 on two qubits. */
inline DensityMatrix bell_state(BellSign sign) {
  const double s = sign == BellSign::plus ? 1.0 : -1.0;
  ComplexMatrix m = ComplexMatrix::identity(4);
  m += s * kron(pauli::x(), pauli::x());
  m += s * kron(pauli::y(), pauli::y());
  m -= kron(pauli::z(), pauli::z());
  m *= 0.25;
  return DensityMatrix(std::move(m), {2, 2});
}

inline DensityMatrix maximally_mixed(std::size_t dim) {
  if (dim == 0) throw InvalidState("dimension must be positive");
  return DensityMatrix(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)), {dim});
}

/** Product state with subsystem dims concatenated. */
inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::size_t> dims = a.subsystem_dims();
  dims.insert(dims.end(), b.subsystem_dims().begin(), b.subsystem_dims().end());
  return DensityMatrix(kron(a.matrix(), b.matrix()), std::move(dims));
}

/** Trace out every factor except `keep_index`. */
inline DensityMatrix reduced_state(const DensityMatrix& rho, std::size_t keep_index) {
  const auto& dims = rho.subsystem_dims();
  if (dims.size() < 2) throw IndexOutOfRange("reduced state needs at least two subsystems");
  if (keep_index >= dims.size()) {
    throw IndexOutOfRange("subsystem index " + std::to_string(keep_index) + " out of range for " +
                          std::to_string(dims.size()) + " subsystems");
  }
  ComplexMatrix m = rho.matrix();
  std::vector<std::size_t> remaining = dims;
  // Trace from the back so earlier indices stay valid.
  for (std::size_t k = dims.size(); k-- > 0;) {
    if (k == keep_index) continue;
    m = partial_trace(m, remaining, k);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return DensityMatrix(std::move(m), {dims[keep_index]});
}

/** Tr(rho^2). */
inline double purity(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return s;
}

/**
 * Purification of rho on Q (x) R with R a copy of Q's dimension:
 * |psi> = sum_i sqrt(p_i) |phi_i>_Q |i>_R.
 */
inline PureState purify(const DensityMatrix& rho) {
  const std::size_t d = rho.dim();
  const HermEigResult eig = herm_eig(hermitian_part(rho.matrix()));
  std::vector<complex> amps(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    const double w = std::sqrt(std::max(eig.eigenvalues[i], 0.0));
    for (std::size_t q = 0; q < d; ++q) amps[q * d + i] = w * eig.eigenvectors(q, i);
  }
  return PureState::normalized(std::move(amps), {d, d});
}

}  // namespace entfid
