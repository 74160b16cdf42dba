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
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "entfid/error.hpp"

namespace entfid {

using complex = std::complex<double>;

namespace tol {
/** Max-abs asymmetry accepted as Hermitian. */
inline constexpr double hermitian = 1e-12;
/** Eigenvalues down to -psd_clamp are treated as zero. */
inline constexpr double psd_clamp = 1e-10;
/** Max-abs deviation of U^dagger U from identity accepted as unitary. */
inline constexpr double unitary = 1e-10;
}  // namespace tol

//------------------------------------------------------------------------------
// ComplexMatrix
//------------------------------------------------------------------------------

/**
 * Dense complex matrix, row-major. Entries are always finite; every
 * constructor that accepts external data checks this.
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
      throw InvalidMatrix("matrix dimensions must be positive");
    }
  }

  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) {
      throw InvalidMatrix("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
      throw InvalidMatrix("entry count " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    for (const auto& z : data_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw InvalidMatrix("matrix entries must be finite");
      }
    }
  }

  /** Row-list constructor, handy for literals in tests. */
  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows)
      : ComplexMatrix(rows.size(), rows.size() ? rows.begin()->size() : 0,
                      flatten(rows)) {}

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const complex> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const complex> data() const noexcept { return data_; }
  std::span<complex> data() noexcept { return data_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }

  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }

  ComplexMatrix& operator*=(complex s) {
    for (auto& z : data_) z *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= s; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionMismatch("cannot multiply " + a.shape_string() + " by " +
                              b.shape_string());
    }
    ComplexMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  static std::vector<complex> flatten(
      std::initializer_list<std::initializer_list<complex>> rows) {
    std::vector<complex> out;
    const std::size_t width = rows.size() ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != width) throw InvalidMatrix("ragged matrix literal");
      out.insert(out.end(), r.begin(), r.end());
    }
    return out;
  }

  void require_same_shape(const ComplexMatrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionMismatch(std::string("shape mismatch in operator") + op + ": " +
                              shape_string() + " vs " + o.shape_string());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<complex> data_;
};

//------------------------------------------------------------------------------
// Elementary operations
//------------------------------------------------------------------------------

/** Kronecker product, left factor outer: (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l). */
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows(), cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const complex aij = a(i, j);
      for (std::size_t k = 0; k < rb; ++k) {
        for (std::size_t l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = aij * b(k, l);
      }
    }
  }
  return out;
}

template <class... Rest>
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                   const Rest&... rest) {
  return kron(kron(a, b), c, rest...);
}

/** Conjugate transpose. */
inline ComplexMatrix dagger(const ComplexMatrix& a) {
  ComplexMatrix out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
  }
  return out;
}

/** Entrywise complex conjugate (no transpose). */
inline ComplexMatrix conjugate(const ComplexMatrix& a) {
  ComplexMatrix out = a;
  for (auto& z : out.data()) z = std::conj(z);
  return out;
}

inline complex trace(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionMismatch("trace of non-square " + a.shape_string());
  complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

/** Largest |a_ij - b_ij|. */
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("cannot compare " + a.shape_string() + " with " + b.shape_string());
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double hermiticity_residual(const ComplexMatrix& a) {
  if (!a.is_square()) return INFINITY;
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tolerance = tol::hermitian) {
  return a.is_square() && hermiticity_residual(a) <= tolerance;
}

/** Max-abs deviation of U^dagger U from the identity. */
inline double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) return INFINITY;
  return max_abs_diff(dagger(u) * u, ComplexMatrix::identity(u.rows()));
}

/** (a + a^dagger) / 2; removes rounding asymmetry from products that are Hermitian in exact arithmetic. */
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + dagger(a)) * 0.5;
}

inline std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>{});
}

/**
 * Trace out tensor factor `traced_index` of a square matrix on the space
 * dims[0] (x) dims[1] (x) ... with dims[0] the outermost factor.
 */
inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                   std::size_t traced_index) {
  if (!m.is_square()) throw DimensionMismatch("partial trace of non-square " + m.shape_string());
  if (dims.empty() || std::any_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; })) {
    throw DimensionMismatch("subsystem dimensions must be positive");
  }
  if (product(dims) != m.rows()) {
    throw DimensionMismatch("subsystem dimensions multiply to " + std::to_string(product(dims)) +
                            " but matrix is " + m.shape_string());
  }
  if (traced_index >= dims.size()) {
    throw IndexOutOfRange("traced index " + std::to_string(traced_index) + " out of range for " +
                          std::to_string(dims.size()) + " subsystems");
  }
  const std::size_t outer = product(dims.first(traced_index));
  const std::size_t mid = dims[traced_index];
  const std::size_t inner = product(dims.subspan(traced_index + 1));
  const std::size_t kept = outer * inner;
  ComplexMatrix out(kept, kept);
  for (std::size_t l = 0; l < outer; ++l) {
    for (std::size_t r = 0; r < inner; ++r) {
      for (std::size_t lp = 0; lp < outer; ++lp) {
        for (std::size_t rp = 0; rp < inner; ++rp) {
          complex s{};
          for (std::size_t k = 0; k < mid; ++k) {
            s += m((l * mid + k) * inner + r, (lp * mid + k) * inner + rp);
          }
          out(l * inner + r, lp * inner + rp) = s;
        }
      }
    }
  }
  return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, std::initializer_list<std::size_t> dims,
                                   std::size_t traced_index) {
  return partial_trace(m, std::span<const std::size_t>(dims.begin(), dims.size()), traced_index);
}

//------------------------------------------------------------------------------
// Hermitian eigendecomposition (cyclic Jacobi)
//------------------------------------------------------------------------------

struct HermEigResult {
  /** Ascending. */
  std::vector<double> eigenvalues;
  /** Column k is the unit eigenvector for eigenvalues[k]. */
  ComplexMatrix eigenvectors;
};

/**
 * Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
 * rotations. Each rotation zeroes one off-diagonal pair (p, q); sweeps
 * repeat until the off-diagonal mass is below double-precision noise.
 */
inline HermEigResult herm_eig(const ComplexMatrix& h) {
  if (!h.is_square()) throw NotHermitian("eigendecomposition of non-square " + h.shape_string());
  const double asym = hermiticity_residual(h);
  if (asym > tol::hermitian) {
    throw NotHermitian("matrix is not Hermitian (max asymmetry " + std::to_string(asym) + ")");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  auto off_norm2 = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) s += std::norm(a(i, j));
    }
    return s;
  };
  double scale2 = 0.0;
  for (const auto& z : a.data()) scale2 += std::norm(z);
  const double threshold = 1e-34 * std::max(scale2, 1e-300);

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && off_norm2() > threshold; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const complex phase = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s*phase], [-s*conj(phase), c]] on (p, q); a <- J^dagger a J, v <- v J.
        const complex jpq = s * phase;
        const complex jqp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * c + akq * jqp;
          a(k, q) = akp * jpq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * c + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * c;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });
  HermEigResult out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  return out;
}

/** V f(diag) V^dagger for a Hermitian matrix's spectral decomposition. */
template <class F>
ComplexMatrix spectral_apply(const HermEigResult& eig, F&& f) {
  const std::size_t n = eig.eigenvalues.size();
  const ComplexMatrix& v = eig.eigenvectors;
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const complex fk = f(eig.eigenvalues[k]);
    if (fk == complex{}) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const complex vik = v(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(v(j, k));
    }
  }
  return out;
}

/** exp(-i t h) for Hermitian h. */
inline ComplexMatrix expm_i(const ComplexMatrix& h, double t) {
  const HermEigResult eig = herm_eig(h);
  return spectral_apply(eig, [t](double lambda) { return std::polar(1.0, -t * lambda); });
}

/** Principal square root of a positive semidefinite matrix. */
inline ComplexMatrix sqrtm_psd(const ComplexMatrix& p) {
  const HermEigResult eig = herm_eig(p);
  if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -tol::psd_clamp) {
    throw NotPositive("matrix has negative eigenvalue " + std::to_string(eig.eigenvalues.front()));
  }
  return spectral_apply(eig, [](double lambda) { return complex(std::sqrt(std::max(lambda, 0.0))); });
}

}  // namespace entfid
