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

// Seeded generators for random test instances.

#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "entfid/entfid.hpp"

namespace entfid::fixtures {

using Rng = std::mt19937_64;

inline ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& z : m.data()) z = complex(n(rng), n(rng));
  return m;
}

inline ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  return hermitian_part(random_ginibre(rng, dim, dim));
}

/** Haar-distributed unitary via Gram-Schmidt on a Ginibre matrix. */
inline ComplexMatrix random_unitary(Rng& rng, std::size_t dim) {
  ComplexMatrix m = random_ginibre(rng, dim, dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        complex dot{};
        for (std::size_t r = 0; r < dim; ++r) dot += std::conj(m(r, p)) * m(r, c);
        for (std::size_t r = 0; r < dim; ++r) m(r, c) -= dot * m(r, p);
      }
    }
    double nrm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) nrm += std::norm(m(r, c));
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < dim; ++r) m(r, c) /= nrm;
  }
  return m;
}

inline PureState random_pure(Rng& rng, std::vector<std::size_t> dims) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<complex> amps(product(dims));
  for (auto& a : amps) a = complex(n(rng), n(rng));
  return PureState::normalized(std::move(amps), std::move(dims));
}

/** Full-rank mixed state G G^dagger / Tr. */
inline DensityMatrix random_density(Rng& rng, std::size_t dim, std::vector<std::size_t> dims = {}) {
  const ComplexMatrix g = random_ginibre(rng, dim, dim);
  ComplexMatrix m = hermitian_part(g * dagger(g));
  m *= 1.0 / trace(m).real();
  return DensityMatrix(std::move(m), std::move(dims));
}

/** Channel induced by a random unitary on sys (x) env with a random environment state. */
inline KrausChannel random_channel(Rng& rng, std::size_t sys_dim, std::size_t env_dim) {
  return kraus_from_unitary_env(random_unitary(rng, sys_dim * env_dim), random_density(rng, env_dim), sys_dim);
}

inline LocalUnitaryParams random_angles(Rng& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  return {u(rng), u(rng), u(rng), u(rng)};
}

/** (ua (x) ub) rho (ua (x) ub)^dagger. */
inline DensityMatrix locally_rotated(const DensityMatrix& rho, const ComplexMatrix& ua, const ComplexMatrix& ub) {
  const ComplexMatrix u = kron(ua, ub);
  return DensityMatrix(hermitian_part(u * rho.matrix() * dagger(u)), rho.subsystem_dims());
}

}  // namespace entfid::fixtures
