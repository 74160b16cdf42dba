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

namespace entfid {

template <std::size_t N>
struct SimplexResult {
  std::array<double, N> point{};
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  /** Largest vertex distance from the best vertex at exit. */
  double diameter = 0.0;
};

/**
 * Nelder-Mead simplex maximization of `f` over R^N, started from an
 * axis-aligned simplex of edge `step` at `start`. Stops once every vertex
 * lies within `tolerance` of the best one or after `max_iterations`.
 *
 * Standard coefficients: reflection 1, expansion 2, contraction 1/2,
 * shrink 1/2. Ties are resolved by vertex order, so the result is a pure
 * function of the inputs.
 */
template <std::size_t N, class F>
SimplexResult<N> nelder_mead_maximize(F&& f, const std::array<double, N>& start, double step, double tolerance,
                                      std::size_t max_iterations) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> x{};
  std::array<double, N + 1> fx{};
  SimplexResult<N> out;

  auto eval = [&](const Point& p) {
    ++out.evaluations;
    return f(p);
  };

  x[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    x[i + 1] = start;
    x[i + 1][i] += step;
  }
  for (std::size_t i = 0; i <= N; ++i) fx[i] = eval(x[i]);

  auto order = [&] {
    // Insertion sort, best (largest) first; stable so ties keep vertex order.
    for (std::size_t i = 1; i <= N; ++i) {
      for (std::size_t j = i; j > 0 && fx[j] > fx[j - 1]; --j) {
        std::swap(fx[j], fx[j - 1]);
        std::swap(x[j], x[j - 1]);
      }
    }
  };
  auto diameter = [&] {
    double d = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < N; ++k) s += (x[i][k] - x[0][k]) * (x[i][k] - x[0][k]);
      d = std::max(d, std::sqrt(s));
    }
    return d;
  };
  auto along = [&](const Point& centroid, const Point& worst, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = centroid[k] + t * (worst[k] - centroid[k]);
    return p;
  };

  order();
  while (out.iterations < max_iterations && diameter() > tolerance) {
    ++out.iterations;
    Point centroid{};
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) centroid[k] += x[i][k] / static_cast<double>(N);
    }

    const Point reflected = along(centroid, x[N], -1.0);
    const double f_reflected = eval(reflected);
    if (f_reflected > fx[0]) {
      const Point expanded = along(centroid, x[N], -2.0);
      const double f_expanded = eval(expanded);
      if (f_expanded > f_reflected) {
        x[N] = expanded;
        fx[N] = f_expanded;
      } else {
        x[N] = reflected;
        fx[N] = f_reflected;
      }
    } else if (f_reflected > fx[N - 1]) {
      x[N] = reflected;
      fx[N] = f_reflected;
    } else {
      const bool outside = f_reflected > fx[N];
      const Point contracted = along(centroid, x[N], outside ? -0.5 : 0.5);
      const double f_contracted = eval(contracted);
      if (outside ? f_contracted >= f_reflected : f_contracted > fx[N]) {
        x[N] = contracted;
        fx[N] = f_contracted;
      } else {
        for (std::size_t i = 1; i <= N; ++i) {
          for (std::size_t k = 0; k < N; ++k) x[i][k] = x[0][k] + 0.5 * (x[i][k] - x[0][k]);
          fx[i] = eval(x[i]);
        }
      }
    }
    order();
  }

  out.point = x[0];
  out.value = fx[0];
  out.diameter = diameter();
  return out;
}

}  // namespace entfid
