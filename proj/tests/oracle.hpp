/*
 * Copyright 2026 The qpm Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Brute-force reference computations on plain nested vectors. Nothing here
// calls into the library's algorithms; only the space's matrix is read.

#include "qpm/space.hpp"

#include <random>
#include <set>
#include <vector>

namespace oracle {

using R = qpm::Rational;
using Mat = std::vector<std::vector<R>>;
using Idx = std::vector<std::size_t>;

inline Mat mat_of(const qpm::FiniteQuasiSpace& s) {
  Mat m(s.size(), std::vector<R>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m[i][j] = s.matrix()(i, j);
  return m;
}

inline qpm::RationalMatrix to_matrix(const Mat& m) { return qpm::RationalMatrix::from_rows(m); }

/// Raw matrix with entries k/den, k in [0, top], possibly violating axioms.
inline Mat random_raw(std::mt19937_64& rng, std::size_t n, int top, int den, bool zero_diag) {
  std::uniform_int_distribution<int> u(0, top);
  Mat m(n, std::vector<R>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = (i == j && zero_diag) ? R(0) : R(u(rng), den);
  return m;
}

struct Counts {
  std::size_t negative = 0, diagonal = 0, triangle = 0, t0 = 0;
};

inline Counts axiom_counts(const Mat& m) {
  Counts c;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i][i] != 0) ++c.diagonal;
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][j] < 0) ++c.negative;
      if (i < j && m[i][j] == 0 && m[j][i] == 0) ++c.t0;
      for (std::size_t k = 0; k < n; ++k)
        if (m[i][k] > m[i][j] + m[j][k]) ++c.triangle;
    }
  }
  return c;
}

inline bool is_qpm(const Mat& m) {
  const auto c = axiom_counts(m);
  return c.negative == 0 && c.diagonal == 0 && c.triangle == 0;
}

/// Shortest paths by repeated relaxation until nothing changes.
inline Mat relax_to_fixpoint(Mat m) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        for (std::size_t k = 0; k < m.size(); ++k)
          if (m[i][j] + m[j][k] < m[i][k]) {
            m[i][k] = m[i][j] + m[j][k];
            changed = true;
          }
  }
  return m;
}

/// H(A, B) = max{ sup_a inf_b d(a, b), sup_b inf_a d(a, b) }.
inline R hausdorff(const Mat& m, const Idx& a, const Idx& b) {
  R out = 0;
  for (auto x : a) {
    R best = m[x][b[0]];
    for (auto y : b) best = std::min(best, m[x][y]);
    out = std::max(out, best);
  }
  for (auto y : b) {
    R best = m[a[0]][y];
    for (auto x : a) best = std::min(best, m[x][y]);
    out = std::max(out, best);
  }
  return out;
}

inline R start_value(const Mat& m, std::size_t x, const Idx& img) { return hausdorff(m, {x}, img); }
inline R end_value(const Mat& m, std::size_t x, const Idx& img) { return hausdorff(m, img, {x}); }

inline Idx random_subset(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<std::size_t> u(1, (std::size_t{1} << n) - 1);
  const std::size_t mask = u(rng);
  Idx out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask & (std::size_t{1} << i)) out.push_back(i);
  return out;
}

/// Horizon reading of a pairwise Cauchy condition on a finite trace: for
/// j = 1..L, every relevant pair in the tail from index j-1 is below 1/j.
/// kind: 0 left-K (d(x_k,x_n), k <= n), 1 right-K (d(x_n,x_k), k <= n),
/// 2 symmetric (all pairs).
inline bool pairwise_horizon(const Mat& m, const Idx& pts, int kind) {
  const std::size_t L = pts.size();
  for (std::size_t j = 1; j <= L; ++j) {
    R worst = 0;
    for (std::size_t k = j - 1; k < L; ++k)
      for (std::size_t n = j - 1; n < L; ++n) {
        if (kind != 2 && n < k) continue;
        const R v = kind == 1 ? m[pts[n]][pts[k]] : m[pts[k]][pts[n]];
        worst = std::max(worst, v);
      }
    if (worst >= R(1, j)) return false;
  }
  return true;
}

/// Periodic reading: the cycle block must have all relevant distances 0.
inline bool pairwise_periodic(const Mat& m, const Idx& pts, std::size_t start, int kind) {
  for (std::size_t k = start; k < pts.size(); ++k)
    for (std::size_t n = start; n < pts.size(); ++n) {
      const R v = kind == 1 ? m[pts[n]][pts[k]] : m[pts[k]][pts[n]];
      if (v != 0) return false;
    }
  return true;
}

/// Greedy startpoint walk as stated: stop at f = 0; otherwise move to the
/// feasible y in Fx (f(y) <= c d(x,y)) of least f, lowest index first.
struct Walk {
  std::vector<std::size_t> path;
  bool success = false;
};

inline Walk greedy_start_walk(const Mat& m, const std::vector<Idx>& f, const R& c, std::size_t x0,
                              std::size_t max_steps) {
  Walk w;
  w.path.push_back(x0);
  std::set<std::size_t> seen{x0};
  for (std::size_t step = 0; step <= max_steps; ++step) {
    const std::size_t x = w.path.back();
    if (start_value(m, x, f[x]) == 0) {
      w.success = true;
      return w;
    }
    std::optional<std::size_t> best;
    for (auto y : f[x]) {
      const R fy = start_value(m, y, f[y]);
      if (fy > c * m[x][y]) continue;
      if (!best || fy < start_value(m, *best, f[*best])) best = y;
    }
    if (!best || seen.count(*best)) return w;
    seen.insert(*best);
    w.path.push_back(*best);
  }
  return w;
}

inline Mat transpose(const Mat& m) {
  Mat t = m;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) t[i][j] = m[j][i];
  return t;
}

}  // namespace oracle
