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

/// @file hyperspace.hpp
/// Point-to-set distances and the Hausdorff quasi-pseudometric
///
///   H(A, B) = max{ sup_{a in A} d(a, B), sup_{b in B} d(A, b) }
///
/// on nonempty subsets. Note the orientation: both excesses measure from the
/// A side toward the B side, so H(A, B) and H(B, A) differ in general.

#include "qpm/space.hpp"

#include <optional>

namespace qpm {

namespace detail {
inline void require_nonempty(const PointSet& a, const char* what) {
  if (a.empty()) throw PreconditionError(std::string(what) + ": set must be nonempty");
}
}  // namespace detail

/// d(x, A) = min_{a in A} d(x, a).
inline Rational dist_point_to_set(const FiniteQuasiSpace& s, PointIndex x, const PointSet& a) {
  detail::require_nonempty(a, "dist_point_to_set");
  Rational best = s.d(x, a.front());
  for (auto p : a)
    if (s.d(x, p) < best) best = s.d(x, p);
  return best;
}

/// d(A, x) = min_{a in A} d(a, x).
inline Rational dist_set_to_point(const FiniteQuasiSpace& s, const PointSet& a, PointIndex x) {
  detail::require_nonempty(a, "dist_set_to_point");
  Rational best = s.d(a.front(), x);
  for (auto p : a)
    if (s.d(p, x) < best) best = s.d(p, x);
  return best;
}

struct HyperDistanceReport {
  ExtendedRational value;
  /// Point attaining the value: from A when the A-side excess dominates,
  /// otherwise from B. `other` is the nearest partner on the opposite set.
  PointIndex witness = 0;
  PointIndex other = 0;
  bool witness_in_first = true;
};

/// H(A, B) with an argmax witness.
inline HyperDistanceReport hausdorff(const FiniteQuasiSpace& s, const PointSet& a, const PointSet& b) {
  detail::require_nonempty(a, "hausdorff");
  detail::require_nonempty(b, "hausdorff");
  HyperDistanceReport rep;
  Rational best = -1;
  for (auto x : a) {
    PointIndex near = b.front();
    for (auto y : b)
      if (s.d(x, y) < s.d(x, near)) near = y;
    if (s.d(x, near) > best) {
      best = s.d(x, near);
      rep.witness = x;
      rep.other = near;
      rep.witness_in_first = true;
    }
  }
  for (auto y : b) {
    PointIndex near = a.front();
    for (auto x : a)
      if (s.d(x, y) < s.d(near, y)) near = x;
    if (s.d(near, y) > best) {
      best = s.d(near, y);
      rep.witness = y;
      rep.other = near;
      rep.witness_in_first = false;
    }
  }
  rep.value = best;
  return rep;
}

/// Plain value of H(A, B).
inline Rational hausdorff_value(const FiniteQuasiSpace& s, const PointSet& a, const PointSet& b) {
  return hausdorff(s, a, b).value.value();
}

/// H^s(A, B) = max{H(A, B), H(B, A)}.
inline Rational hausdorff_sym(const FiniteQuasiSpace& s, const PointSet& a, const PointSet& b) {
  return std::max(hausdorff_value(s, a, b), hausdorff_value(s, b, a));
}

/// H({x}, A) = max_{a in A} d(x, a).
inline Rational excess_from_point(const FiniteQuasiSpace& s, PointIndex x, const PointSet& a) {
  detail::require_nonempty(a, "excess_from_point");
  Rational best = 0;
  for (auto p : a)
    if (s.d(x, p) > best) best = s.d(x, p);
  return best;
}

/// H(A, {x}) = max_{a in A} d(a, x).
inline Rational excess_to_point(const FiniteQuasiSpace& s, const PointSet& a, PointIndex x) {
  detail::require_nonempty(a, "excess_to_point");
  Rational best = 0;
  for (auto p : a)
    if (s.d(p, x) > best) best = s.d(p, x);
  return best;
}

/// A = cl_{tau(d)} A  intersected with  cl_{tau(d^{-1})} A.
inline bool s_cl_membership(const FiniteQuasiSpace& s, const PointSet& a) {
  return intersect(closure(s, a, Side::forward), closure(s, a, Side::backward)) == a;
}

/// Nonempty, bounded and tau(d^s)-closed.
inline bool cb_membership(const FiniteQuasiSpace& s, const PointSet& a) {
  return !a.empty() && is_bounded(s, a) && is_join_closed(s, a);
}

/// Violation record for the hyperspace check; witnesses index into the family.
struct HyperViolation {
  ViolationKind kind;
  std::vector<std::size_t> members;
  Rational lhs;
  Rational rhs;
};

struct HyperspaceDiagnostics {
  std::vector<HyperViolation> violations;
  bool family_in_s_cl = false;
  bool t0_checked = false;
  bool ok() const { return violations.empty(); }
};

/// Checks H(A,A) = 0 and the triangle inequality over every triple of the
/// family. The T0 condition on H is checked when `check_t0` says so, or by
/// default when the whole family lies in S_cl(X).
inline HyperspaceDiagnostics hyperspace_axiom_check(const FiniteQuasiSpace& s, const std::vector<PointSet>& family,
                                                    std::optional<bool> check_t0 = std::nullopt) {
  for (const auto& a : family) detail::require_nonempty(a, "hyperspace_axiom_check");
  HyperspaceDiagnostics diag;
  const std::size_t m = family.size();
  std::vector<Rational> h(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) h[i * m + j] = hausdorff_value(s, family[i], family[j]);

  for (std::size_t i = 0; i < m; ++i)
    if (h[i * m + i] != 0) diag.violations.push_back({ViolationKind::nonzero_diagonal, {i, i}, h[i * m + i], 0});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        Rational via = h[i * m + j] + h[j * m + k];
        if (h[i * m + k] > via) diag.violations.push_back({ViolationKind::triangle, {i, j, k}, h[i * m + k], via});
      }

  diag.family_in_s_cl = std::all_of(family.begin(), family.end(), [&](const PointSet& a) { return s_cl_membership(s, a); });
  diag.t0_checked = check_t0.value_or(diag.family_in_s_cl);
  if (diag.t0_checked)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (family[i] != family[j] && h[i * m + j] == 0 && h[j * m + i] == 0)
          diag.violations.push_back({ViolationKind::t0, {i, j}, 0, 0});
  return diag;
}

/// Every nonempty subset of the space, ordered by bitmask. Only sensible for
/// small spaces (2^n - 1 sets).
inline std::vector<PointSet> nonempty_subsets(const FiniteQuasiSpace& s) {
  if (s.size() > 20) throw PreconditionError("power set requested for a space with more than 20 points");
  std::vector<PointSet> out;
  const std::size_t n = s.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<PointIndex> pts;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) pts.push_back(i);
    out.emplace_back(std::move(pts));
  }
  return out;
}

}  // namespace qpm
