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

/// @file space.hpp
/// Finite quasi-pseudometric spaces.
///
/// A space is a list of labels plus an exact distance matrix d with
/// d(x,x) = 0 and d(x,z) <= d(x,y) + d(y,z). Symmetry is not required, so
/// most notions come in a forward (d), backward (conjugate, d(y,x)) and
/// symmetric (max of both) flavour.

#include "qpm/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qpm {

/// Index of a point inside its ambient space.
using PointIndex = std::size_t;

/// Sorted set of point indices. May be empty; operations that need a
/// nonempty set check it themselves.
class PointSet {
 public:
  PointSet() = default;
  PointSet(std::initializer_list<PointIndex> pts) : PointSet(std::vector<PointIndex>(pts)) {}
  explicit PointSet(std::vector<PointIndex> pts) : items_(std::move(pts)) {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }

  static PointSet all(std::size_t n) {
    PointSet s;
    s.items_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.items_[i] = i;
    return s;
  }

  bool empty() const { return items_.empty(); }
  std::size_t size() const { return items_.size(); }
  bool contains(PointIndex p) const { return std::binary_search(items_.begin(), items_.end(), p); }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  PointIndex front() const { return items_.front(); }
  const std::vector<PointIndex>& indices() const { return items_; }

  bool is_subset_of(const PointSet& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  PointSet without(PointIndex p) const {
    PointSet s;
    for (auto q : items_)
      if (q != p) s.items_.push_back(q);
    return s;
  }

  friend PointSet intersect(const PointSet& a, const PointSet& b) {
    PointSet s;
    std::set_intersection(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(),
                          std::back_inserter(s.items_));
    return s;
  }

  friend PointSet unite(const PointSet& a, const PointSet& b) {
    PointSet s;
    std::set_union(a.items_.begin(), a.items_.end(), b.items_.begin(), b.items_.end(), std::back_inserter(s.items_));
    return s;
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;
  friend auto operator<=>(const PointSet&, const PointSet&) = default;

 private:
  std::vector<PointIndex> items_;
};

enum class ViolationKind { negative_entry, nonzero_diagonal, triangle, t0 };

inline const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::negative_entry: return "negative-entry";
    case ViolationKind::nonzero_diagonal: return "nonzero-diagonal";
    case ViolationKind::triangle: return "triangle";
    case ViolationKind::t0: return "T0";
  }
  return "?";
}

/// One failed axiom instance. For triangle violations the witnesses are
/// (x, y, z) with lhs = d(x,z) and rhs = d(x,y) + d(y,z).
struct Violation {
  ViolationKind kind;
  std::vector<PointIndex> witnesses;
  Rational lhs;
  Rational rhs;
};

struct SpaceDiagnostics {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::size_t count(ViolationKind k) const {
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
  }
};

/// Exhaustively lists every violated axiom of a candidate distance matrix.
/// The triangle scan is the full O(n^3) pass.
inline SpaceDiagnostics validate_space(const RationalMatrix& d, bool require_t0) {
  SpaceDiagnostics diag;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) < 0) diag.violations.push_back({ViolationKind::negative_entry, {i, j}, d(i, j), 0});
  for (std::size_t i = 0; i < n; ++i)
    if (d(i, i) != 0) diag.violations.push_back({ViolationKind::nonzero_diagonal, {i, i}, d(i, i), 0});
  Rational via;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        via = d(x, y) + d(y, z);
        if (d(x, z) > via) diag.violations.push_back({ViolationKind::triangle, {x, y, z}, d(x, z), via});
      }
  if (require_t0)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (d(i, j) == 0 && d(j, i) == 0) diag.violations.push_back({ViolationKind::t0, {i, j}, 0, 0});
  return diag;
}

/// Thrown when a matrix fails the quasi-pseudometric axioms at construction.
class AxiomError : public std::runtime_error {
 public:
  AxiomError(const std::string& what, SpaceDiagnostics diag)
      : std::runtime_error(what), diagnostics_(std::move(diag)) {}
  const SpaceDiagnostics& diagnostics() const { return diagnostics_; }

 private:
  SpaceDiagnostics diagnostics_;
};

/// Min-plus (all-pairs shortest path) closure. The result satisfies the
/// triangle inequality, keeps a zero diagonal, and only ever lowers entries.
inline RationalMatrix triangle_closure(RationalMatrix d) {
  const std::size_t n = d.size();
  Rational via;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = via;
      }
  return d;
}

/// Finite quasi-pseudometric space (X, d). Immutable after construction.
class FiniteQuasiSpace {
 public:
  /// Validates the axioms (and T0 when requested); throws AxiomError with
  /// the full diagnostics on failure.
  static FiniteQuasiSpace make(std::vector<std::string> labels, RationalMatrix dist, bool require_t0 = true) {
    check_structure(labels, dist);
    auto diag = validate_space(dist, require_t0);
    if (!diag.ok()) {
      const std::string what =
          "distance matrix violates " + std::to_string(diag.violations.size()) + " axiom instance(s)";
      throw AxiomError(what, std::move(diag));
    }
    return FiniteQuasiSpace(std::move(labels), std::move(dist));
  }

  /// Skips the cubic triangle scan. For matrices valid by construction
  /// (analytic corpus instances, transposes and maxima of valid spaces).
  static FiniteQuasiSpace trusted(std::vector<std::string> labels, RationalMatrix dist) {
    check_structure(labels, dist);
    return FiniteQuasiSpace(std::move(labels), std::move(dist));
  }

  /// Labels "0", "1", ... for generated instances.
  static std::vector<std::string> numeric_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }
  const RationalMatrix& matrix() const { return dist_; }

  const Rational& d(PointIndex x, PointIndex y) const { return dist_(x, y); }
  const Rational& operator()(PointIndex x, PointIndex y) const { return dist_(x, y); }
  Rational d_sym(PointIndex x, PointIndex y) const { return std::max(dist_(x, y), dist_(y, x)); }

  /// Whether d(x,y) = 0 = d(y,x) forces x = y.
  bool is_t0() const { return t0_; }

  PointIndex index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw InputError("unknown point label \"" + label + "\"");
    return it->second;
  }

  PointSet set_of(const std::vector<std::string>& labels) const {
    std::vector<PointIndex> idx;
    idx.reserve(labels.size());
    for (const auto& l : labels) idx.push_back(index_of(l));
    return PointSet(std::move(idx));
  }

  std::vector<std::string> labels_of(const PointSet& s) const {
    std::vector<std::string> out;
    for (auto p : s) out.push_back(label(p));
    return out;
  }

  PointSet all_points() const { return PointSet::all(size()); }

  /// Subspace on the given points, relabelled in increasing index order.
  FiniteQuasiSpace restricted_to(const PointSet& keep) const {
    RationalMatrix sub(keep.size());
    std::vector<std::string> labels;
    const auto& idx = keep.indices();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      labels.push_back(labels_.at(idx[i]));
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = dist_(idx[i], idx[j]);
    }
    return FiniteQuasiSpace(std::move(labels), std::move(sub));
  }

  friend bool operator==(const FiniteQuasiSpace& a, const FiniteQuasiSpace& b) {
    return a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  FiniteQuasiSpace(std::vector<std::string> labels, RationalMatrix dist)
      : labels_(std::move(labels)), dist_(std::move(dist)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], i);
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < n && t0_; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (dist_(i, j) == 0 && dist_(j, i) == 0) {
          t0_ = false;
          break;
        }
  }

  static void check_structure(const std::vector<std::string>& labels, const RationalMatrix& dist) {
    if (labels.empty()) throw InputError("a space needs at least one point");
    if (dist.size() != labels.size())
      throw InputError("distance matrix side " + std::to_string(dist.size()) + " does not match " +
                       std::to_string(labels.size()) + " labels");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end()) throw InputError("duplicate point label \"" + *dup + "\"");
  }

  std::vector<std::string> labels_;
  RationalMatrix dist_;
  std::map<std::string, PointIndex> index_;
  bool t0_ = true;
};

/// The conjugate space, d^{-1}(x,y) = d(y,x).
inline FiniteQuasiSpace conjugate(const FiniteQuasiSpace& s) {
  return FiniteQuasiSpace::trusted(s.labels(), s.matrix().transposed());
}

/// d^s(x,y) = max{d(x,y), d(y,x)}; a metric whenever s is T0.
inline FiniteQuasiSpace symmetrize(const FiniteQuasiSpace& s) {
  RationalMatrix m(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = 0; j < s.size(); ++j) m(i, j) = s.d_sym(i, j);
  return FiniteQuasiSpace::trusted(s.labels(), std::move(m));
}

/// Open ball {y : d(x,y) < eps}, eps > 0.
inline PointSet open_ball(const FiniteQuasiSpace& s, PointIndex x, const Rational& eps) {
  if (eps <= 0) throw PreconditionError("open ball radius must be positive");
  std::vector<PointIndex> out;
  for (PointIndex y = 0; y < s.size(); ++y)
    if (s.d(x, y) < eps) out.push_back(y);
  return PointSet(std::move(out));
}

/// Closed ball {y : d(x,y) <= eps}, eps >= 0.
inline PointSet closed_ball(const FiniteQuasiSpace& s, PointIndex x, const Rational& eps) {
  if (eps < 0) throw PreconditionError("closed ball radius must be nonnegative");
  std::vector<PointIndex> out;
  for (PointIndex y = 0; y < s.size(); ++y)
    if (s.d(x, y) <= eps) out.push_back(y);
  return PointSet(std::move(out));
}

/// sup{d(x,y) : x, y in A}; attained on finite sets.
inline Rational diameter(const FiniteQuasiSpace& s, const PointSet& a) {
  if (a.empty()) throw PreconditionError("diameter of the empty set");
  Rational best = 0;
  for (auto x : a)
    for (auto y : a)
      if (s.d(x, y) > best) best = s.d(x, y);
  return best;
}

/// Which of the three induced topologies a closure is taken in.
enum class Side { forward, backward, symmetric };

inline const char* to_string(Side side) {
  switch (side) {
    case Side::forward: return "forward";
    case Side::backward: return "backward";
    case Side::symmetric: return "symmetric";
  }
  return "?";
}

/// Distance from x to y measured in d, d^{-1} or d^s.
inline Rational side_distance(const FiniteQuasiSpace& s, Side side, PointIndex x, PointIndex y) {
  switch (side) {
    case Side::forward: return s.d(x, y);
    case Side::backward: return s.d(y, x);
    case Side::symmetric: return s.d_sym(x, y);
  }
  return s.d(x, y);
}

/// Topological closure {x : d_side(x, A) = 0}. In tau(d) a point is adherent
/// to A iff every ball B_d(x, eps) meets A, which on a finite set means some
/// a in A sits at distance exactly 0.
inline PointSet closure(const FiniteQuasiSpace& s, const PointSet& a, Side side) {
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < s.size(); ++x)
    for (auto p : a)
      if (side_distance(s, side, x, p) == 0) {
        out.push_back(x);
        break;
      }
  return PointSet(std::move(out));
}

/// tau(d^s)-closed. The empty set is closed.
inline bool is_join_closed(const FiniteQuasiSpace& s, const PointSet& a) {
  return closure(s, a, Side::symmetric) == a;
}

/// Every subset of a finite space has finite diameter, so this is always
/// true; it exists so that CB(X) membership reads like its definition.
inline bool is_bounded(const FiniteQuasiSpace& s, const PointSet& a) {
  for (auto p : a)
    if (p >= s.size()) throw InputError("point index out of range");
  return true;
}

}  // namespace qpm
