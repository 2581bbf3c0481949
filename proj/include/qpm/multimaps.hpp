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

/// @file multimaps.hpp
/// Set-valued and single-valued self maps of a finite space, and the exact
/// classification of fixed points, startpoints and endpoints.
///
/// With images Fx nonempty and finite, the Hausdorff excesses reduce to
///   H({x}, Fx) = max_{y in Fx} d(x, y)   (start value)
///   H(Fx, {x}) = max_{y in Fx} d(y, x)   (end value)
/// and every inf over X is an attained min.

#include "qpm/hyperspace.hpp"

#include <optional>

namespace qpm {

/// F : X -> P0(X), total, with nonempty images inside the space.
class SetValuedMap {
 public:
  SetValuedMap(const FiniteQuasiSpace& s, std::vector<PointSet> images) : images_(std::move(images)) {
    if (images_.size() != s.size())
      throw InputError("set-valued map defines " + std::to_string(images_.size()) + " images for " +
                       std::to_string(s.size()) + " points");
    for (std::size_t x = 0; x < images_.size(); ++x) {
      if (images_[x].empty()) throw InputError("empty image at point \"" + s.label(x) + "\"");
      for (auto y : images_[x])
        if (y >= s.size()) throw InputError("image of \"" + s.label(x) + "\" leaves the space");
    }
  }

  /// Fx = X \ {x}. Needs at least two points.
  static SetValuedMap complement_map(const FiniteQuasiSpace& s) {
    std::vector<PointSet> imgs;
    for (PointIndex x = 0; x < s.size(); ++x) imgs.push_back(s.all_points().without(x));
    return SetValuedMap(s, std::move(imgs));
  }

  static SetValuedMap constant(const FiniteQuasiSpace& s, const PointSet& a) {
    return SetValuedMap(s, std::vector<PointSet>(s.size(), a));
  }

  std::size_t size() const { return images_.size(); }
  const PointSet& operator()(PointIndex x) const { return images_.at(x); }
  const std::vector<PointSet>& images() const { return images_; }

  friend bool operator==(const SetValuedMap&, const SetValuedMap&) = default;

 private:
  std::vector<PointSet> images_;
};

/// f : X -> X with an optional alpha : X x X -> [0, inf) table.
class SingleMap {
 public:
  SingleMap(const FiniteQuasiSpace& s, std::vector<PointIndex> targets, std::optional<RationalMatrix> alpha = {})
      : targets_(std::move(targets)), alpha_(std::move(alpha)) {
    if (targets_.size() != s.size())
      throw InputError("point map defines " + std::to_string(targets_.size()) + " values for " +
                       std::to_string(s.size()) + " points");
    for (auto t : targets_)
      if (t >= s.size()) throw InputError("point map leaves the space");
    if (alpha_) {
      if (alpha_->size() != s.size()) throw InputError("alpha table has the wrong side length");
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
          if ((*alpha_)(i, j) < 0) throw InputError("alpha entries must be nonnegative");
    }
  }

  static SingleMap identity(const FiniteQuasiSpace& s) {
    std::vector<PointIndex> t(s.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    return SingleMap(s, std::move(t));
  }

  std::size_t size() const { return targets_.size(); }
  PointIndex operator()(PointIndex x) const { return targets_.at(x); }
  const std::vector<PointIndex>& targets() const { return targets_; }

  bool has_alpha() const { return alpha_.has_value(); }
  const RationalMatrix& alpha() const {
    if (!alpha_) throw PreconditionError("point map has no alpha table");
    return *alpha_;
  }
  const Rational& alpha(PointIndex x, PointIndex y) const { return alpha()(x, y); }

  SingleMap with_alpha(RationalMatrix a) const {
    SingleMap m = *this;
    m.alpha_ = std::move(a);
    return m;
  }

  friend bool operator==(const SingleMap&, const SingleMap&) = default;

 private:
  std::vector<PointIndex> targets_;
  std::optional<RationalMatrix> alpha_;
};

/// H({x}, Fx).
inline Rational start_value(const FiniteQuasiSpace& s, const SetValuedMap& f, PointIndex x) {
  return excess_from_point(s, x, f(x));
}

/// H(Fx, {x}).
inline Rational end_value(const FiniteQuasiSpace& s, const SetValuedMap& f, PointIndex x) {
  return excess_to_point(s, f(x), x);
}

/// max_{y in Fx} d^s(x, y) = H^s({x}, Fx).
inline Rational mix_value(const FiniteQuasiSpace& s, const SetValuedMap& f, PointIndex x) {
  return std::max(start_value(s, f, x), end_value(s, f, x));
}

struct PointClassification {
  bool fixed = false;
  bool startpoint = false;
  bool endpoint = false;
  Rational start_value;
  Rational end_value;
};

inline PointClassification classify_point(const FiniteQuasiSpace& s, const SetValuedMap& f, PointIndex x) {
  PointClassification c;
  c.fixed = f(x).contains(x);
  c.start_value = start_value(s, f, x);
  c.end_value = end_value(s, f, x);
  c.startpoint = c.start_value == 0;
  c.endpoint = c.end_value == 0;
  return c;
}

enum class ExcessSide { start, end };

/// Points whose start (or end) value is below eps, for eps in (0, 1).
inline PointSet eps_points(const FiniteQuasiSpace& s, const SetValuedMap& f, const Rational& eps, ExcessSide side) {
  if (eps <= 0 || eps >= 1) throw PreconditionError("eps must lie strictly between 0 and 1");
  std::vector<PointIndex> out;
  for (PointIndex x = 0; x < s.size(); ++x) {
    const Rational v = side == ExcessSide::start ? start_value(s, f, x) : end_value(s, f, x);
    if (v < eps) out.push_back(x);
  }
  return PointSet(std::move(out));
}

enum class ApproxKind { start, end, mix };

inline const char* to_string(ApproxKind k) {
  switch (k) {
    case ApproxKind::start: return "start";
    case ApproxKind::end: return "end";
    case ApproxKind::mix: return "mix";
  }
  return "?";
}

struct ApproxValue {
  Rational value;
  PointIndex argmin = 0;  ///< smallest index attaining the value
};

/// min over x of the start / end / mix value; zero iff the corresponding
/// approximate property holds.
inline ApproxValue approx_value(const FiniteQuasiSpace& s, const SetValuedMap& f, ApproxKind kind) {
  std::optional<ApproxValue> best;
  for (PointIndex x = 0; x < s.size(); ++x) {
    Rational v;
    switch (kind) {
      case ApproxKind::start: v = start_value(s, f, x); break;
      case ApproxKind::end: v = end_value(s, f, x); break;
      case ApproxKind::mix: v = mix_value(s, f, x); break;
    }
    if (!best || v < best->value) best = ApproxValue{v, x};
  }
  return *best;
}

/// min_x d(x, fx) (start) or min_x d(fx, x) (end).
inline ApproxValue approx_value_single(const FiniteQuasiSpace& s, const SingleMap& f, ExcessSide side) {
  std::optional<ApproxValue> best;
  for (PointIndex x = 0; x < s.size(); ++x) {
    const Rational& v = side == ExcessSide::start ? s.d(x, f(x)) : s.d(f(x), x);
    if (!best || v < best->value) best = ApproxValue{v, x};
  }
  return *best;
}

struct LevelSets {
  /// levels[n-1] = C_n = {x : mix value <= 1/n}.
  std::vector<PointSet> levels;
  /// diameters[n-1] = delta(C_n); empty when C_n is.
  std::vector<std::optional<Rational>> diameters;
  /// {x : mix value = 0}, the intersection of all C_n.
  PointSet core;
};

inline LevelSets level_sets(const FiniteQuasiSpace& s, const SetValuedMap& f, std::size_t n_max) {
  if (n_max < 1) throw PreconditionError("level_sets needs n_max >= 1");
  std::vector<Rational> mix(s.size());
  for (PointIndex x = 0; x < s.size(); ++x) mix[x] = mix_value(s, f, x);
  LevelSets out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const Rational bound(1, n);
    std::vector<PointIndex> pts;
    for (PointIndex x = 0; x < s.size(); ++x)
      if (mix[x] <= bound) pts.push_back(x);
    PointSet level(std::move(pts));
    out.diameters.push_back(level.empty() ? std::nullopt : std::optional<Rational>(diameter(s, level)));
    out.levels.push_back(std::move(level));
  }
  std::vector<PointIndex> core;
  for (PointIndex x = 0; x < s.size(); ++x)
    if (mix[x] == 0) core.push_back(x);
  out.core = PointSet(std::move(core));
  return out;
}

}  // namespace qpm
