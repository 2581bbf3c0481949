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

/// @file sequences.hpp
/// Convergence and Cauchy classification of sequence traces.
///
/// Two kinds of trace are supported:
///
///  * eventually periodic: `points[0..cycle_start)` is a prefix and
///    `points[cycle_start..]` repeats forever. Every verdict is exact, because
///    the tail only ever takes finitely many distance values. A constant tail
///    is a cycle of length one.
///
///  * plain finite: only the listed points are known. "For every eps" is
///    replaced by the schedule eps_j = 1/j for j = 1..L (L = trace length),
///    and the tail for eps_j is the window starting at index j-1. A trace
///    that meets every threshold is reported as holds_up_to_horizon, never as
///    holds.

#include "qpm/space.hpp"

#include <array>
#include <optional>
#include <string>

namespace qpm {

struct SequenceTrace {
  std::vector<PointIndex> points;
  /// Start of the repeating block when the trace is eventually periodic.
  std::optional<std::size_t> cycle_start;

  static SequenceTrace finite(std::vector<PointIndex> pts) { return {std::move(pts), std::nullopt}; }
  static SequenceTrace periodic(std::vector<PointIndex> pts, std::size_t start) { return {std::move(pts), start}; }
  static SequenceTrace constant(PointIndex p) { return {{p}, 0}; }

  bool exact() const { return cycle_start.has_value(); }

  void check(const FiniteQuasiSpace& s) const {
    if (points.empty()) throw PreconditionError("empty sequence trace");
    if (cycle_start && *cycle_start >= points.size())
      throw PreconditionError("cycle start must index into the trace");
    for (auto p : points)
      if (p >= s.size()) throw InputError("trace point outside the space");
  }

  friend bool operator==(const SequenceTrace&, const SequenceTrace&) = default;
};

enum class VerdictStatus { holds, fails, holds_up_to_horizon };

inline const char* to_string(VerdictStatus v) {
  switch (v) {
    case VerdictStatus::holds: return "holds";
    case VerdictStatus::fails: return "fails";
    case VerdictStatus::holds_up_to_horizon: return "holds-up-to-horizon";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::holds;
  /// On failure: a threshold eps that cannot be met ...
  std::optional<Rational> witness_eps;
  /// ... and the offending indices into the trace (k <= n where relevant).
  std::optional<std::pair<std::size_t, std::size_t>> witness_indices;
  /// Auxiliary point found for the left/right d-Cauchy existentials.
  std::optional<PointIndex> auxiliary;

  bool positive() const { return status != VerdictStatus::fails; }
  friend bool operator==(const Verdict&, const Verdict&) = default;
};

enum class ConvergenceMode { d, d_inverse, d_sym };
enum class CauchyKind { left_d, left_k, right_d, right_k, d_sym };

inline const char* to_string(CauchyKind k) {
  switch (k) {
    case CauchyKind::left_d: return "left-d";
    case CauchyKind::left_k: return "left-K";
    case CauchyKind::right_d: return "right-d";
    case CauchyKind::right_k: return "right-K";
    case CauchyKind::d_sym: return "d-sym";
  }
  return "?";
}

inline CauchyKind parse_cauchy_kind(std::string_view name) {
  for (auto k : {CauchyKind::left_d, CauchyKind::left_k, CauchyKind::right_d, CauchyKind::right_k, CauchyKind::d_sym})
    if (name == to_string(k)) return k;
  throw InputError("unknown Cauchy kind \"" + std::string(name) + "\"");
}

namespace detail {

struct Window {
  std::size_t begin;  // first index of the tail
  Rational eps;       // threshold
};

/// Thresholds to test: exact traces use the cycle only, with an eps supplied
/// per check; horizon traces use the 1/j schedule.
inline std::vector<Window> horizon_windows(const SequenceTrace& t) {
  std::vector<Window> w;
  for (std::size_t j = 1; j <= t.points.size(); ++j) w.push_back({j - 1, Rational(1, j)});
  return w;
}

/// Distance between the k-th and n-th trace points under the pairing a Cauchy
/// kind uses; `ordered` asks for k <= n only.
inline Verdict pairwise_tail_check(const FiniteQuasiSpace& s, const SequenceTrace& t, bool ordered, bool reversed) {
  const auto& x = t.points;
  auto dist = [&](std::size_t k, std::size_t n) { return reversed ? s.d(x[n], x[k]) : s.d(x[k], x[n]); };
  Verdict v;
  if (t.exact()) {
    // In a periodic tail every ordered pair of cycle members occurs with
    // k <= n, so ordered and unordered conditions coincide.
    const std::size_t c = *t.cycle_start;
    Rational worst = 0;
    for (std::size_t k = c; k < x.size(); ++k)
      for (std::size_t n = c; n < x.size(); ++n)
        if (dist(k, n) > worst) {
          worst = dist(k, n);
          v.witness_indices = {k, n};
        }
    if (worst > 0) {
      v.status = VerdictStatus::fails;
      v.witness_eps = worst;
    } else {
      v.witness_indices.reset();
    }
    return v;
  }
  for (const auto& w : horizon_windows(t))
    for (std::size_t k = w.begin; k < x.size(); ++k)
      for (std::size_t n = ordered ? k : w.begin; n < x.size(); ++n)
        if (dist(k, n) >= w.eps) {
          v.status = VerdictStatus::fails;
          v.witness_eps = w.eps;
          v.witness_indices = {k, n};
          return v;
        }
  v.status = VerdictStatus::holds_up_to_horizon;
  return v;
}

/// Existence of an auxiliary point x with d(x, x_n) (or d(x_n, x)) small on
/// the tail.
inline Verdict anchor_tail_check(const FiniteQuasiSpace& s, const SequenceTrace& t, bool reversed) {
  const auto& x = t.points;
  auto dist = [&](PointIndex a, std::size_t n) { return reversed ? s.d(x[n], a) : s.d(a, x[n]); };
  Verdict v;
  if (t.exact()) {
    const std::size_t c = *t.cycle_start;
    std::optional<Rational> best;
    for (PointIndex a = 0; a < s.size(); ++a) {
      Rational worst = 0;
      for (std::size_t n = c; n < x.size(); ++n) worst = std::max(worst, dist(a, n));
      if (!best || worst < *best) {
        best = worst;
        v.auxiliary = a;
      }
    }
    if (*best > 0) {
      v.status = VerdictStatus::fails;
      v.witness_eps = *best;
      v.auxiliary.reset();
    }
    return v;
  }
  for (const auto& w : horizon_windows(t)) {
    std::optional<PointIndex> found;
    for (PointIndex a = 0; a < s.size() && !found; ++a) {
      bool good = true;
      for (std::size_t n = w.begin; n < x.size() && good; ++n) good = dist(a, n) < w.eps;
      if (good) found = a;
    }
    if (!found) {
      v.status = VerdictStatus::fails;
      v.witness_eps = w.eps;
      v.witness_indices = {w.begin, w.begin};
      return v;
    }
    v.auxiliary = found;
  }
  v.status = VerdictStatus::holds_up_to_horizon;
  return v;
}

inline Verdict distance_to_candidate_check(const FiniteQuasiSpace& s, const SequenceTrace& t, PointIndex cand,
                                           bool reversed) {
  const auto& x = t.points;
  auto dist = [&](std::size_t n) { return reversed ? s.d(x[n], cand) : s.d(cand, x[n]); };
  Verdict v;
  if (t.exact()) {
    for (std::size_t n = *t.cycle_start; n < x.size(); ++n)
      if (dist(n) > 0) {
        v.status = VerdictStatus::fails;
        v.witness_eps = dist(n);
        v.witness_indices = {n, n};
        return v;
      }
    return v;
  }
  for (const auto& w : horizon_windows(t))
    for (std::size_t n = w.begin; n < x.size(); ++n)
      if (dist(n) >= w.eps) {
        v.status = VerdictStatus::fails;
        v.witness_eps = w.eps;
        v.witness_indices = {n, n};
        return v;
      }
  v.status = VerdictStatus::holds_up_to_horizon;
  return v;
}

inline Verdict both(const Verdict& a, const Verdict& b) {
  if (!a.positive()) return a;
  if (!b.positive()) return b;
  Verdict v = a;
  if (b.status == VerdictStatus::holds_up_to_horizon) v.status = b.status;
  return v;
}

}  // namespace detail

/// x_n -> candidate in tau(d) (d(c, x_n) -> 0), tau(d^{-1}) (d(x_n, c) -> 0),
/// or both at once.
inline Verdict classify_convergence(const FiniteQuasiSpace& s, const SequenceTrace& t, PointIndex candidate,
                                    ConvergenceMode mode) {
  t.check(s);
  if (candidate >= s.size()) throw InputError("candidate point outside the space");
  switch (mode) {
    case ConvergenceMode::d: return detail::distance_to_candidate_check(s, t, candidate, false);
    case ConvergenceMode::d_inverse: return detail::distance_to_candidate_check(s, t, candidate, true);
    case ConvergenceMode::d_sym:
      return detail::both(detail::distance_to_candidate_check(s, t, candidate, false),
                          detail::distance_to_candidate_check(s, t, candidate, true));
  }
  return {};
}

/// The five Cauchy notions:
///   left-d   exists x: d(x, x_n) < eps on the tail
///   left-K   d(x_k, x_n) < eps for tail indices k <= n
///   d-sym    d(x_n, x_k) < eps for all tail indices
///   right-d / right-K  the same with the arguments of d swapped.
inline Verdict classify_cauchy(const FiniteQuasiSpace& s, const SequenceTrace& t, CauchyKind kind) {
  t.check(s);
  switch (kind) {
    case CauchyKind::left_d: return detail::anchor_tail_check(s, t, false);
    case CauchyKind::right_d: return detail::anchor_tail_check(s, t, true);
    case CauchyKind::left_k: return detail::pairwise_tail_check(s, t, true, false);
    case CauchyKind::right_k: return detail::pairwise_tail_check(s, t, true, true);
    case CauchyKind::d_sym: return detail::pairwise_tail_check(s, t, false, false);
  }
  throw InputError("unknown Cauchy kind");
}

struct HierarchyReport {
  Verdict left_d, left_k, right_d, right_k, d_sym;
  Verdict right_k_conjugate;  ///< right-K with respect to d^{-1}
  Verdict right_d_conjugate;  ///< right-d with respect to d^{-1}
  /// Implications that must hold; any entry here is a toolkit bug.
  std::vector<std::string> violations;
  /// "left-d w.r.t. d iff right-K w.r.t. d^{-1}" as literally stated. This
  /// is not a theorem (a left-d but not left-K trace refutes it), so a false
  /// value is recorded, not treated as a bug.
  bool literal_left_d_right_k_conjugate = true;
};

/// Evaluates all five notions and checks the implication lattice
///   d-sym => left-K => left-d,  d-sym => right-K => right-d,
///   left-K(d) <=> right-K(d^{-1}),  left-d(d) <=> right-d(d^{-1}),
///   d-sym <=> left-K and right-K.
inline HierarchyReport check_hierarchy(const FiniteQuasiSpace& s, const SequenceTrace& t) {
  HierarchyReport r;
  r.left_d = classify_cauchy(s, t, CauchyKind::left_d);
  r.left_k = classify_cauchy(s, t, CauchyKind::left_k);
  r.right_d = classify_cauchy(s, t, CauchyKind::right_d);
  r.right_k = classify_cauchy(s, t, CauchyKind::right_k);
  r.d_sym = classify_cauchy(s, t, CauchyKind::d_sym);
  const auto conj = conjugate(s);
  r.right_k_conjugate = classify_cauchy(conj, t, CauchyKind::right_k);
  r.right_d_conjugate = classify_cauchy(conj, t, CauchyKind::right_d);

  auto implies = [&](const Verdict& a, const Verdict& b, const char* what) {
    if (a.positive() && !b.positive()) r.violations.emplace_back(what);
  };
  implies(r.d_sym, r.left_k, "d-sym => left-K");
  implies(r.left_k, r.left_d, "left-K => left-d");
  implies(r.d_sym, r.right_k, "d-sym => right-K");
  implies(r.right_k, r.right_d, "right-K => right-d");
  if (r.left_k.positive() != r.right_k_conjugate.positive())
    r.violations.emplace_back("left-K(d) <=> right-K(d^-1)");
  if (r.left_d.positive() != r.right_d_conjugate.positive())
    r.violations.emplace_back("left-d(d) <=> right-d(d^-1)");
  if (r.d_sym.positive() != (r.left_k.positive() && r.right_k.positive()))
    r.violations.emplace_back("d-sym <=> left-K and right-K");
  r.literal_left_d_right_k_conjugate = r.left_d.positive() == r.right_k_conjugate.positive();
  return r;
}

struct SemicontinuityReport {
  /// y -> d(fixed, y) is tau(d)-usc along the trace.
  Verdict upper;
  /// y -> d(fixed, y) is tau(d^{-1})-lsc along the trace; only evaluated when
  /// the trace also converges to the candidate in tau(d^{-1}).
  std::optional<Verdict> lower;
};

/// Finite-trace probe of semicontinuity of d(fixed, .).
///
/// Requires x_n -> candidate in tau(d) and throws PreconditionError otherwise.
/// Upper: on each window, max d(fixed, x_n) <= d(fixed, candidate) + eps.
/// Lower: on each window, min d(fixed, x_n) >= d(fixed, candidate) - eps.
/// Exact traces use eps = 0 on the cycle.
inline SemicontinuityReport semicontinuity_probe(const FiniteQuasiSpace& s, PointIndex fixed, const SequenceTrace& t,
                                                 PointIndex candidate) {
  if (fixed >= s.size()) throw InputError("fixed point outside the space");
  if (!classify_convergence(s, t, candidate, ConvergenceMode::d).positive())
    throw PreconditionError("trace does not d-converge to the candidate");
  const auto& x = t.points;
  const Rational& target = s.d(fixed, candidate);

  auto run = [&](bool upper) {
    Verdict v;
    auto violates = [&](std::size_t n, const Rational& eps) {
      return upper ? s.d(fixed, x[n]) > target + eps : s.d(fixed, x[n]) < target - eps;
    };
    if (t.exact()) {
      for (std::size_t n = *t.cycle_start; n < x.size(); ++n)
        if (violates(n, 0)) {
          v.status = VerdictStatus::fails;
          v.witness_eps = Rational(0);
          v.witness_indices = {n, n};
          return v;
        }
      return v;
    }
    for (const auto& w : detail::horizon_windows(t))
      for (std::size_t n = w.begin; n < x.size(); ++n)
        if (violates(n, w.eps)) {
          v.status = VerdictStatus::fails;
          v.witness_eps = w.eps;
          v.witness_indices = {n, n};
          return v;
        }
    v.status = VerdictStatus::holds_up_to_horizon;
    return v;
  };

  SemicontinuityReport rep;
  rep.upper = run(true);
  if (classify_convergence(s, t, candidate, ConvergenceMode::d_inverse).positive()) rep.lower = run(false);
  return rep;
}

}  // namespace qpm
