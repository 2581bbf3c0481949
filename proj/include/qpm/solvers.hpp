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

/// @file solvers.hpp
/// Constructive fixed-point, startpoint and endpoint iterations with
/// step-by-step verification of their a-priori bounds.
///
/// Two families live here:
///
///  * Picard iteration x_{n+1} = T x_n for (alpha, gamma)-contractions. Each
///    step logs d(x_n, x_{n+1}) against gamma^n(d(x_0, x_1)) and checks that
///    alpha(x_n, x_{n+1}) >= 1 propagates.
///
///  * Greedy descent for set-valued maps: from x_n, pick y in F x_n with
///    f(y) <= c d(x_n, y) where f(x) = H({x}, Fx), preferring the smallest
///    f(y) and then the smallest index. The run stops as soon as f(x_n) = 0,
///    before looking for a successor; a startpoint need not have a feasible
///    successor of its own. Steps log d(x_n, x_{n+1}) <= c^n d(x_0, x_1),
///    f(x_{n+1}) <= c^n f(x_0) and the tail bound c^n / (1 - c) d(x_0, x_1).
///
/// Exact arithmetic on a finite space means a run ends in an exact fixed
/// point (or startpoint/endpoint), a revisited state, or max_iter.

#include "qpm/functions.hpp"
#include "qpm/multimaps.hpp"

#include <functional>
#include <set>
#include <stdexcept>

namespace qpm {

enum class TerminalStatus {
  fixed_point_found,
  startpoint_found,
  endpoint_found,
  cycle_detected,
  hypothesis_violated,
  max_iter
};

inline const char* to_string(TerminalStatus s) {
  switch (s) {
    case TerminalStatus::fixed_point_found: return "fixed-point-found";
    case TerminalStatus::startpoint_found: return "startpoint-found";
    case TerminalStatus::endpoint_found: return "endpoint-found";
    case TerminalStatus::cycle_detected: return "cycle-detected";
    case TerminalStatus::hypothesis_violated: return "hypothesis-violated";
    case TerminalStatus::max_iter: return "max-iter";
  }
  return "?";
}

inline bool is_success(TerminalStatus s) {
  return s == TerminalStatus::fixed_point_found || s == TerminalStatus::startpoint_found ||
         s == TerminalStatus::endpoint_found;
}

/// One transition x_n -> x_{n+1}. Optional fields are only filled by the
/// solvers they apply to; every *_ok flag is a pure function of the stored
/// values (see recheck_step).
struct StepRecord {
  std::size_t n = 0;
  PointIndex point = 0;
  PointIndex next = 0;
  Rational step_distance;
  Rational step_bound;
  bool step_bound_ok = true;

  std::optional<Rational> alpha;
  bool alpha_ok = true;

  std::optional<Rational> value;              ///< f(x_n)
  std::optional<Rational> next_value;         ///< f(x_{n+1})
  std::optional<Rational> feasibility_bound;  ///< c times the step distance used by the feasibility test
  std::optional<Rational> value_bound;        ///< c^n f(x_0)
  bool value_bound_ok = true;
  bool monotone_ok = true;

  std::optional<Rational> tail_bound;     ///< c^n / (1 - c) d(x_0, x_1)
  std::optional<Rational> tail_distance;  ///< max_{m > n} d(x_n, x_m) over the realised run
  bool tail_bound_ok = true;

  bool ok() const { return step_bound_ok && alpha_ok && value_bound_ok && monotone_ok && tail_bound_ok; }
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Recomputes every flag of a step from its stored values.
inline StepRecord recheck_step(StepRecord s) {
  s.step_bound_ok = s.step_distance <= s.step_bound;
  s.alpha_ok = !s.alpha || *s.alpha >= 1;
  s.value_bound_ok = !s.next_value ||
                     ((!s.value_bound || *s.next_value <= *s.value_bound) &&
                      (!s.feasibility_bound || *s.next_value <= *s.feasibility_bound));
  s.monotone_ok = !s.next_value || !s.value || *s.next_value <= *s.value;
  s.tail_bound_ok = !s.tail_bound || !s.tail_distance || *s.tail_distance <= *s.tail_bound;
  return s;
}

struct IterationLog {
  TerminalStatus status = TerminalStatus::max_iter;
  std::vector<PointIndex> trajectory;
  std::vector<StepRecord> steps;
  std::optional<PointIndex> terminal;  ///< the point found, on success
  std::optional<PointIndex> witness;   ///< where a failing run stopped
  std::optional<Rational> initial_value;
  /// Telescoped bound d(x_n, x_m) <= sum_{i=n}^{m-1} gamma^i(d(x_0, x_1)) over
  /// every window of the trajectory (Picard only).
  bool windows_ok = true;
  std::vector<std::string> notes;

  bool all_steps_ok() const {
    return std::all_of(steps.begin(), steps.end(), [](const StepRecord& s) { return s.ok(); });
  }
  friend bool operator==(const IterationLog&, const IterationLog&) = default;
};

inline std::size_t default_max_iter(const FiniteQuasiSpace& s) { return 10 * s.size(); }

// ---------------------------------------------------------------------------
// Pairwise hypothesis checks
// ---------------------------------------------------------------------------

/// Result of an exhaustive "lhs(x,y) <= rhs(x,y) for all x, y" scan.
struct PairCheck {
  bool holds = true;
  std::size_t violations = 0;
  /// Pair with the largest lhs - rhs (the worst offender when violated,
  /// the tightest pair otherwise).
  std::optional<std::pair<PointIndex, PointIndex>> worst_pair;
  Rational worst_lhs;
  Rational worst_rhs;
  /// Whether the modulus involved satisfies its certification requirements.
  bool function_certified = true;

  Rational worst_excess() const { return worst_lhs - worst_rhs; }
};

namespace detail {
template <typename Lhs, typename Rhs>
PairCheck scan_pairs(std::size_t n, Lhs&& lhs, Rhs&& rhs) {
  PairCheck c;
  std::optional<Rational> worst;
  for (PointIndex x = 0; x < n; ++x)
    for (PointIndex y = 0; y < n; ++y) {
      Rational l = lhs(x, y);
      Rational r = rhs(x, y);
      if (l > r) {
        c.holds = false;
        ++c.violations;
      }
      Rational excess = l - r;
      if (!worst || excess > *worst) {
        worst = excess;
        c.worst_pair = {x, y};
        c.worst_lhs = std::move(l);
        c.worst_rhs = std::move(r);
      }
    }
  return c;
}
}  // namespace detail

struct AdmissibilityCheck {
  bool holds = true;
  /// Pairs (x, y) with alpha(x,y) >= 1 but alpha(Tx,Ty) < 1.
  std::vector<std::pair<PointIndex, PointIndex>> witnesses;
};

/// alpha(x,y) >= 1 implies alpha(Tx,Ty) >= 1, over every ordered pair.
inline AdmissibilityCheck check_alpha_admissible(const FiniteQuasiSpace& s, const SingleMap& t) {
  if (!t.has_alpha()) throw PreconditionError("alpha-admissibility needs an alpha table");
  AdmissibilityCheck c;
  for (PointIndex x = 0; x < s.size(); ++x)
    for (PointIndex y = 0; y < s.size(); ++y)
      if (t.alpha(x, y) >= 1 && t.alpha(t(x), t(y)) < 1) {
        c.holds = false;
        c.witnesses.emplace_back(x, y);
      }
  return c;
}

/// alpha(x,y) d(Tx,Ty) <= gamma(d(x,y)) for every ordered pair.
inline PairCheck check_alpha_gamma(const FiniteQuasiSpace& s, const SingleMap& t, const FunctionSpec& gamma,
                                   bool accept_heuristic = false) {
  if (!t.has_alpha()) throw PreconditionError("(alpha, gamma)-contraction needs an alpha table");
  const auto cert = certify_comparison(gamma);
  auto c = detail::scan_pairs(
      s.size(), [&](PointIndex x, PointIndex y) { return Rational(t.alpha(x, y) * s.d(t(x), t(y))); },
      [&](PointIndex x, PointIndex y) { return gamma(s.d(x, y)); });
  c.function_certified = cert.comparison() && (accept_heuristic || !cert.summable_is_heuristic);
  return c;
}

/// T is d-sequentially continuous. On a finite space x_n -> x in tau(d)
/// means d(x, x_n) is eventually 0, so this is: d(x,y) = 0 => d(Tx,Ty) = 0.
/// The same condition characterises d^{-1}-sequential continuity.
inline bool is_sequentially_continuous(const FiniteQuasiSpace& s, const SingleMap& t) {
  for (PointIndex x = 0; x < s.size(); ++x)
    for (PointIndex y = 0; y < s.size(); ++y)
      if (s.d(x, y) == 0 && s.d(t(x), t(y)) != 0) return false;
  return true;
}

/// tau(d) is Hausdorff. On a finite space this holds iff every pair of
/// distinct points is at positive distance in both directions.
inline bool is_hausdorff(const FiniteQuasiSpace& s) {
  for (PointIndex x = 0; x < s.size(); ++x)
    for (PointIndex y = 0; y < s.size(); ++y)
      if (x != y && s.d(x, y) == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Picard iteration
// ---------------------------------------------------------------------------

enum class PicardMode { forward, backward, symmetric };

inline const char* to_string(PicardMode m) {
  switch (m) {
    case PicardMode::forward: return "forward";
    case PicardMode::backward: return "backward";
    case PicardMode::symmetric: return "symmetric";
  }
  return "?";
}

struct PicardHypotheses {
  bool t0 = false;
  bool gamma_certified = false;
  bool admissible = false;
  bool contraction = false;
  bool seed = false;
  std::vector<std::string> failures;
  /// Informational; not needed on finite T0 spaces, where the run provably
  /// ends at an exact fixed point.
  bool sequentially_continuous = false;
  bool hausdorff = false;

  bool ok() const { return failures.empty(); }
};

/// Prechecks for a Picard run: T0, gamma a certified comparison function,
/// T alpha-admissible, the (alpha, gamma) inequality, and the seed condition
/// alpha(x0, Tx0) >= 1 (forward), alpha(Tx0, x0) >= 1 (backward) or both
/// (symmetric).
inline PicardHypotheses check_picard_hypotheses(const FiniteQuasiSpace& s, const SingleMap& t,
                                                const FunctionSpec& gamma, PointIndex x0, PicardMode mode,
                                                bool accept_heuristic = false) {
  if (x0 >= s.size()) throw InputError("seed point outside the space");
  PicardHypotheses h;
  h.t0 = s.is_t0();
  const auto contraction = check_alpha_gamma(s, t, gamma, accept_heuristic);
  h.gamma_certified = contraction.function_certified;
  h.admissible = check_alpha_admissible(s, t).holds;
  h.contraction = contraction.holds;
  const bool fwd = t.alpha(x0, t(x0)) >= 1;
  const bool bwd = t.alpha(t(x0), x0) >= 1;
  h.seed = mode == PicardMode::forward ? fwd : mode == PicardMode::backward ? bwd : fwd && bwd;
  h.sequentially_continuous = is_sequentially_continuous(s, t);
  h.hausdorff = is_hausdorff(s);
  if (!h.t0) h.failures.emplace_back("space is not T0");
  if (!h.gamma_certified) h.failures.emplace_back("gamma is not a certified comparison function");
  if (!h.admissible) h.failures.emplace_back("T is not alpha-admissible");
  if (!h.contraction) h.failures.emplace_back("T is not an (alpha, gamma)-contraction");
  if (!h.seed) h.failures.emplace_back("seed condition on alpha fails at x0");
  return h;
}

struct PicardOptions {
  PicardMode mode = PicardMode::forward;
  std::optional<std::size_t> max_iter;
  bool check_hypotheses = true;
  bool accept_heuristic_gamma = false;
};

namespace detail {

/// Forward Picard run in the geometry `dist`, with alpha read through
/// `alpha_along` (the value that must stay >= 1 on each step).
template <typename Dist, typename Alpha>
IterationLog picard_core(std::size_t n_points, const SingleMap& t, const FunctionSpec& gamma, PointIndex x0,
                         std::size_t max_iter, Dist&& dist, Alpha&& alpha_along) {
  IterationLog log;
  log.trajectory.push_back(x0);
  std::set<PointIndex> visited{x0};
  const Rational d0 = dist(x0, t(x0));
  bool finished = false;
  for (std::size_t n = 0; n < max_iter; ++n) {
    const PointIndex x = log.trajectory.back();
    const PointIndex y = t(x);
    if (y == x) {
      log.status = TerminalStatus::fixed_point_found;
      log.terminal = x;
      finished = true;
      break;
    }
    StepRecord step;
    step.n = n;
    step.point = x;
    step.next = y;
    step.step_distance = dist(x, y);
    step.step_bound = gamma.iterate(d0, n);
    step.alpha = alpha_along(x, y);
    step = recheck_step(std::move(step));
    const bool ok = step.ok();
    log.steps.push_back(std::move(step));
    if (!ok) {
      log.status = TerminalStatus::hypothesis_violated;
      log.witness = x;
      log.notes.emplace_back("step " + std::to_string(n) + " breaks a logged bound");
      finished = true;
      break;
    }
    if (visited.count(y)) {
      log.status = TerminalStatus::cycle_detected;
      log.witness = y;
      log.trajectory.push_back(y);
      finished = true;
      break;
    }
    visited.insert(y);
    log.trajectory.push_back(y);
  }
  if (!finished) {
    log.status = TerminalStatus::max_iter;
    log.witness = log.trajectory.back();
  }

  // Telescoped window bound over the realised trajectory.
  const auto& tr = log.trajectory;
  std::vector<Rational> iterates;
  for (std::size_t i = 0; i < tr.size(); ++i) iterates.push_back(gamma.iterate(d0, i));
  for (std::size_t a = 0; a < tr.size(); ++a) {
    Rational budget = 0;
    for (std::size_t b = a + 1; b < tr.size(); ++b) {
      budget += iterates[b - 1];
      if (dist(tr[a], tr[b]) > budget) log.windows_ok = false;
    }
  }
  (void)n_points;
  return log;
}

}  // namespace detail

/// Picard iteration x_{n+1} = T x_n.
///
/// forward: geometry d, alpha(x_n, x_{n+1}) >= 1 along the run.
/// backward: run forward on the conjugate space with alpha transposed, so
///   the logged distances are d(x_{n+1}, x_n).
/// symmetric: geometry d^s; alpha must be >= 1 in both orientations.
inline IterationLog picard_solve(const FiniteQuasiSpace& s, const SingleMap& t, const FunctionSpec& gamma,
                                 PointIndex x0, const PicardOptions& opt = {}) {
  if (x0 >= s.size()) throw InputError("seed point outside the space");
  const std::size_t max_iter = opt.max_iter.value_or(default_max_iter(s));
  if (opt.check_hypotheses) {
    auto h = check_picard_hypotheses(s, t, gamma, x0, opt.mode, opt.accept_heuristic_gamma);
    if (!h.ok()) {
      IterationLog log;
      log.status = TerminalStatus::hypothesis_violated;
      log.trajectory.push_back(x0);
      log.witness = x0;
      log.notes = h.failures;
      return log;
    }
  }

  IterationLog log;
  switch (opt.mode) {
    case PicardMode::forward:
      log = detail::picard_core(
          s.size(), t, gamma, x0, max_iter, [&](PointIndex a, PointIndex b) { return s.d(a, b); },
          [&](PointIndex a, PointIndex b) { return t.alpha(a, b); });
      break;
    case PicardMode::backward: {
      const auto conj = conjugate(s);
      const SingleMap flipped = t.with_alpha(t.alpha().transposed());
      log = detail::picard_core(
          s.size(), flipped, gamma, x0, max_iter, [&](PointIndex a, PointIndex b) { return conj.d(a, b); },
          [&](PointIndex a, PointIndex b) { return flipped.alpha(a, b); });
      break;
    }
    case PicardMode::symmetric:
      log = detail::picard_core(
          s.size(), t, gamma, x0, max_iter, [&](PointIndex a, PointIndex b) { return s.d_sym(a, b); },
          [&](PointIndex a, PointIndex b) { return std::min(t.alpha(a, b), t.alpha(b, a)); });
      break;
  }
  log.notes.emplace_back(
      "subsequence hypothesis for the alpha-regular variant is not checkable on traces; recorded as unverified");
  if (log.status == TerminalStatus::fixed_point_found && t(*log.terminal) != *log.terminal)
    throw std::logic_error("picard_solve: terminal point is not fixed");
  if (log.status == TerminalStatus::fixed_point_found && !log.windows_ok)
    log.notes.emplace_back("telescoped window bound violated");
  return log;
}

// ---------------------------------------------------------------------------
// psi-contractions of set-valued maps
// ---------------------------------------------------------------------------

/// H(Fx, Fy) <= psi(d(x,y)) for every ordered pair. `function_certified`
/// reports whether psi is usc, below the identity and has a positive
/// asymptotic gap.
inline PairCheck check_psi_contraction(const FiniteQuasiSpace& s, const SetValuedMap& f, const FunctionSpec& psi) {
  auto c = detail::scan_pairs(
      s.size(), [&](PointIndex x, PointIndex y) { return hausdorff_value(s, f(x), f(y)); },
      [&](PointIndex x, PointIndex y) { return psi(s.d(x, y)); });
  c.function_certified = certify_comparison(psi).contraction_modulus();
  return c;
}

struct LevelBound {
  std::size_t n = 0;
  /// max over x, y in C_n of d(x,y) - psi(d(x,y)); absent when C_n is empty.
  std::optional<Rational> gap;
  Rational bound;  ///< 2/n
  bool ok = true;
};

struct EquivalenceReport {
  PairCheck contraction;
  bool images_in_cb = false;
  bool precondition = false;
  ApproxValue mix;
  LevelSets levels;
  PointSet start_and_end;  ///< points that are both startpoint and endpoint
  std::optional<PointIndex> unique_point;
  bool fixed_point_verified = false;
  std::vector<LevelBound> level_bounds;
  /// Disagreements between the two directions of the equivalence; any entry
  /// is a toolkit bug.
  std::vector<std::string> bugs;

  bool consistent() const { return bugs.empty(); }
};

/// Checks "a unique point is both startpoint and endpoint iff the
/// approximate mix-point property holds" on one instance, plus the level-set
/// gap bound d(x,y) - psi(d(x,y)) <= 2/n on C_n.
inline EquivalenceReport theorem29_equivalence(const FiniteQuasiSpace& s, const SetValuedMap& f,
                                               const FunctionSpec& psi, std::size_t n_max = 8) {
  EquivalenceReport r;
  r.contraction = check_psi_contraction(s, f, psi);
  r.images_in_cb = std::all_of(f.images().begin(), f.images().end(),
                               [&](const PointSet& a) { return cb_membership(s, a); });
  r.precondition = r.contraction.holds && r.contraction.function_certified && r.images_in_cb && s.is_t0();
  r.mix = approx_value(s, f, ApproxKind::mix);
  r.levels = level_sets(s, f, n_max);

  std::vector<PointIndex> both;
  for (PointIndex x = 0; x < s.size(); ++x) {
    auto c = classify_point(s, f, x);
    if (c.startpoint && c.endpoint) both.push_back(x);
  }
  r.start_and_end = PointSet(std::move(both));

  for (std::size_t n = 1; n <= n_max; ++n) {
    LevelBound lb;
    lb.n = n;
    lb.bound = Rational(2, n);
    const auto& level = r.levels.levels[n - 1];
    for (auto x : level)
      for (auto y : level) {
        Rational gap = s.d(x, y) - psi(s.d(x, y));
        if (!lb.gap || gap > *lb.gap) lb.gap = gap;
      }
    lb.ok = !lb.gap || *lb.gap <= lb.bound;
    r.level_bounds.push_back(std::move(lb));
  }
  if (!r.precondition) return r;

  for (const auto& lb : r.level_bounds)
    if (!lb.ok) r.bugs.push_back("level-set gap bound fails at n = " + std::to_string(lb.n));
  if (r.levels.core != r.start_and_end) r.bugs.emplace_back("core of the level sets differs from start-and-end points");
  if (r.mix.value == 0) {
    if (r.start_and_end.size() != 1) {
      r.bugs.push_back("mix value is 0 but " + std::to_string(r.start_and_end.size()) +
                       " points are both startpoint and endpoint");
    } else {
      r.unique_point = r.start_and_end.front();
      r.fixed_point_verified = f(*r.unique_point).contains(*r.unique_point);
      if (!r.fixed_point_verified) r.bugs.emplace_back("start-and-end point is not a fixed point");
    }
  } else if (!r.start_and_end.empty()) {
    r.bugs.emplace_back("mix value is positive but a start-and-end point exists");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Single-valued maps with a psi-contraction
// ---------------------------------------------------------------------------

struct SingleMapAudit {
  PairCheck contraction;  ///< d(fx, fy) <= psi(d(x,y))
  ApproxValue start;      ///< min d(x, fx)
  ApproxValue end;        ///< min d(fx, x)
  std::vector<PointIndex> fixed_points;
  bool hypotheses_hold = false;
  /// Approximate start and end properties plus an exhibited fixed point.
  bool conclusion_holds = false;
};

inline SingleMapAudit single_map_approx_audit(const FiniteQuasiSpace& s, const SingleMap& f, const FunctionSpec& psi) {
  SingleMapAudit a;
  a.contraction = detail::scan_pairs(
      s.size(), [&](PointIndex x, PointIndex y) { return s.d(f(x), f(y)); },
      [&](PointIndex x, PointIndex y) { return psi(s.d(x, y)); });
  a.contraction.function_certified = certify_comparison(psi).contraction_modulus();
  a.start = approx_value_single(s, f, ExcessSide::start);
  a.end = approx_value_single(s, f, ExcessSide::end);
  for (PointIndex x = 0; x < s.size(); ++x)
    if (f(x) == x) a.fixed_points.push_back(x);
  a.hypotheses_hold = a.contraction.holds && a.contraction.function_certified && s.is_t0();
  a.conclusion_holds = a.start.value == 0 && a.end.value == 0 && !a.fixed_points.empty();
  return a;
}

// ---------------------------------------------------------------------------
// Greedy startpoint / endpoint / fixed-point descent
// ---------------------------------------------------------------------------

enum class GreedyTarget { startpoint, endpoint, fixed };

inline const char* to_string(GreedyTarget t) {
  switch (t) {
    case GreedyTarget::startpoint: return "startpoint";
    case GreedyTarget::endpoint: return "endpoint";
    case GreedyTarget::fixed: return "fixed";
  }
  return "?";
}

struct GreedyOptions {
  std::optional<std::size_t> max_iter;
  /// For the fixed-point variant: read the feasibility radius literally as
  /// c d(y, x) instead of c min{d(x, y), d(y, x)}.
  bool strict_cor38 = false;
};

namespace detail {

/// Geometry of one greedy variant on a given space.
struct GreedyRule {
  std::function<Rational(PointIndex)> value;                   // f(x)
  std::function<Rational(PointIndex, PointIndex)> radius;      // feasibility radius from x to y
  std::function<Rational(PointIndex, PointIndex)> step;        // distance used by the bounds
};

inline GreedyRule start_rule(const FiniteQuasiSpace& s, const SetValuedMap& f) {
  return {[&s, &f](PointIndex x) { return start_value(s, f, x); },
          [&s](PointIndex x, PointIndex y) { return s.d(x, y); },
          [&s](PointIndex x, PointIndex y) { return s.d(x, y); }};
}

inline GreedyRule fixed_rule(const FiniteQuasiSpace& s, const SetValuedMap& f, bool strict) {
  std::function<Rational(PointIndex, PointIndex)> radius;
  if (strict)
    radius = [&s](PointIndex x, PointIndex y) { return s.d(y, x); };
  else
    radius = [&s](PointIndex x, PointIndex y) { return std::min(s.d(x, y), s.d(y, x)); };
  return {[&s, &f](PointIndex x) { return mix_value(s, f, x); }, std::move(radius),
          [&s](PointIndex x, PointIndex y) { return s.d_sym(x, y); }};
}

inline void check_c(const Rational& c) {
  if (c <= 0 || c >= 1) throw PreconditionError("contraction constant c must lie strictly between 0 and 1");
}

inline std::vector<PointIndex> feasible_successors(const SetValuedMap& f, const Rational& c, const GreedyRule& rule,
                                                   PointIndex x) {
  std::vector<PointIndex> out;
  for (auto y : f(x))
    if (rule.value(y) <= c * rule.radius(x, y)) out.push_back(y);
  return out;
}

inline IterationLog greedy_core(std::size_t n_points, const SetValuedMap& f, const Rational& c, PointIndex x0,
                                std::size_t max_iter, const GreedyRule& rule, TerminalStatus success) {
  if (x0 >= n_points) throw InputError("seed point outside the space");
  IterationLog log;
  log.trajectory.push_back(x0);
  log.initial_value = rule.value(x0);
  std::set<PointIndex> visited{x0};
  std::optional<Rational> d01;
  bool finished = false;
  for (std::size_t n = 0; n < max_iter; ++n) {
    const PointIndex x = log.trajectory.back();
    const Rational fx = rule.value(x);
    if (fx == 0) {
      log.status = success;
      log.terminal = x;
      finished = true;
      break;
    }
    const auto feasible = feasible_successors(f, c, rule, x);
    if (feasible.empty()) {
      log.status = TerminalStatus::hypothesis_violated;
      log.witness = x;
      log.notes.push_back("no feasible successor at step " + std::to_string(n));
      finished = true;
      break;
    }
    PointIndex y = feasible.front();
    Rational fy = rule.value(y);
    for (auto cand : feasible) {
      Rational v = rule.value(cand);
      if (v < fy) {
        fy = std::move(v);
        y = cand;
      }
    }
    if (!d01) d01 = rule.step(x0, y);
    const Rational cn = power(c, n);

    StepRecord step;
    step.n = n;
    step.point = x;
    step.next = y;
    step.step_distance = rule.step(x, y);
    step.step_bound = cn * *d01;
    step.value = fx;
    step.next_value = fy;
    step.feasibility_bound = c * rule.radius(x, y);
    step.value_bound = cn * *log.initial_value;
    step.tail_bound = cn / (1 - c) * *d01;
    step = recheck_step(std::move(step));
    const bool ok = step.ok();
    log.steps.push_back(std::move(step));
    if (!ok) {
      log.status = TerminalStatus::hypothesis_violated;
      log.witness = x;
      log.notes.push_back("step " + std::to_string(n) + " breaks a logged bound");
      finished = true;
      break;
    }
    if (visited.count(y)) {
      log.status = TerminalStatus::cycle_detected;
      log.witness = y;
      log.trajectory.push_back(y);
      finished = true;
      break;
    }
    visited.insert(y);
    log.trajectory.push_back(y);
  }
  if (!finished && rule.value(log.trajectory.back()) == 0) {
    log.status = success;
    log.terminal = log.trajectory.back();
  } else if (!finished) {
    log.status = TerminalStatus::max_iter;
    log.witness = log.trajectory.back();
  }

  // Realised tail distances against c^n / (1 - c) d(x_0, x_1).
  for (std::size_t i = 0; i < log.steps.size(); ++i) {
    Rational far = 0;
    for (std::size_t m = i + 1; m < log.trajectory.size(); ++m)
      far = std::max(far, rule.step(log.trajectory[i], log.trajectory[m]));
    log.steps[i].tail_distance = far;
    log.steps[i] = recheck_step(std::move(log.steps[i]));
  }
  if (is_success(log.status) && !log.all_steps_ok()) {
    log.status = TerminalStatus::hypothesis_violated;
    log.witness = log.terminal;
    log.terminal.reset();
    log.notes.emplace_back("tail bound violated");
  }
  return log;
}

}  // namespace detail

/// Greedy startpoint iteration for F with constant c in (0, 1).
inline IterationLog startpoint_solve(const FiniteQuasiSpace& s, const SetValuedMap& f, const Rational& c,
                                     PointIndex x0, const GreedyOptions& opt = {}) {
  detail::check_c(c);
  auto log = detail::greedy_core(s.size(), f, c, x0, opt.max_iter.value_or(default_max_iter(s)),
                                 detail::start_rule(s, f), TerminalStatus::startpoint_found);
  if (log.status == TerminalStatus::startpoint_found && !classify_point(s, f, *log.terminal).startpoint)
    throw std::logic_error("startpoint_solve: terminal point is not a startpoint");
  return log;
}

/// Endpoint iteration: the startpoint iteration on the conjugate space.
/// H(Fy, {y}) <= c d(y, x) there reads as the startpoint condition for d^{-1}.
inline IterationLog endpoint_solve(const FiniteQuasiSpace& s, const SetValuedMap& f, const Rational& c,
                                   PointIndex x0, const GreedyOptions& opt = {}) {
  detail::check_c(c);
  const auto conj = conjugate(s);
  auto log = detail::greedy_core(s.size(), f, c, x0, opt.max_iter.value_or(default_max_iter(s)),
                                 detail::start_rule(conj, f), TerminalStatus::endpoint_found);
  if (log.status == TerminalStatus::endpoint_found && !classify_point(s, f, *log.terminal).endpoint)
    throw std::logic_error("endpoint_solve: terminal point is not an endpoint");
  return log;
}

/// Fixed-point iteration driven by H^s({y}, Fy) <= c min{d(x,y), d(y,x)},
/// stepping in d^s. Needs a T0 space: H^s({x*}, Fx*) = 0 then forces
/// Fx* = {x*}.
inline IterationLog fixed_solve_sym(const FiniteQuasiSpace& s, const SetValuedMap& f, const Rational& c, PointIndex x0,
                                    const GreedyOptions& opt = {}) {
  detail::check_c(c);
  if (!s.is_t0()) throw PreconditionError("fixed_solve_sym needs a T0 space");
  auto log = detail::greedy_core(s.size(), f, c, x0, opt.max_iter.value_or(default_max_iter(s)),
                                 detail::fixed_rule(s, f, opt.strict_cor38), TerminalStatus::fixed_point_found);
  if (opt.strict_cor38) log.notes.emplace_back("feasibility radius read literally as c d(y, x)");
  if (log.status == TerminalStatus::fixed_point_found) {
    const auto cls = classify_point(s, f, *log.terminal);
    if (!(cls.fixed && cls.startpoint && cls.endpoint))
      throw std::logic_error("fixed_solve_sym: terminal point is not a fixed point");
  }
  return log;
}

struct PointAudit {
  PointIndex point = 0;
  Rational value;                     ///< f(x)
  std::vector<PointIndex> feasible;  ///< y in Fx meeting the feasibility test
};

struct GreedyAudit {
  std::vector<PointAudit> points;
  std::vector<PointIndex> infeasible;  ///< points with no feasible successor
  /// Every point has a feasible successor: the hypothesis as stated.
  bool universal = false;
  /// Infeasible points all have f = 0, so the termination-first rule never
  /// asks them for a successor.
  bool only_at_zero_value = false;
};

/// Per-point check of the "for every x there is a feasible y in Fx"
/// hypothesis of the greedy iterations.
inline GreedyAudit audit_greedy_hypothesis(const FiniteQuasiSpace& s, const SetValuedMap& f, const Rational& c,
                                           GreedyTarget target, bool strict_cor38 = false) {
  detail::check_c(c);
  const auto conj = conjugate(s);
  const detail::GreedyRule rule = target == GreedyTarget::startpoint ? detail::start_rule(s, f)
                                  : target == GreedyTarget::endpoint ? detail::start_rule(conj, f)
                                                                     : detail::fixed_rule(s, f, strict_cor38);
  GreedyAudit a;
  a.only_at_zero_value = true;
  for (PointIndex x = 0; x < s.size(); ++x) {
    PointAudit p{x, rule.value(x), detail::feasible_successors(f, c, rule, x)};
    if (p.feasible.empty()) {
      a.infeasible.push_back(x);
      if (p.value != 0) a.only_at_zero_value = false;
    }
    a.points.push_back(std::move(p));
  }
  a.universal = a.infeasible.empty();
  return a;
}

}  // namespace qpm
