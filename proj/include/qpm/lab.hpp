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

/// @file lab.hpp
/// Seeded random instances, the golden corpus, and hypothesis => conclusion
/// suites with counterexample shrinking.
///
/// A suite trial draws instances from its own RNG (seeded from the suite
/// seed and the trial index) until one satisfies the suite's hypotheses,
/// which are always checked exhaustively. The conclusion is then asserted; a
/// failing instance is shrunk and kept verbatim in the report.

#include "qpm/sequences.hpp"
#include "qpm/solvers.hpp"

#include <chrono>
#include <map>
#include <random>
#include <sstream>

namespace qpm {

struct LabInstance {
  explicit LabInstance(FiniteQuasiSpace s) : space(std::move(s)) {}

  FiniteQuasiSpace space;
  std::optional<SetValuedMap> set_map;
  std::optional<SingleMap> point_map;
  std::optional<FunctionSpec> gamma;
  std::optional<FunctionSpec> psi;
  std::optional<Rational> c;
  std::optional<PicardMode> mode;
  std::optional<PointIndex> seed_point;
  std::optional<PointIndex> candidate;
  std::optional<SequenceTrace> trace;
  bool require_t0 = true;
  std::string provenance;
};

using LabRng = std::mt19937_64;

namespace detail {

inline std::size_t pick(LabRng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool chance(LabRng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }
template <typename T>
const T& choose(LabRng& rng, const std::vector<T>& items) {
  return items[pick(rng, items.size())];
}

/// Adds delta * [i > j]: a T0 quasi-pseudometric, so the sum stays valid and
/// becomes T0.
inline RationalMatrix add_order_quasi_metric(RationalMatrix d, const Rational& delta) {
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < i; ++j) d(i, j) += delta;
  return d;
}

}  // namespace detail

/// Random valid space: entries k/q with q in {1, 2, 4} and k/q <= scale,
/// about a quarter of them zero, repaired by min-plus closure. With `t0`
/// set, a non-T0 result is separated by adding 1/2 [i > j].
inline FiniteQuasiSpace gen_space(LabRng& rng, std::size_t n, unsigned scale, bool t0) {
  if (n < 1) throw PreconditionError("gen_space needs n >= 1");
  if (scale < 1) scale = 1;
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || detail::chance(rng, 0.25)) continue;
      const unsigned den = std::vector<unsigned>{1, 2, 4}[detail::pick(rng, 3)];
      const std::size_t num = 1 + detail::pick(rng, scale * den);
      m(i, j) = Rational(num, den);
    }
  m = triangle_closure(std::move(m));
  auto space = FiniteQuasiSpace::trusted(FiniteQuasiSpace::numeric_labels(n), m);
  if (t0 && !space.is_t0())
    space = FiniteQuasiSpace::trusted(space.labels(), detail::add_order_quasi_metric(m, Rational(1, 2)));
  return space;
}

inline FiniteQuasiSpace gen_space(std::uint64_t seed, std::size_t n, unsigned scale, bool t0) {
  LabRng rng(seed);
  return gen_space(rng, n, scale, t0);
}

// ---------------------------------------------------------------------------
// Golden corpus
// ---------------------------------------------------------------------------

/// Labels "1", "1/2", ..., "1/n" with d(1/i, 1/j) = max{1/i - 1/j, 0}.
inline FiniteQuasiSpace reciprocal_space(std::size_t n) {
  std::vector<std::string> labels;
  RationalMatrix m(n);
  for (std::size_t i = 1; i <= n; ++i) {
    labels.push_back(i == 1 ? std::string("1") : "1/" + std::to_string(i));
    for (std::size_t j = i + 1; j <= n; ++j) m(i - 1, j - 1) = Rational(j - i, i * j);
  }
  return FiniteQuasiSpace::trusted(std::move(labels), std::move(m));
}

inline const std::vector<std::string>& corpus_ids() {
  static const std::vector<std::string> ids{"remark21", "example27", "example28", "example36", "example36-family"};
  return ids;
}

/// Golden instances. `n` sizes the truncated family members (example28: N
/// points, example36-family: X_n); both need n >= 2 so that X \ {a} is
/// nonempty.
inline LabInstance corpus(std::string_view id, std::optional<std::size_t> n = std::nullopt) {
  auto build = [&](FiniteQuasiSpace s, SetValuedMap f, std::string prov) {
    LabInstance inst{std::move(s)};
    inst.set_map = std::move(f);
    inst.provenance = std::move(prov);
    return inst;
  };
  if (id == "remark21") {
    RationalMatrix m(2);
    m(1, 0) = 1;
    auto s = FiniteQuasiSpace::make({"0", "1"}, m);
    auto f = SetValuedMap::constant(s, s.all_points());
    return build(std::move(s), std::move(f), "corpus:remark21");
  }
  if (id == "example27") {
    RationalMatrix m(3);
    m(1, 0) = m(1, 2) = 1;
    m(2, 0) = m(2, 1) = 2;
    auto s = FiniteQuasiSpace::make({"0", "1", "2"}, m);
    auto f = SetValuedMap::complement_map(s);
    return build(std::move(s), std::move(f), "corpus:example27");
  }
  if (id == "example36") {
    auto s = reciprocal_space(3);
    auto f = SetValuedMap::complement_map(s);
    auto inst = build(std::move(s), std::move(f), "corpus:example36");
    inst.c = Rational(1, 2);
    return inst;
  }
  if (id == "example28" || id == "example36-family") {
    if (!n) throw InputError(std::string(id) + " needs a size parameter");
    if (*n < 1) throw InputError(std::string(id) + " needs a size >= 1");
    if (*n < 2) throw InputError(std::string(id) + " with one point has an empty image X \\ {a}");
    auto s = reciprocal_space(*n);
    auto f = SetValuedMap::complement_map(s);
    auto inst = build(std::move(s), std::move(f), "corpus:" + std::string(id) + "(" + std::to_string(*n) + ")");
    if (id == "example36-family") inst.c = Rational(1, 2);
    return inst;
  }
  throw InputError("unknown corpus id \"" + std::string(id) + "\"");
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SizeBounds {
  std::size_t min_points = 1;
  std::size_t max_points = 6;
};

struct CaseOutcome {
  bool hypotheses = false;
  std::string bin;
  std::optional<std::string> failure;
};

using Assertion = std::function<std::optional<std::string>(const LabInstance&)>;

struct Counterexample {
  LabInstance instance;
  std::string message;
  std::size_t trial = 0;
};

struct SuiteReport {
  std::string suite_id;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  SizeBounds bounds;
  std::size_t attempts = 0;         ///< instances generated, including rejected ones
  std::size_t hypotheses_met = 0;   ///< trials that found an instance satisfying the hypotheses
  std::size_t unfilled = 0;         ///< trials that gave up before finding one
  std::size_t passes = 0;
  std::map<std::string, std::size_t> bins;
  std::vector<Counterexample> counterexamples;
  double wall_time_ms = 0;

  bool ok() const { return counterexamples.empty(); }
};

namespace detail {

inline SetValuedMap random_set_map(LabRng& rng, const FiniteQuasiSpace& s, std::size_t max_image) {
  std::vector<PointSet> imgs;
  for (PointIndex x = 0; x < s.size(); ++x) {
    const std::size_t k = 1 + pick(rng, std::min(max_image, s.size()));
    std::vector<PointIndex> pts;
    for (std::size_t i = 0; i < k; ++i) pts.push_back(pick(rng, s.size()));
    imgs.emplace_back(std::move(pts));
  }
  return SetValuedMap(s, std::move(imgs));
}

/// Maps tending to satisfy H(Fx, Fy) <= k d(x,y): a constant image, a
/// two-image partition, singletons of a small-range map, or free images.
inline SetValuedMap contraction_candidate_map(LabRng& rng, const FiniteQuasiSpace& s) {
  auto random_subset = [&]() {
    std::vector<PointIndex> pts{pick(rng, s.size())};
    if (chance(rng, 0.4)) pts.push_back(pick(rng, s.size()));
    return PointSet(std::move(pts));
  };
  switch (pick(rng, 4)) {
    case 0: return SetValuedMap::constant(s, random_subset());
    case 1: {
      const PointSet a = random_subset(), b = random_subset();
      std::vector<PointSet> imgs;
      for (PointIndex x = 0; x < s.size(); ++x) imgs.push_back(chance(rng, 0.5) ? a : b);
      return SetValuedMap(s, std::move(imgs));
    }
    case 2: {
      const PointIndex p = pick(rng, s.size()), q = pick(rng, s.size());
      std::vector<PointSet> imgs;
      for (PointIndex x = 0; x < s.size(); ++x) imgs.push_back(PointSet{chance(rng, 0.6) ? p : q});
      return SetValuedMap(s, std::move(imgs));
    }
    default: return random_set_map(rng, s, 2);
  }
}

/// Maps with a sink p (Fp = {p}) that most images contain; such maps often
/// satisfy the greedy feasibility hypotheses.
inline SetValuedMap sink_map(LabRng& rng, const FiniteQuasiSpace& s) {
  if (chance(rng, 0.3)) return random_set_map(rng, s, 3);
  const PointIndex p = pick(rng, s.size());
  std::vector<PointSet> imgs;
  for (PointIndex x = 0; x < s.size(); ++x) {
    if (x == p) {
      imgs.push_back(PointSet{p});
      continue;
    }
    std::vector<PointIndex> pts{pick(rng, s.size())};
    if (chance(rng, 0.7)) pts.push_back(p);
    imgs.emplace_back(std::move(pts));
  }
  return SetValuedMap(s, std::move(imgs));
}

inline std::vector<PointIndex> small_range_targets(LabRng& rng, std::size_t n) {
  const std::size_t range = 1 + pick(rng, std::min<std::size_t>(n, 3));
  std::vector<PointIndex> image;
  for (std::size_t i = 0; i < range; ++i) image.push_back(pick(rng, n));
  std::vector<PointIndex> t(n);
  for (auto& v : t) v = choose(rng, image);
  return t;
}

inline SequenceTrace random_trace(LabRng& rng, const FiniteQuasiSpace& s, const std::vector<PointIndex>& pool) {
  const std::size_t len = 1 + pick(rng, 8);
  std::vector<PointIndex> pts;
  for (std::size_t i = 0; i < len; ++i) pts.push_back(choose(rng, pool));
  (void)s;
  if (chance(rng, 0.5)) return SequenceTrace::periodic(std::move(pts), pick(rng, len));
  return SequenceTrace::finite(std::move(pts));
}

inline const std::vector<Rational>& c_choices() {
  static const std::vector<Rational> v{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  return v;
}

inline std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

struct SuiteDef {
  std::function<LabInstance(LabRng&, const SizeBounds&)> generate;
  std::function<CaseOutcome(const LabInstance&)> evaluate;
};

inline std::size_t draw_size(LabRng& rng, const SizeBounds& b) {
  return b.min_points + pick(rng, b.max_points - b.min_points + 1);
}

// --- Picard ---------------------------------------------------------------

inline LabInstance gen_picard(LabRng& rng, const SizeBounds& b) {
  const std::size_t n = draw_size(rng, b);
  LabInstance inst{gen_space(rng, n, 4, true)};
  const auto& s = inst.space;
  const auto targets = small_range_targets(rng, n);
  const Rational c = choose(rng, std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(2, 3),
                                                       Rational(3, 4), Rational(9, 10)});
  auto gamma = FunctionSpec::linear(c);
  RationalMatrix alpha(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) {
        alpha(x, y) = 1;
        continue;
      }
      const bool contractive = s.d(targets[x], targets[y]) <= gamma(s.d(x, y));
      if (chance(rng, contractive ? 0.6 : 0.05))
        alpha(x, y) = 1;
      else
        alpha(x, y) = chance(rng, 0.3) ? Rational(1, 2) : Rational(0);
    }
  inst.point_map = SingleMap(s, targets, alpha);
  inst.gamma = gamma;
  inst.mode = std::vector<PicardMode>{PicardMode::forward, PicardMode::backward, PicardMode::symmetric}[pick(rng, 3)];
  std::vector<PointIndex> seeds, moving;
  for (PointIndex x = 0; x < n; ++x) {
    const bool fwd = alpha(x, targets[x]) >= 1, bwd = alpha(targets[x], x) >= 1;
    const bool ok = *inst.mode == PicardMode::forward ? fwd : *inst.mode == PicardMode::backward ? bwd : fwd && bwd;
    if (!ok) continue;
    seeds.push_back(x);
    if (targets[x] != x) moving.push_back(x);
  }
  inst.seed_point = !moving.empty() ? choose(rng, moving) : !seeds.empty() ? choose(rng, seeds) : pick(rng, n);
  return inst;
}

inline CaseOutcome eval_picard(const LabInstance& inst) {
  CaseOutcome out;
  const auto& s = inst.space;
  const auto h = check_picard_hypotheses(s, *inst.point_map, *inst.gamma, *inst.seed_point, *inst.mode);
  out.hypotheses = h.ok();
  if (!out.hypotheses) return out;
  PicardOptions opt;
  opt.mode = *inst.mode;
  const auto log = picard_solve(s, *inst.point_map, *inst.gamma, *inst.seed_point, opt);
  out.bin = log.steps.empty() ? "seed-fixed" : "moved";
  std::vector<std::string> issues;
  if (log.status != TerminalStatus::fixed_point_found)
    issues.push_back(std::string("run ended with ") + to_string(log.status));
  for (const auto& st : log.steps) {
    if (!st.step_bound_ok) issues.push_back("step bound fails at n = " + std::to_string(st.n));
    if (!st.alpha_ok) issues.push_back("alpha propagation fails at n = " + std::to_string(st.n));
  }
  if (!log.windows_ok) issues.emplace_back("telescoped window bound fails");
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- psi-contractions of set-valued maps -----------------------------------

inline FunctionSpec random_linear_psi(LabRng& rng) {
  return FunctionSpec::linear(choose(rng, std::vector<Rational>{0, Rational(1, 4), Rational(1, 2), Rational(3, 4)}));
}

inline FunctionSpec random_table_psi(LabRng& rng) {
  const Rational a = choose(rng, std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(3, 4)});
  const Rational slope = choose(rng, std::vector<Rational>{Rational(1, 2), Rational(3, 4), Rational(1)});
  return FunctionSpec::table({{0, 0}, {1, a}, {2, a + slope}});
}

inline LabInstance gen_equivalence(LabRng& rng, const SizeBounds& b, bool linear_only) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 4, true)};
  inst.set_map = contraction_candidate_map(rng, inst.space);
  inst.psi = linear_only || chance(rng, 0.5) ? random_linear_psi(rng) : random_table_psi(rng);
  return inst;
}

inline CaseOutcome eval_equivalence(const LabInstance& inst) {
  CaseOutcome out;
  const auto r = theorem29_equivalence(inst.space, *inst.set_map, *inst.psi);
  out.hypotheses = r.precondition;
  out.bin = r.mix.value == 0 ? "mix-zero" : "mix-positive";
  if (out.hypotheses && !r.consistent()) out.failure = join(r.bugs);
  return out;
}

inline CaseOutcome eval_fixed_from_mix(const LabInstance& inst) {
  CaseOutcome out;
  const auto r = theorem29_equivalence(inst.space, *inst.set_map, *inst.psi);
  out.hypotheses = r.precondition && r.mix.value == 0;
  out.bin = "mix-zero";
  if (!out.hypotheses) return out;
  bool found = false;
  for (PointIndex x = 0; x < inst.space.size(); ++x) found = found || (*inst.set_map)(x).contains(x);
  if (!found) out.failure = "approximate mix-point property holds but F has no fixed point";
  return out;
}

// --- single-valued maps -----------------------------------------------------

inline LabInstance gen_single(LabRng& rng, const SizeBounds& b) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 4, true)};
  inst.point_map = SingleMap(inst.space, small_range_targets(rng, inst.space.size()));
  inst.psi = random_linear_psi(rng);
  return inst;
}

inline CaseOutcome eval_single(const LabInstance& inst) {
  CaseOutcome out;
  const auto a = single_map_approx_audit(inst.space, *inst.point_map, *inst.psi);
  out.hypotheses = a.hypotheses_hold;
  out.bin = a.fixed_points.size() == 1 ? "one-fixed-point" : "several-fixed-points";
  if (!out.hypotheses) return out;
  std::vector<std::string> issues;
  if (a.start.value != 0) issues.push_back("approximate startpoint value " + to_string(a.start.value));
  if (a.end.value != 0) issues.push_back("approximate endpoint value " + to_string(a.end.value));
  if (a.fixed_points.empty()) issues.emplace_back("no fixed point");
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- greedy iterations --------------------------------------------------------

inline LabInstance gen_greedy(LabRng& rng, const SizeBounds& b, bool t0) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 4, t0 || chance(rng, 0.5))};
  inst.set_map = sink_map(rng, inst.space);
  inst.c = choose(rng, c_choices());
  inst.require_t0 = t0;
  return inst;
}

inline CaseOutcome eval_greedy(const LabInstance& inst, GreedyTarget target) {
  CaseOutcome out;
  const auto& s = inst.space;
  const auto& f = *inst.set_map;
  if (target == GreedyTarget::fixed && !s.is_t0()) return out;
  const auto audit = audit_greedy_hypothesis(s, f, *inst.c, target);
  out.hypotheses = audit.universal || audit.only_at_zero_value;
  out.bin = audit.universal ? "universal" : "termination-first";
  if (!out.hypotheses) return out;
  const TerminalStatus want = target == GreedyTarget::startpoint ? TerminalStatus::startpoint_found
                              : target == GreedyTarget::endpoint ? TerminalStatus::endpoint_found
                                                                 : TerminalStatus::fixed_point_found;
  std::vector<std::string> issues;
  for (PointIndex x0 = 0; x0 < s.size(); ++x0) {
    const auto log = target == GreedyTarget::startpoint ? startpoint_solve(s, f, *inst.c, x0)
                     : target == GreedyTarget::endpoint ? endpoint_solve(s, f, *inst.c, x0)
                                                        : fixed_solve_sym(s, f, *inst.c, x0);
    if (log.status != want)
      issues.push_back("seed " + s.label(x0) + " ended with " + to_string(log.status));
    if (!log.all_steps_ok()) issues.push_back("seed " + s.label(x0) + " breaks a logged bound");
  }
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- eps-points ---------------------------------------------------------------

inline LabInstance gen_map_only(LabRng& rng, const SizeBounds& b) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 4, true)};
  inst.set_map = random_set_map(rng, inst.space, 3);
  return inst;
}

inline CaseOutcome eval_eps_lemma(const LabInstance& inst, ExcessSide side) {
  CaseOutcome out;
  out.hypotheses = inst.space.is_t0();
  if (!out.hypotheses) return out;
  const auto& s = inst.space;
  const auto& f = *inst.set_map;
  std::vector<std::string> issues;
  std::size_t zero = 0;
  for (PointIndex x = 0; x < s.size(); ++x) {
    const auto cls = classify_point(s, f, x);
    const bool flagged = side == ExcessSide::start ? cls.startpoint : cls.endpoint;
    const Rational& v = side == ExcessSide::start ? cls.start_value : cls.end_value;
    std::vector<Rational> eps{Rational(1, 2), Rational(1, 10), Rational(1, 1000)};
    if (v > 0) eps.push_back(std::min(v, Rational(1, 2)));
    if (v > 0 && v < 2) eps.push_back(v / 2);
    bool in_all = true;
    for (const auto& e : eps) in_all = in_all && eps_points(s, f, e, side).contains(x);
    if (flagged != in_all) issues.push_back("point " + s.label(x) + " disagrees");
    zero += flagged ? 1 : 0;
  }
  out.bin = zero > 0 ? "has-zero-point" : "no-zero-point";
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- sequences ----------------------------------------------------------------

inline LabInstance gen_trace(LabRng& rng, const SizeBounds& b) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 3, chance(rng, 0.5))};
  inst.require_t0 = false;
  inst.trace = random_trace(rng, inst.space, inst.space.all_points().indices());
  return inst;
}

inline CaseOutcome eval_hierarchy(const LabInstance& inst) {
  CaseOutcome out;
  out.hypotheses = true;
  const auto r = check_hierarchy(inst.space, *inst.trace);
  out.bin = inst.trace->exact() ? "periodic" : "horizon";
  if (!r.literal_left_d_right_k_conjugate) out.bin += "/left-d-without-conjugate-right-K";
  std::vector<std::string> issues = r.violations;
  if (classify_cauchy(inst.space, *inst.trace, CauchyKind::left_k) !=
      classify_cauchy(conjugate(inst.space), *inst.trace, CauchyKind::right_k))
    issues.emplace_back("left-K verdict differs from right-K on the conjugate");
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

inline LabInstance gen_probe(LabRng& rng, const SizeBounds& b) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 3, chance(rng, 0.5))};
  inst.require_t0 = false;
  const auto& s = inst.space;
  const PointIndex cand = pick(rng, s.size());
  std::vector<PointIndex> zero_ball;
  for (PointIndex y = 0; y < s.size(); ++y)
    if (s.d(cand, y) == 0) zero_ball.push_back(y);
  inst.candidate = cand;
  inst.seed_point = pick(rng, s.size());
  auto tail = random_trace(rng, s, zero_ball);
  if (tail.exact() && chance(rng, 0.5)) {
    // Prefix of arbitrary points in front of the converging cycle.
    std::vector<PointIndex> pts;
    const std::size_t pre = pick(rng, 3);
    for (std::size_t i = 0; i < pre; ++i) pts.push_back(pick(rng, s.size()));
    const std::size_t start = pts.size() + *tail.cycle_start;
    pts.insert(pts.end(), tail.points.begin(), tail.points.end());
    tail = SequenceTrace::periodic(std::move(pts), start);
  }
  inst.trace = std::move(tail);
  return inst;
}

inline CaseOutcome eval_probe(const LabInstance& inst) {
  CaseOutcome out;
  const auto& s = inst.space;
  out.hypotheses = classify_convergence(s, *inst.trace, *inst.candidate, ConvergenceMode::d).positive();
  if (!out.hypotheses) return out;
  const auto r = semicontinuity_probe(s, *inst.seed_point, *inst.trace, *inst.candidate);
  out.bin = r.lower ? "both-probes" : "upper-only";
  std::vector<std::string> issues;
  if (!r.upper.positive()) issues.emplace_back("upper semicontinuity probe fails");
  if (r.lower && !r.lower->positive()) issues.emplace_back("lower semicontinuity probe fails");
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- hyperspace -------------------------------------------------------------

inline LabInstance gen_hyper(LabRng& rng, const SizeBounds& b) {
  SizeBounds capped{b.min_points, std::min<std::size_t>(b.max_points, 4)};
  if (capped.min_points > capped.max_points) capped.min_points = capped.max_points;
  LabInstance inst{gen_space(rng, draw_size(rng, capped), 4, chance(rng, 0.5))};
  inst.require_t0 = false;
  return inst;
}

inline CaseOutcome eval_hyper(const LabInstance& inst) {
  CaseOutcome out;
  out.hypotheses = true;
  const auto& s = inst.space;
  out.bin = s.is_t0() ? "t0" : "non-t0";
  std::vector<std::string> issues;
  const auto family = nonempty_subsets(s);
  const auto diag = hyperspace_axiom_check(s, family, false);
  if (!diag.ok()) issues.push_back(std::to_string(diag.violations.size()) + " hyperspace axiom violation(s)");
  for (PointIndex x = 0; x < s.size(); ++x)
    for (PointIndex y = 0; y < s.size(); ++y)
      if (hausdorff_value(s, PointSet{x}, PointSet{y}) != s.d(x, y))
        issues.push_back("singleton reduction fails at (" + s.label(x) + ", " + s.label(y) + ")");
  std::vector<PointSet> closed;
  for (const auto& a : family)
    if (s_cl_membership(s, a)) closed.push_back(a);
  if (!hyperspace_axiom_check(s, closed, true).ok()) issues.emplace_back("H is not T0 on S_cl(X)");
  if (!issues.empty()) out.failure = join(issues);
  return out;
}

// --- duality ------------------------------------------------------------------

inline LabInstance gen_duality(LabRng& rng, const SizeBounds& b) {
  LabInstance inst{gen_space(rng, draw_size(rng, b), 4, chance(rng, 0.5))};
  inst.require_t0 = false;
  inst.set_map = sink_map(rng, inst.space);
  inst.c = choose(rng, c_choices());
  inst.seed_point = pick(rng, inst.space.size());
  return inst;
}

inline CaseOutcome eval_duality(const LabInstance& inst) {
  CaseOutcome out;
  out.hypotheses = true;
  const auto end = endpoint_solve(inst.space, *inst.set_map, *inst.c, *inst.seed_point);
  auto start = startpoint_solve(conjugate(inst.space), *inst.set_map, *inst.c, *inst.seed_point);
  out.bin = to_string(end.status);
  if (start.status == TerminalStatus::startpoint_found) start.status = TerminalStatus::endpoint_found;
  if (!(start == end)) out.failure = "endpoint run differs from the startpoint run on the conjugate";
  return out;
}

inline const std::map<std::string, SuiteDef>& registry() {
  static const std::map<std::string, SuiteDef> suites{
      {"theorem13", {gen_picard, eval_picard}},
      {"theorem29", {[](LabRng& r, const SizeBounds& b) { return gen_equivalence(r, b, false); }, eval_equivalence}},
      {"theorem31", {[](LabRng& r, const SizeBounds& b) { return gen_equivalence(r, b, true); }, eval_equivalence}},
      {"corollary30", {[](LabRng& r, const SizeBounds& b) { return gen_equivalence(r, b, false); }, eval_fixed_from_mix}},
      {"theorem32", {gen_single, eval_single}},
      {"theorem35",
       {[](LabRng& r, const SizeBounds& b) { return gen_greedy(r, b, false); },
        [](const LabInstance& i) { return eval_greedy(i, GreedyTarget::startpoint); }}},
      {"corollary37",
       {[](LabRng& r, const SizeBounds& b) { return gen_greedy(r, b, false); },
        [](const LabInstance& i) { return eval_greedy(i, GreedyTarget::endpoint); }}},
      {"corollary38",
       {[](LabRng& r, const SizeBounds& b) { return gen_greedy(r, b, true); },
        [](const LabInstance& i) { return eval_greedy(i, GreedyTarget::fixed); }}},
      {"lemma22", {gen_map_only, [](const LabInstance& i) { return eval_eps_lemma(i, ExcessSide::start); }}},
      {"lemma23", {gen_map_only, [](const LabInstance& i) { return eval_eps_lemma(i, ExcessSide::end); }}},
      {"remark5", {gen_trace, eval_hierarchy}},
      {"lemma8", {gen_probe, eval_probe}},
      {"hyperspace", {gen_hyper, eval_hyper}},
      {"duality", {gen_duality, eval_duality}},
  };
  return suites;
}

inline const SuiteDef& suite(const std::string& id) {
  auto it = registry().find(id);
  if (it == registry().end()) throw InputError("unknown suite \"" + id + "\"");
  return it->second;
}

inline std::optional<PointIndex> remap(std::optional<PointIndex> p, PointIndex removed) {
  if (!p) return p;
  return *p > removed ? *p - 1 : *p;
}

}  // namespace detail

inline std::vector<std::string> suite_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, def] : detail::registry()) ids.push_back(id);
  return ids;
}

/// Hypotheses and conclusion of one suite on one instance.
inline CaseOutcome evaluate_case(const std::string& suite_id, const LabInstance& inst) {
  return detail::suite(suite_id).evaluate(inst);
}

/// "Hypotheses hold but the conclusion fails" as a shrinkable assertion.
inline Assertion suite_assertion(const std::string& suite_id) {
  const auto* def = &detail::suite(suite_id);
  return [def](const LabInstance& inst) -> std::optional<std::string> {
    auto out = def->evaluate(inst);
    if (out.hypotheses && out.failure) return out.failure;
    return std::nullopt;
  };
}

/// The instance with point k deleted, or nullopt when a component cannot be
/// restricted (an image becomes empty, a map or marker points at k).
inline std::optional<LabInstance> remove_point(const LabInstance& inst, PointIndex k) {
  const auto& s = inst.space;
  if (s.size() < 2 || k >= s.size()) return std::nullopt;
  if (inst.seed_point == k || inst.candidate == k) return std::nullopt;
  const PointSet keep = s.all_points().without(k);
  LabInstance out{s.restricted_to(keep)};
  out.gamma = inst.gamma;
  out.psi = inst.psi;
  out.c = inst.c;
  out.mode = inst.mode;
  out.require_t0 = inst.require_t0;
  out.provenance = inst.provenance + "/drop:" + s.label(k);
  out.seed_point = detail::remap(inst.seed_point, k);
  out.candidate = detail::remap(inst.candidate, k);
  if (inst.set_map) {
    std::vector<PointSet> imgs;
    for (PointIndex x = 0; x < s.size(); ++x) {
      if (x == k) continue;
      std::vector<PointIndex> pts;
      for (auto y : (*inst.set_map)(x))
        if (y != k) pts.push_back(y > k ? y - 1 : y);
      if (pts.empty()) return std::nullopt;
      imgs.emplace_back(std::move(pts));
    }
    out.set_map = SetValuedMap(out.space, std::move(imgs));
  }
  if (inst.point_map) {
    std::vector<PointIndex> t;
    for (PointIndex x = 0; x < s.size(); ++x) {
      if (x == k) continue;
      const PointIndex y = (*inst.point_map)(x);
      if (y == k) return std::nullopt;
      t.push_back(y > k ? y - 1 : y);
    }
    std::optional<RationalMatrix> alpha;
    if (inst.point_map->has_alpha()) {
      RationalMatrix a(s.size() - 1);
      for (PointIndex x = 0, i = 0; x < s.size(); ++x) {
        if (x == k) continue;
        for (PointIndex y = 0, j = 0; y < s.size(); ++y) {
          if (y == k) continue;
          a(i, j++) = inst.point_map->alpha(x, y);
        }
        ++i;
      }
      alpha = std::move(a);
    }
    out.point_map = SingleMap(out.space, std::move(t), std::move(alpha));
  }
  if (inst.trace) {
    auto tr = *inst.trace;
    for (auto& p : tr.points) {
      if (p == k) return std::nullopt;
      if (p > k) --p;
    }
    out.trace = std::move(tr);
  }
  return out;
}

/// The instance with d(i, j) replaced and the triangle inequality restored by
/// min-plus closure.
inline LabInstance with_distance(const LabInstance& inst, PointIndex i, PointIndex j, const Rational& value) {
  RationalMatrix m = inst.space.matrix();
  m(i, j) = value;
  LabInstance out = inst;
  out.space = FiniteQuasiSpace::trusted(inst.space.labels(), triangle_closure(std::move(m)));
  return out;
}

/// Greedy shrinking: drop points while the assertion keeps failing, then
/// lower distances (to 0, to their integer part, to half). Returns the
/// input unchanged when nothing smaller still fails.
inline LabInstance shrink(const LabInstance& inst, const Assertion& assertion, std::size_t max_rounds = 200) {
  if (!assertion(inst)) throw PreconditionError("shrink needs an instance on which the assertion fails");
  LabInstance cur = inst;
  for (std::size_t round = 0; round < max_rounds; ++round) {
    bool changed = false;
    for (PointIndex k = 0; k < cur.space.size() && !changed; ++k) {
      auto cand = remove_point(cur, k);
      if (cand && assertion(*cand)) {
        cur = std::move(*cand);
        changed = true;
      }
    }
    const std::size_t n = cur.space.size();
    for (PointIndex i = 0; i < n && !changed; ++i)
      for (PointIndex j = 0; j < n && !changed; ++j) {
        const Rational v = cur.space.d(i, j);
        if (i == j || v == 0) continue;
        std::vector<Rational> proposals{Rational(0)};
        const Rational whole(numerator(v) / denominator(v));
        if (whole < v) proposals.push_back(whole);
        proposals.push_back(v / 2);
        for (const auto& p : proposals) {
          auto cand = with_distance(cur, i, j, p);
          if (assertion(cand)) {
            cur = std::move(cand);
            changed = true;
            break;
          }
        }
      }
    if (!changed) break;
  }
  return cur;
}

/// Runs `trials` trials of a registered suite. Each trial uses its own RNG
/// seeded from (seed, trial index), so trials are independent and the report
/// does not depend on scheduling.
inline SuiteReport run_suite(const std::string& suite_id, std::size_t trials, std::uint64_t seed,
                             SizeBounds bounds = {}, std::size_t max_attempts_per_trial = 5000) {
  const auto& def = detail::suite(suite_id);
  if (bounds.min_points < 1 || bounds.min_points > bounds.max_points)
    throw InputError("size bounds need 1 <= min <= max");
  const auto assertion = suite_assertion(suite_id);
  SuiteReport rep;
  rep.suite_id = suite_id;
  rep.seed = seed;
  rep.trials = trials;
  rep.bounds = bounds;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t t = 0; t < trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32U)};
    LabRng rng(seq);
    bool filled = false;
    for (std::size_t a = 0; a < max_attempts_per_trial && !filled; ++a) {
      ++rep.attempts;
      auto inst = def.generate(rng, bounds);
      auto out = def.evaluate(inst);
      if (!out.hypotheses) continue;
      filled = true;
      ++rep.hypotheses_met;
      ++rep.bins[out.bin];
      if (!out.failure) {
        ++rep.passes;
        continue;
      }
      inst.provenance = suite_id + ":seed=" + std::to_string(seed) + ":trial=" + std::to_string(t);
      auto small = shrink(inst, assertion);
      const auto msg = assertion(small).value_or(*out.failure);
      rep.counterexamples.push_back({std::move(small), msg, t});
    }
    if (!filled) ++rep.unfilled;
  }
  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace qpm
