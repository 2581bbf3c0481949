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

/// @file functions.hpp
/// One-dimensional moduli: comparison functions gamma and contraction moduli
/// psi, evaluated exactly.
///
/// Kinds:
///   linear(c)          t -> c t,       0 <= c < 1
///   power(c, p)        t -> c t^p,     c >= 0, integer p >= 1
///   table(breakpoints) piecewise linear through (t_i, v_i), t_0 = 0, the
///                      final segment extended past the last breakpoint.

#include "qpm/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qpm {

enum class FunctionKind { linear, power, table };

inline const char* to_string(FunctionKind k) {
  switch (k) {
    case FunctionKind::linear: return "linear";
    case FunctionKind::power: return "power";
    case FunctionKind::table: return "table";
  }
  return "?";
}

/// Which hypotheses on the modulus are established, and how.
struct Certification {
  bool nondecreasing = false;
  bool series_summable = false;
  /// series_summable came from a finite ratio test, not a proof.
  bool summable_is_heuristic = false;
  bool below_identity = false;  ///< f(t) < t for all t > 0
  bool usc = false;
  bool liminf_gap_positive = false;  ///< liminf_{t->inf} (t - f(t)) > 0

  /// (c)-comparison function: nondecreasing with summable iterates.
  bool comparison() const { return nondecreasing && series_summable; }
  /// Hypotheses a contraction modulus psi needs.
  bool contraction_modulus() const { return usc && below_identity && liminf_gap_positive; }
};

class FunctionSpec {
 public:
  static FunctionSpec linear(Rational c) {
    if (c < 0 || c >= 1) throw InputError("linear modulus needs 0 <= c < 1, got " + to_string(c));
    FunctionSpec f(FunctionKind::linear);
    f.coeff_ = std::move(c);
    return f;
  }

  static FunctionSpec power(Rational c, unsigned exponent) {
    if (c < 0) throw InputError("power modulus needs c >= 0");
    if (exponent < 1) throw InputError("power modulus needs an exponent >= 1");
    FunctionSpec f(FunctionKind::power);
    f.coeff_ = std::move(c);
    f.exponent_ = exponent;
    return f;
  }

  static FunctionSpec table(std::vector<std::pair<Rational, Rational>> breakpoints) {
    if (breakpoints.size() < 2) throw InputError("table modulus needs at least two breakpoints");
    if (breakpoints.front().first != 0) throw InputError("table modulus must start at t = 0");
    for (std::size_t i = 0; i < breakpoints.size(); ++i) {
      if (breakpoints[i].second < 0) throw InputError("table modulus values must be nonnegative");
      if (i > 0 && breakpoints[i].first <= breakpoints[i - 1].first)
        throw InputError("table breakpoints must be strictly increasing in t");
    }
    FunctionSpec f(FunctionKind::table);
    f.breakpoints_ = std::move(breakpoints);
    return f;
  }

  FunctionKind kind() const { return kind_; }
  const Rational& coefficient() const { return coeff_; }
  unsigned exponent() const { return exponent_; }
  const std::vector<std::pair<Rational, Rational>>& breakpoints() const { return breakpoints_; }

  Rational operator()(const Rational& t) const {
    if (t < 0) throw PreconditionError("modulus evaluated at a negative argument");
    switch (kind_) {
      case FunctionKind::linear: return coeff_ * t;
      case FunctionKind::power: return coeff_ * qpm::power(t, exponent_);
      case FunctionKind::table: return eval_table(t);
    }
    return 0;
  }

  /// n-fold iterate; iterate(t, 0) = t.
  Rational iterate(Rational t, std::size_t n) const {
    if (kind_ == FunctionKind::linear) return qpm::power(coeff_, n) * t;
    for (std::size_t i = 0; i < n; ++i) t = (*this)(t);
    return t;
  }

  /// Slope of the segment used beyond the last breakpoint.
  Rational tail_slope() const {
    const auto& a = breakpoints_[breakpoints_.size() - 2];
    const auto& b = breakpoints_.back();
    return (b.second - a.second) / (b.first - a.first);
  }

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;

 private:
  explicit FunctionSpec(FunctionKind k) : kind_(k) {}

  Rational eval_table(const Rational& t) const {
    std::size_t seg = breakpoints_.size() - 2;
    for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
      if (t <= breakpoints_[i + 1].first) {
        seg = i;
        break;
      }
    const auto& [t0, v0] = breakpoints_[seg];
    const auto& [t1, v1] = breakpoints_[seg + 1];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  }

  FunctionKind kind_;
  Rational coeff_{0};
  unsigned exponent_ = 1;
  std::vector<std::pair<Rational, Rational>> breakpoints_;
};

/// Largest iterate ratio accepted by the summability heuristic.
inline const Rational kSummabilityRatioCap{9, 10};

/// Certifies the hypotheses of a modulus.
///
/// linear and power are settled analytically. For tables, monotonicity,
/// f(t) < t, continuity and the asymptotic gap are decided exactly from the
/// breakpoints (piecewise linear functions are determined by them);
/// summability is only a heuristic: for every sample t the iterates
/// f^1(t) .. f^N(t) must hit 0, or every ratio f^{n+1}(t)/f^n(t) over the
/// second half of the run must stay <= 9/10. Samples must be positive.
inline Certification certify_comparison(const FunctionSpec& f, const std::vector<Rational>& sample_ts,
                                        std::size_t horizon) {
  Certification c;
  switch (f.kind()) {
    case FunctionKind::linear:
      // f^n(t) = c^n t: geometric.
      c.nondecreasing = c.series_summable = c.below_identity = c.usc = c.liminf_gap_positive = true;
      return c;
    case FunctionKind::power: {
      c.nondecreasing = true;
      c.usc = true;
      const bool contracting_line = f.exponent() == 1 && f.coefficient() < 1;
      // c t^p with p > 1 exceeds t for large t, so none of these hold globally.
      c.below_identity = c.liminf_gap_positive = c.series_summable = contracting_line;
      return c;
    }
    case FunctionKind::table: break;
  }

  const auto& bp = f.breakpoints();
  c.usc = true;
  c.nondecreasing = f.tail_slope() >= 0;
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (bp[i].second < bp[i - 1].second) c.nondecreasing = false;
  // f(t) - t is piecewise linear, so negativity on (0, inf) is decided at the
  // breakpoints plus the direction of the final ray.
  c.below_identity = bp.front().second == 0 && f.tail_slope() <= 1;
  for (std::size_t i = 1; i < bp.size(); ++i)
    if (bp[i].second >= bp[i].first) c.below_identity = false;
  c.liminf_gap_positive = f.tail_slope() < 1 || (f.tail_slope() == 1 && bp.back().second < bp.back().first);

  if (sample_ts.empty() || horizon < 2) return c;
  c.summable_is_heuristic = true;
  c.series_summable = true;
  for (const auto& t : sample_ts) {
    if (t <= 0) throw PreconditionError("summability samples must be positive");
    std::vector<Rational> it{t};
    for (std::size_t n = 1; n <= horizon && it.back() != 0; ++n) it.push_back(f(it.back()));
    if (it.back() == 0) continue;
    for (std::size_t n = horizon / 2; n < horizon; ++n)
      if (it[n + 1] > kSummabilityRatioCap * it[n]) {
        c.series_summable = false;
        break;
      }
    if (!c.series_summable) break;
  }
  return c;
}

/// Certification with the default sample grid {1/2, 1, 2, 10} and N = 50.
inline Certification certify_comparison(const FunctionSpec& f) {
  return certify_comparison(f, {Rational(1, 2), Rational(1), Rational(2), Rational(10)}, 50);
}

}  // namespace qpm
