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

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qpm {

/// Exact rational number used for every distance, bound and parameter.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Malformed input: wrong shape, unparsable number, unknown label.
/// Kept distinct from axiom violations, which are reported as diagnostics.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "p/q", "-p/q" or an integer string. Rejects decimals and q = 0.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den))
    throw InputError("not a rational literal: \"" + std::string(text) + "\"");
  const Integer n{std::string(num)};
  const Integer d{std::string(den)};
  if (d == 0) throw InputError("zero denominator in \"" + std::string(text) + "\"");
  Rational r(n, d);
  return negative ? Rational(-r) : r;
}

/// Canonical "p/q" form; integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.str(); }

/// c^n computed exactly.
inline Rational power(const Rational& base, std::size_t n) {
  Rational result = 1;
  Rational b = base;
  while (n > 0) {
    if (n & 1U) result *= b;
    b *= b;
    n >>= 1U;
  }
  return result;
}

/// Nonnegative rational extended with +infinity.
///
/// The Hausdorff excess is stated for arbitrary subsets and may be infinite;
/// on finite spaces it never is, so the infinite state exists only to keep the
/// codomain honest.
class ExtendedRational {
 public:
  ExtendedRational() = default;
  ExtendedRational(Rational value) : value_(std::move(value)) {}  // NOLINT(implicit)

  static ExtendedRational infinity() {
    ExtendedRational e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  const Rational& value() const {
    if (infinite_) throw PreconditionError("value() on infinite ExtendedRational");
    return value_;
  }

  std::string str() const { return infinite_ ? std::string("inf") : to_string(value_); }

  friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
    if (a.infinite_) return false;
    return b.infinite_ || a.value_ < b.value_;
  }

 private:
  Rational value_{0};
  bool infinite_ = false;
};

/// Dense row-major square matrix of rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t n, const Rational& fill = 0) : n_(n), data_(n * n, fill) {}

  /// Builds from nested rows; throws InputError unless the rows form a square.
  static RationalMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    RationalMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw InputError("matrix is not square: row " + std::to_string(i) + " has " +
                         std::to_string(rows[i].size()) + " entries, expected " +
                         std::to_string(rows.size()));
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t size() const { return n_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  RationalMatrix transposed() const {
    RationalMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

}  // namespace qpm
