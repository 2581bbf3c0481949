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
#include "qpm/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using qpm::Rational;

TEST(Rational, ParsesFractionsAndIntegers) {
  EXPECT_EQ(qpm::parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(qpm::parse_rational("-1/2"), Rational(-1, 2));
  EXPECT_EQ(qpm::parse_rational("+5"), Rational(5));
  EXPECT_EQ(qpm::parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(qpm::parse_rational("0"), Rational(0));
  EXPECT_EQ(qpm::parse_rational("123456789012345678901234567890/3"),
            Rational(qpm::Integer("41152263004115226300411522630")));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"0.5", "1/0", "", "1/", "/2", "abc", "1e3", "--1", "1/-2", " 1"})
    EXPECT_THROW(qpm::parse_rational(bad), qpm::InputError) << bad;
}

TEST(Rational, CanonicalText) {
  EXPECT_EQ(qpm::to_string(Rational(6, 8)), "3/4");
  EXPECT_EQ(qpm::to_string(Rational(4, 2)), "2");
  EXPECT_EQ(qpm::to_string(Rational(-2, 6)), "-1/3");
}

TEST(Rational, TextRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-10000, 10000), den(1, 999);
  for (int i = 0; i < 500; ++i) {
    const Rational r(num(rng), den(rng));
    EXPECT_EQ(qpm::parse_rational(qpm::to_string(r)), r);
  }
}

TEST(Rational, PowerIsExact) {
  EXPECT_EQ(qpm::power(Rational(2, 3), 5), Rational(32, 243));
  EXPECT_EQ(qpm::power(Rational(7, 5), 0), Rational(1));
  EXPECT_EQ(qpm::power(Rational(1, 2), 64), Rational(1) / Rational(qpm::Integer(1) << 64));
}

TEST(ExtendedRational, InfinityOrdersAboveEverything) {
  const auto inf = qpm::ExtendedRational::infinity();
  const qpm::ExtendedRational big(Rational(1000000));
  EXPECT_TRUE(inf.is_infinite());
  EXPECT_FALSE(big.is_infinite());
  EXPECT_TRUE(big < inf);
  EXPECT_EQ(inf.str(), "inf");
  EXPECT_EQ(big.value(), Rational(1000000));
  EXPECT_THROW((void)inf.value(), qpm::PreconditionError);
}

TEST(RationalMatrix, FromRowsNeedsSquareInput) {
  EXPECT_THROW(qpm::RationalMatrix::from_rows({{1, 2}, {3}}), qpm::InputError);
  const auto m = qpm::RationalMatrix::from_rows({{0, 1}, {Rational(1, 2), 0}});
  EXPECT_EQ(m(1, 0), Rational(1, 2));
  EXPECT_EQ(m.transposed()(0, 1), Rational(1, 2));
  EXPECT_EQ(m.transposed().transposed(), m);
}
