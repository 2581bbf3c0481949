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
#include "oracle.hpp"
#include "qpm/hyperspace.hpp"
#include "qpm/lab.hpp"

#include <gtest/gtest.h>

using qpm::FiniteQuasiSpace;
using qpm::PointSet;
using qpm::Rational;
using qpm::RationalMatrix;

namespace {

FiniteQuasiSpace three_point_space() {
  return FiniteQuasiSpace::make({"0", "1", "2"}, RationalMatrix::from_rows({{0, 0, 0}, {1, 0, 1}, {2, 2, 0}}));
}

// x, y, z with y -> x, z -> y, z -> x at distance 0 and the rest at 1.
FiniteQuasiSpace zero_chain() {
  return FiniteQuasiSpace::make({"x", "y", "z"}, RationalMatrix::from_rows({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}));
}

}  // namespace

TEST(Hyperspace, ThreePointExcesses) {
  const auto s = three_point_space();
  const auto h = qpm::hausdorff(s, PointSet{0}, PointSet{1, 2});
  EXPECT_EQ(h.value.value(), Rational(0));
  const auto back = qpm::hausdorff(s, PointSet{1, 2}, PointSet{0});
  EXPECT_EQ(back.value.value(), Rational(2));
  EXPECT_EQ(back.witness, 2u);
  EXPECT_TRUE(back.witness_in_first);
  EXPECT_EQ(qpm::hausdorff_sym(s, PointSet{0}, PointSet{1, 2}), Rational(2));
}

TEST(Hyperspace, PointToWholeSpace) {
  const auto s = FiniteQuasiSpace::make({"0", "1"}, RationalMatrix::from_rows({{0, 0}, {1, 0}}));
  EXPECT_EQ(qpm::hausdorff_value(s, PointSet{1}, s.all_points()), Rational(1));
  EXPECT_EQ(qpm::excess_from_point(s, 1, s.all_points()), Rational(1));
  EXPECT_EQ(qpm::excess_to_point(s, s.all_points(), 1), Rational(0));
}

TEST(Hyperspace, EmptySetsAreRejected) {
  const auto s = three_point_space();
  EXPECT_THROW(qpm::hausdorff(s, PointSet{}, PointSet{0}), qpm::PreconditionError);
  EXPECT_THROW(qpm::dist_point_to_set(s, 0, PointSet{}), qpm::PreconditionError);
  EXPECT_THROW(qpm::dist_set_to_point(s, PointSet{}, 0), qpm::PreconditionError);
}

TEST(HyperspaceProperty, MatchesBruteForceAndReductions) {
  qpm::LabRng rng(21);
  std::mt19937_64 pick(22);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 5;
    const auto s = qpm::gen_space(rng, n, 4, trial % 2 == 0);
    const auto m = oracle::mat_of(s);
    const auto a = oracle::random_subset(pick, n), b = oracle::random_subset(pick, n);
    EXPECT_EQ(qpm::hausdorff_value(s, PointSet(a), PointSet(b)), oracle::hausdorff(m, a, b));
    for (std::size_t x = 0; x < n; ++x) {
      EXPECT_EQ(qpm::excess_from_point(s, x, PointSet(a)), qpm::hausdorff_value(s, PointSet{x}, PointSet(a)));
      EXPECT_EQ(qpm::excess_to_point(s, PointSet(a), x), qpm::hausdorff_value(s, PointSet(a), PointSet{x}));
      for (std::size_t y = 0; y < n; ++y) EXPECT_EQ(qpm::hausdorff_value(s, PointSet{x}, PointSet{y}), s.d(x, y));
    }
  }
}

TEST(HyperspaceProperty, AxiomsHoldOnThePowerSet) {
  qpm::LabRng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto s = qpm::gen_space(rng, 1 + trial % 4, 3, trial % 2 == 0);
    const auto family = qpm::nonempty_subsets(s);
    EXPECT_EQ(family.size(), (std::size_t{1} << s.size()) - 1);
    const auto diag = qpm::hyperspace_axiom_check(s, family, false);
    EXPECT_TRUE(diag.ok());
    std::vector<PointSet> closed;
    for (const auto& a : family)
      if (qpm::s_cl_membership(s, a)) closed.push_back(a);
    const auto on_closed = qpm::hyperspace_axiom_check(s, closed);
    EXPECT_TRUE(on_closed.family_in_s_cl);
    EXPECT_TRUE(on_closed.t0_checked);
    EXPECT_TRUE(on_closed.ok());
  }
}

TEST(Hyperspace, T0FailsOffTheClosedSets) {
  const auto s = zero_chain();
  ASSERT_TRUE(s.is_t0());
  const PointSet a{0, 2}, b{0, 1, 2};
  EXPECT_EQ(qpm::hausdorff_value(s, a, b), Rational(0));
  EXPECT_EQ(qpm::hausdorff_value(s, b, a), Rational(0));
  EXPECT_FALSE(qpm::s_cl_membership(s, a));
  EXPECT_TRUE(qpm::s_cl_membership(s, b));

  const auto by_default = qpm::hyperspace_axiom_check(s, {a, b});
  EXPECT_FALSE(by_default.family_in_s_cl);
  EXPECT_FALSE(by_default.t0_checked);
  EXPECT_TRUE(by_default.ok());

  const auto forced = qpm::hyperspace_axiom_check(s, {a, b}, true);
  ASSERT_EQ(forced.violations.size(), 1u);
  EXPECT_EQ(forced.violations[0].kind, qpm::ViolationKind::t0);
}

TEST(Hyperspace, BoundedJoinClosedMembership) {
  const auto s = three_point_space();
  for (std::size_t x = 0; x < s.size(); ++x) EXPECT_TRUE(qpm::cb_membership(s, PointSet{x}));
  EXPECT_FALSE(qpm::cb_membership(s, PointSet{}));
  const auto z = zero_chain();
  EXPECT_TRUE(qpm::cb_membership(z, PointSet{0, 2}));
  EXPECT_FALSE(qpm::s_cl_membership(z, PointSet{0, 2}));
}
