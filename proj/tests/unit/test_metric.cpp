// Copyright 2026 The jungck-fp Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <stdexcept>

#include <gtest/gtest.h>

#include "jfp/error.hpp"
#include "jfp/metric.hpp"

namespace jfp {
namespace {

TEST(Distance, EuclideanOnTheLine) {
  EXPECT_EQ(distance(0.25, 0.75), 0.5);
  EXPECT_EQ(distance(0.75, 0.25), 0.5);
  EXPECT_EQ(distance(-1.0, -1.0), 0.0);
}

TEST(Domain, ContainsRespectsOpenEnds) {
  const Domain half_open(0.5, 2.0 / 3, true, false);
  EXPECT_TRUE(half_open.contains(0.5));
  EXPECT_FALSE(half_open.contains(2.0 / 3));
  EXPECT_TRUE(half_open.contains(0.6));
  EXPECT_FALSE(half_open.contains(0.4));
  EXPECT_EQ(Domain(0, 1).width(), 1.0);
  EXPECT_EQ(Domain(0.5, 1).midpoint(), 0.75);
}

TEST(ScalarMap, EvaluatesInsideDomain) {
  const ScalarMap s(Domain(0, 1), [](double x) { return x / 16; }, "x/16");
  EXPECT_EQ(s(1.0), 0.0625);
  EXPECT_EQ(s(0.0), 0.0);
}

TEST(ScalarMap, OutsideDomainThrows) {
  const ScalarMap s(Domain(0, 1), [](double x) { return x; }, "x");
  EXPECT_THROW((void)s(1.5), DomainError);
  EXPECT_THROW((void)s(-0.1), DomainError);
}

TEST(ScalarMap, NonFiniteValueThrows) {
  const ScalarMap s(Domain(0, 1), [](double x) { return 1.0 / (x - 0.5) - 1.0 / (x - 0.5); },
                    "bad");
  EXPECT_THROW((void)s(0.5), NonFiniteError);
}

TEST(SampleGrid, UniformIncludesEndpoints) {
  const SampleGrid g = sample_grid(Domain(0, 1), 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.points().front(), 0.0);
  EXPECT_EQ(g.points().back(), 1.0);
  EXPECT_EQ(g.points()[2], 0.5);
}

TEST(SampleGrid, FewerThanTwoPointsRejected) {
  EXPECT_THROW((void)sample_grid(Domain(0, 1), 1), std::invalid_argument);
}

TEST(SampleGrid, JitterIsSeededAndStaysInside) {
  const Domain d(0, 1);
  const SampleGrid a = sample_grid(d, 64, GridStrategy::uniform_jitter, 42);
  const SampleGrid b = sample_grid(d, 64, GridStrategy::uniform_jitter, 42);
  const SampleGrid c = sample_grid(d, 64, GridStrategy::uniform_jitter, 43);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.points()[i], b.points()[i]);
    EXPECT_TRUE(d.contains(a.points()[i]));
  }
  bool differs = false;
  for (std::size_t i = 0; i < std::min(a.size(), c.size()); ++i) {
    differs = differs || a.points()[i] != c.points()[i];
  }
  EXPECT_TRUE(differs);
}

TEST(SampleGrid, MergeKeepsOrderAndDropsDuplicates) {
  const SampleGrid g = sample_grid(Domain(0, 1), 3).merged_with(std::vector<double>{0.5, 0.25});
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g.points()[1], 0.25);
  EXPECT_EQ(g.points()[2], 0.5);
}

TEST(Preimage, LinearMapHasExactPreimage) {
  const ScalarMap t(Domain(0, 1), [](double x) { return x / 2; }, "x/2");
  const PreimageResult r = find_preimage(t, 0.125);
  ASSERT_EQ(r.status, PreimageStatus::found);
  EXPECT_NEAR(r.point, 0.25, 1e-12);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(Preimage, ValueOutsideRangeHasNone) {
  const ScalarMap t(Domain(0, 1), [](double x) { return x / 2; }, "x/2");
  EXPECT_EQ(find_preimage(t, 0.75).status, PreimageStatus::none);
}

TEST(Preimage, SmallestPreimageWins) {
  // x -> (x - 1/2)^2 hits 1/16 at 1/4 and at 3/4.
  const ScalarMap t(Domain(0, 1), [](double x) { return (x - 0.5) * (x - 0.5); }, "sq");
  const PreimageResult r = find_preimage(t, 1.0 / 16);
  ASSERT_EQ(r.status, PreimageStatus::found);
  EXPECT_NEAR(r.point, 0.25, 1e-12);
}

TEST(Preimage, ConstantBranchFoundAtItsLeftEnd) {
  const double b = 2.0 / 3;
  const ScalarMap t(Domain(0.5, 1), [b](double x) { return x < b ? 1.0 : x; }, "T3", {b});
  const PreimageResult r = find_preimage(t, 1.0);
  ASSERT_EQ(r.status, PreimageStatus::found);
  EXPECT_EQ(r.point, 0.5);
  EXPECT_EQ(find_preimage(t, 0.5).status, PreimageStatus::none);
}

TEST(Preimage, NearestAcceptsWithinTolerance) {
  const ScalarMap t(Domain(0, 1), [](double x) { return x < 0.5 ? 0.0 : 1.0; }, "jump", {0.5});
  // The sign change at the jump is not a root.
  EXPECT_NE(find_preimage(t, 0.5).status, PreimageStatus::found);
  const PreimageResult near = nearest_preimage(t, 1e-5, 1e-4);
  ASSERT_EQ(near.status, PreimageStatus::found);
  EXPECT_EQ(t(near.point), 0.0);
}

TEST(Containment, HoldsForLinearPair) {
  const Domain d(0, 1);
  const ScalarMap s(d, [](double x) { return x / 16; }, "x/16");
  const ScalarMap t(d, [](double x) { return x / 2; }, "x/2");
  const ContainmentReport r = check_range_containment(s, t, sample_grid(d, 257));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.points_checked, 257u);
  EXPECT_TRUE(r.witnesses.empty());
}

TEST(Containment, ReportsWitnessWhenRangeEscapes) {
  const Domain d(0, 1);
  const ScalarMap s(d, [](double x) { return x; }, "x");
  const ScalarMap t(d, [](double x) { return x / 2; }, "x/2");
  const ContainmentReport r = check_range_containment(s, t, sample_grid(d, 5));
  EXPECT_FALSE(r.holds);
  ASSERT_FALSE(r.witnesses.empty());
  EXPECT_GT(r.witnesses.front().s_value, 0.5);
  EXPECT_EQ(r.witnesses.front().status, PreimageStatus::none);
}

TEST(DeclaredRange, FirstEscapingPointReported) {
  const Domain d(0, 1);
  const ScalarMap s(d, [](double x) { return 2 * x; }, "2x", {}, Domain(0, 1));
  const auto bad = check_declared_range(s, sample_grid(d, 5));
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(*bad, 0.75);
}

}  // namespace
}  // namespace jfp
