// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "micp/lower_bounds.hpp"

using namespace micp;

namespace {

bool composite_or_unit(long v) {
  if (v < 2) return true;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return true;
  return false;
}

}  // namespace

TEST(LowerBounds, EvenParityCube3) {
  auto pts = even_parity_points(3);
  ASSERT_EQ(pts.size(), 4u);
  MidpointWitness w = strongest_witness(pts, CliqueMode::Exact);
  EXPECT_EQ(w.w, 4u);
  EXPECT_EQ(w.bound, 2u);
}

TEST(LowerBounds, ParityExhaustive) {
  for (std::size_t n = 2; n <= 6; ++n) {
    auto pts = even_parity_points(n);
    MidpointWitness w = strongest_witness(pts, CliqueMode::Exact);
    EXPECT_EQ(w.w, std::size_t{1} << (n - 1));
    EXPECT_EQ(w.bound, n - 1);
    // Every midpoint of two distinct points has a coordinate 1/2.
    for (std::size_t i = 0; i < w.points.size(); ++i)
      for (std::size_t j = i + 1; j < w.points.size(); ++j) {
        bool half = false;
        for (std::size_t c = 0; c < n; ++c) half = half || (w.points[i][c] + w.points[j][c]) / 2 == Rational(1, 2);
        EXPECT_TRUE(half);
      }
  }
}

TEST(LowerBounds, Primes) {
  std::vector<RationalVector> cand;
  for (long v = 0; v <= 50; ++v) cand.push_back({Rational(v)});
  MembershipOracle primes = [](const RationalVector& x) { return is_integer(x[0]) && is_prime(x[0].get_num()); };
  MidpointWitness w = strongest_witness(cand, primes, CliqueMode::Exact);
  EXPECT_GE(w.w, 3u);
  EXPECT_GE(w.bound, 2u);
  EXPECT_TRUE(verify_witness(w, primes));
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    ASSERT_TRUE(is_prime(w.points[i][0].get_num()));
    for (std::size_t j = i + 1; j < w.points.size(); ++j) {
      Rational m = (w.points[i][0] + w.points[j][0]) / 2;
      if (is_integer(m)) EXPECT_TRUE(composite_or_unit(m.get_num().get_si()));
    }
  }
  MidpointWitness g = strongest_witness(cand, primes, CliqueMode::Greedy, 3);
  EXPECT_GE(g.w, 3u);
  EXPECT_TRUE(verify_witness(g, primes));
}

TEST(LowerBounds, ManualPrimeTriple) {
  MidpointWitness w;
  w.points = {{Rational(3)}, {Rational(5)}, {Rational(13)}};
  w.w = 3;
  MembershipOracle primes = [](const RationalVector& x) { return is_integer(x[0]) && is_prime(x[0].get_num()); };
  EXPECT_TRUE(verify_witness(w, primes));
  EXPECT_EQ(dimension_lower_bound(3), 2u);
}

TEST(LowerBounds, ThreeCollinearPoints) {
  std::vector<RationalVector> pts{{Rational(0)}, {Rational(1, 2)}, {Rational(1)}};
  MidpointWitness w = strongest_witness(pts, CliqueMode::Exact);
  EXPECT_EQ(w.w, 2u);
  // {0, 1/2} have midpoint 1/4 outside the set; only {0, 1} is blocked.
  EXPECT_EQ(w.bound, 1u);
  MidpointWitness single = strongest_witness(std::vector<RationalVector>{{Rational(7)}}, CliqueMode::Exact);
  EXPECT_EQ(single.w, 1u);
  EXPECT_EQ(single.bound, 0u);
}

TEST(LowerBounds, DimensionBound) {
  EXPECT_EQ(dimension_lower_bound(1), 0u);
  EXPECT_EQ(dimension_lower_bound(2), 1u);
  EXPECT_EQ(dimension_lower_bound(4), 2u);
  EXPECT_EQ(dimension_lower_bound(5), 3u);
}

TEST(LowerBounds, ParityClasses) {
  auto c = parity_classes({{Integer(0), Integer(0)}, {Integer(2), Integer(4)}, {Integer(1), Integer(1)}});
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].size(), 2u);
  EXPECT_EQ(c[1].size(), 1u);

  std::vector<IntegerVector> many;
  for (long i = 0; i < 5; ++i) many.push_back({Integer(i * 3), Integer(i * i)});
  auto cm = parity_classes(many);
  EXPECT_LE(cm.size(), 4u);
  bool pair = false;
  for (const auto& cls : cm) pair = pair || cls.size() >= 2;
  EXPECT_TRUE(pair);
}

TEST(LowerBounds, Errors) {
  EXPECT_THROW(strongest_witness(std::vector<RationalVector>{}, CliqueMode::Exact), Error);
  std::vector<RationalVector> big;
  for (long v = 0; v < 100; ++v) big.push_back({Rational(v)});
  MembershipOracle all = [](const RationalVector&) { return true; };
  EXPECT_THROW(strongest_witness(big, all, CliqueMode::Exact), Error);
}
