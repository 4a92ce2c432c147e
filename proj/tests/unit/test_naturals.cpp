// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>
#include <set>

#include "micp/naturals.hpp"
#include "micp/slices.hpp"

using namespace micp;

namespace {

// Breadth-first closure of the generators under addition.
std::vector<Natural> bfs_intcone(const std::vector<Natural>& gens, Natural bound) {
  std::vector<bool> seen(static_cast<std::size_t>(bound) + 1);
  std::vector<Natural> queue{0};
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Natural g : gens) {
      Natural y = queue[i] + g;
      if (g > 0 && y <= bound && !seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

std::vector<Natural> milp_members(const PeriodicNaturalSet& s, Natural bound) {
  MicpFormulation f = to_milp(s);
  SliceOptions o;
  o.x_region = PolyhedronH::box({Rational(0)}, {Rational(bound)});
  std::set<Natural> out;
  for (const auto& p : slice_union(f, o)) {
    Interval iv = to_interval(p);
    if (iv.empty) continue;
    EXPECT_TRUE(iv.lo && iv.hi && *iv.lo == *iv.hi);
    out.insert(iv.lo->get_num().get_si());
  }
  return {out.begin(), out.end()};
}

std::vector<Natural> brute_members(const PeriodicNaturalSet& s, Natural bound) {
  std::vector<Natural> out;
  for (Natural x = 0; x <= bound; ++x) {
    bool in = std::find(s.exceptional.begin(), s.exceptional.end(), x) != s.exceptional.end();
    for (Natural o : s.offsets) in = in || (x >= o && (x - o) % s.period == 0);
    if (in) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Naturals, IntconeEnumerate) {
  EXPECT_EQ(intcone_enumerate({3}, 10), (std::vector<Natural>{0, 3, 6, 9}));
  EXPECT_EQ(intcone_enumerate({2, 3}, 8), (std::vector<Natural>{0, 2, 3, 4, 5, 6, 7, 8}));
  EXPECT_EQ(intcone_enumerate({4, 6}, 14), (std::vector<Natural>{0, 4, 6, 8, 10, 12, 14}));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Natural> g(1, 15);
  for (int i = 0; i < 30; ++i) {
    std::vector<Natural> gens{g(rng), g(rng), g(rng)};
    EXPECT_EQ(intcone_enumerate(gens, 200), bfs_intcone(gens, 200));
  }
}

TEST(Naturals, IntconeNormalForm) {
  auto a = intcone_normal_form({2, 3});
  EXPECT_EQ(a.set.exceptional, (std::vector<Natural>{0}));
  EXPECT_EQ(a.set.offsets, (std::vector<Natural>{2}));
  EXPECT_EQ(a.set.period, 1);

  auto b = intcone_normal_form({4, 6});
  EXPECT_EQ(b.set.exceptional, (std::vector<Natural>{0}));
  EXPECT_EQ(b.set.offsets, (std::vector<Natural>{4}));
  EXPECT_EQ(b.set.period, 2);

  auto c = intcone_normal_form({5});
  EXPECT_TRUE(c.set.exceptional.empty());
  EXPECT_EQ(c.set.offsets, (std::vector<Natural>{0}));
  EXPECT_EQ(c.set.period, 5);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<Natural> g(1, 12);
  for (int i = 0; i < 30; ++i) {
    std::vector<Natural> gens{g(rng), g(rng)};
    auto nf = intcone_normal_form(gens);
    EXPECT_EQ(brute_members(nf.set, 300), bfs_intcone(gens, 300));
    EXPECT_EQ(nf.set, canonicalize(nf.set));
  }
}

TEST(Naturals, Canonicalize) {
  PeriodicNaturalSet s;
  s.offsets = {4, 6};
  s.period = 4;
  s.exceptional = {0, 8};
  PeriodicNaturalSet c = canonicalize(s);
  EXPECT_EQ(c.period, 2);
  EXPECT_EQ(c.offsets, (std::vector<Natural>{4}));
  EXPECT_EQ(c.exceptional, (std::vector<Natural>{0}));

  PeriodicNaturalSet finite;
  finite.exceptional = {3, 1};
  PeriodicNaturalSet fc = canonicalize(finite);
  EXPECT_EQ(fc.exceptional, (std::vector<Natural>{1, 3}));
  EXPECT_TRUE(fc.offsets.empty());
  EXPECT_EQ(fc.period, 1);
}

TEST(Naturals, DetectExamples) {
  auto evens = oracle_from_list(brute_members(canonicalize({{0}, {4}, 2}), 1000), 1000);
  auto r = detect_periodicity(evens, 100);
  ASSERT_TRUE(r.periodic);
  EXPECT_EQ(r.set.exceptional, (std::vector<Natural>{0}));
  EXPECT_EQ(r.set.offsets, (std::vector<Natural>{4}));
  EXPECT_EQ(r.set.period, 2);

  auto mod3 = NaturalOracle([](Natural x) { return x % 3 != 0; }, 1000);
  auto r3 = detect_periodicity(mod3, 100);
  ASSERT_TRUE(r3.periodic);
  EXPECT_TRUE(r3.set.exceptional.empty());
  EXPECT_EQ(r3.set.offsets, (std::vector<Natural>{1, 2}));
  EXPECT_EQ(r3.set.period, 3);

  auto se = fixture_s_epsilon(Rational(2, 5), 10000);
  EXPECT_FALSE(detect_periodicity(se, 200).periodic);
  EXPECT_THROW(detect_periodicity(se, 5000), Error);
}

TEST(Naturals, OracleBound) {
  auto o = oracle_from_list({1, 5}, 10);
  EXPECT_TRUE(o.contains(5));
  EXPECT_FALSE(o.contains(6));
  EXPECT_THROW(o.contains(11), Error);
}

TEST(Naturals, ToMilp) {
  PeriodicNaturalSet a{{}, {1, 2}, 3, false};
  EXPECT_EQ(milp_members(a, 50), brute_members(a, 50));
  PeriodicNaturalSet all{{}, {0}, 1, false};
  EXPECT_EQ(milp_members(all, 20).size(), 21u);
  PeriodicNaturalSet b{{0}, {4}, 2, false};
  EXPECT_EQ(milp_members(b, 40), brute_members(b, 40));
  PeriodicNaturalSet fin{{2, 7}, {}, 1, false};
  EXPECT_EQ(milp_members(fin, 40), (std::vector<Natural>{2, 7}));
}

TEST(Naturals, SEpsilonMembership) {
  const Rational eps(2, 5);
  EXPECT_TRUE(s_epsilon_member(eps, 0));
  // sqrt(2) * 5 = 7.0710..., fractional part below 2/5.
  EXPECT_TRUE(s_epsilon_member(eps, 5));
  EXPECT_THROW(s_epsilon_member(Rational(1), 3), Error);
  EXPECT_THROW(s_epsilon_member(Rational(0), 3), Error);

  // Cross-check against long double on a range where it is reliable.
  const long double r2 = std::sqrt(2.0L), e = 0.4L;
  for (Natural x = 0; x < 2000; ++x) {
    long double fr = r2 * x - std::floor(r2 * x);
    long double lo = e, hi = 1 - r2 * e;
    if (std::fabs(fr - lo) < 1e-12L || std::fabs(fr - hi) < 1e-12L) continue;
    EXPECT_EQ(s_epsilon_member(eps, x), !(fr > lo && fr < hi)) << x;
  }
}
