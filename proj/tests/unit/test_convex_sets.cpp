// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "micp/conic_set.hpp"
#include "micp/naturals.hpp"
#include "micp/polyhedron.hpp"

using namespace micp;

namespace {

RationalVector rv(std::initializer_list<Rational> xs) { return RationalVector(xs); }

PolyhedronH unit_square() { return PolyhedronH::box(rv({0, 0}), rv({1, 1})); }

}  // namespace

TEST(Polyhedron, FourierMotzkinSingleStep) {
  // x <= z, z <= x + 1, 0 <= z <= 2
  PolyhedronH p(2);
  p.add_inequality(rv({1, -1}), 0);
  p.add_inequality(rv({-1, 1}), 1);
  p.add_inequality(rv({0, -1}), 0);
  p.add_inequality(rv({0, 1}), 2);
  Interval iv = to_interval(fm_project(p, {0}));
  ASSERT_TRUE(iv.lo && iv.hi);
  EXPECT_EQ(*iv.lo, Rational(-1));
  EXPECT_EQ(*iv.hi, Rational(2));
}

TEST(Polyhedron, FourierMotzkinGridOracle) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int trial = 0; trial < 15; ++trial) {
    PolyhedronH p = PolyhedronH::box(rv({-2, -2, -2}), rv({2, 2, 2}));
    for (int k = 0; k < 3; ++k) p.add_inequality(rv({coef(rng), coef(rng), coef(rng)}), coef(rng) + 2);
    PolyhedronH q = fm_project(p, {0, 1});
    for (long a = -8; a <= 8; a += 2)
      for (long b = -8; b <= 8; b += 3) {
        RationalVector x = rv({Rational(a, 4), Rational(b, 4)});
        bool witness = false;
        for (long c = -128; c <= 128 && !witness; ++c) witness = p.contains(rv({x[0], x[1], Rational(c, 64)}));
        // A grid witness proves membership; the converse only holds up to the grid.
        if (witness) EXPECT_TRUE(q.contains(x));
        if (!q.contains(x)) EXPECT_FALSE(witness);
      }
  }
}

TEST(Polyhedron, VerticesAndRays) {
  PolyhedronV v = vertices_and_rays(unit_square());
  EXPECT_EQ(v.vertices.size(), 4u);
  EXPECT_TRUE(v.rays.empty());

  PolyhedronH half(1);
  half.add_inequality(rv({-1}), 0);
  PolyhedronV h = vertices_and_rays(half);
  ASSERT_EQ(h.vertices.size(), 1u);
  EXPECT_EQ(h.vertices[0], rv({0}));
  ASSERT_EQ(h.rays.size(), 1u);
  EXPECT_EQ(h.rays[0], rv({1}));
}

TEST(Polyhedron, VertexRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> coef(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    PolyhedronH p = PolyhedronH::box(rv({-3, -3}), rv({3, 3}));
    for (int k = 0; k < 3; ++k) p.add_inequality(rv({coef(rng), coef(rng)}), coef(rng) + 3);
    if (p.is_empty()) continue;
    PolyhedronV v = vertices_and_rays(p);
    ASSERT_FALSE(v.vertices.empty());
    for (const auto& x : v.vertices) EXPECT_TRUE(p.contains(x));
    for (std::size_t i = 0; i < v.vertices.size(); ++i)
      for (std::size_t j = 0; j < v.vertices.size(); ++j) {
        RationalVector m(2);
        for (std::size_t c = 0; c < 2; ++c) m[c] = (v.vertices[i][c] + 2 * v.vertices[j][c]) / 3;
        EXPECT_TRUE(p.contains(m));
      }
  }
}

TEST(Polyhedron, LinearMax) {
  auto m = linear_max(unit_square(), rv({1, 1}));
  ASSERT_TRUE(m);
  EXPECT_EQ(*m, Rational(2));
  PolyhedronH half(1);
  half.add_inequality(rv({-1}), 0);
  EXPECT_FALSE(linear_max(half, rv({1})).has_value());
}

TEST(Polyhedron, LinearMaxGridOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    PolyhedronH p = PolyhedronH::box(rv({-2, -2}), rv({2, 2}));
    p.add_inequality(rv({coef(rng), coef(rng)}), 3);
    if (p.is_empty()) continue;
    RationalVector c = rv({coef(rng), coef(rng)});
    auto best = linear_max(p, c);
    ASSERT_TRUE(best);
    bool attained = false;
    for (const auto& v : vertices_and_rays(p).vertices) attained = attained || dot(c, v) == *best;
    EXPECT_TRUE(attained);
    for (long a = -16; a <= 16; ++a)
      for (long b = -16; b <= 16; ++b) {
        RationalVector x = rv({Rational(a, 8), Rational(b, 8)});
        if (p.contains(x)) EXPECT_LE(dot(c, x), *best);
      }
  }
}

TEST(ConicSet, Membership) {
  ConicSet disk(2);
  disk.add_block(ConeKind::SecondOrder, {{rv({0, 0}), 1}, {rv({1, 0}), 0}, {rv({0, 1}), 0}});
  EXPECT_TRUE(disk.contains(rv({1, 0})));
  EXPECT_FALSE(disk.contains(rv({1, 1})));

  // (z, t, x) with x^2 <= z t
  ConicSet rot(3);
  rot.add_block(ConeKind::RotatedSecondOrder, {{rv({0, 1, 0}), 0}, {rv({0, 0, 1}), 0}, {rv({1, 0, 0}), 0}});
  EXPECT_TRUE(rot.contains(rv({1, 1, 1})));
  EXPECT_FALSE(rot.contains(rv({1, 1, Rational(9, 10)})));
}

TEST(ConicSet, RecessionCone) {
  ConicSet interval = from_polyhedron(PolyhedronH::box(rv({0}), rv({1})));
  ConicSet rc = recession_cone(interval);
  EXPECT_TRUE(rc.contains(rv({0})));
  EXPECT_FALSE(rc.contains(rv({1})));
  EXPECT_FALSE(rc.contains(rv({-1})));

  PolyhedronH ge1(1);
  ge1.add_inequality(rv({-1}), -1);
  ConicSet rh = recession_cone(from_polyhedron(ge1));
  EXPECT_TRUE(rh.contains(rv({0})));
  EXPECT_TRUE(rh.contains(rv({5})));
  EXPECT_FALSE(rh.contains(rv({-1})));
}

TEST(ConicSet, RecessionOfKEpsilon) {
  ConicSet rc = recession_cone(k_epsilon(Rational(2, 5)));
  // Directions lambda (1, sqrt2) lie in the cone; rational points close to the
  // ray from either side must be rejected, and (1, 1) is never a direction.
  for (long k = 1; k <= 1 << 10; k *= 2) {
    EXPECT_FALSE(rc.contains(rv({k, k})));
    EXPECT_FALSE(rc.contains(rv({k, Rational(3 * k, 2)})));
    EXPECT_FALSE(rc.contains(rv({k, Rational(7 * k, 5)})));
  }
  EXPECT_TRUE(rc.contains(rv({0, 0})));
  ConicSet ke = k_epsilon(Rational(2, 5));
  EXPECT_TRUE(ke.contains(rv({1, Rational(7, 5)})));
  EXPECT_FALSE(ke.contains(rv({10, 10})));
}

TEST(ConicSet, ConicHull) {
  ConicSet h = conic_hull(from_polyhedron(PolyhedronH::box(rv({0}), rv({1}))));
  EXPECT_TRUE(h.contains(rv({0, 0})));
  EXPECT_TRUE(h.contains(rv({2, 3})));
  EXPECT_FALSE(h.contains(rv({4, 3})));
  EXPECT_FALSE(h.contains(rv({-1, 3})));
  EXPECT_FALSE(h.contains(rv({0, -1})));

  ConicSet disk(2);
  disk.add_block(ConeKind::SecondOrder, {{rv({0, 0}), 1}, {rv({1, 0}), 0}, {rv({0, 1}), 0}});
  ConicSet dh = conic_hull(disk);
  for (Rational z : {Rational(1, 2), Rational(1), Rational(2)}) {
    EXPECT_TRUE(dh.contains(rv({z, 0, z})));
    EXPECT_TRUE(dh.contains(rv({Rational(3, 5) * z, Rational(4, 5) * z, z})));
    EXPECT_FALSE(dh.contains(rv({Rational(3, 5) * z, Rational(81, 100) * z, z})));
  }

  PolyhedronH point(1);
  point.add_equality(rv({1}), 0);
  ConicSet ph = conic_hull(from_polyhedron(point));
  EXPECT_TRUE(ph.contains(rv({0, 4})));
  EXPECT_FALSE(ph.contains(rv({1, 4})));
}

TEST(ConicSet, RecessionEqualize) {
  PolyhedronH half(1);
  half.add_inequality(rv({-1}), 0);
  ConicSet lifted = recession_equalize(from_polyhedron(half));
  ConicSet rc = recession_cone(lifted);
  for (long s = -4; s <= 4; ++s) EXPECT_FALSE(rc.contains(rv({1, s})));
  EXPECT_TRUE(rc.contains(rv({0, 1})));

  PolyhedronH point(1);
  point.add_equality(rv({1}), 0);
  ConicSet lp = recession_equalize(from_polyhedron(point));
  EXPECT_TRUE(lp.contains(rv({0, 3})));
  EXPECT_FALSE(lp.contains(rv({1, 3})));
  ConicSet rp = recession_cone(lp);
  for (long a = -3; a <= 3; ++a)
    for (long t = -3; t <= 3; ++t) EXPECT_EQ(rc.contains(rv({a, t})), rp.contains(rv({a, t})));
}

TEST(ConicSet, PolyhedralRoundTrip) {
  ConicSet s = from_polyhedron(unit_square());
  EXPECT_TRUE(s.is_polyhedral());
  auto p = to_polyhedron(s);
  ASSERT_TRUE(p);
  EXPECT_TRUE(p->contains(rv({1, 1})));
  EXPECT_FALSE(p->contains(rv({2, 1})));
}
