// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "micp/fixtures.hpp"
#include "micp/io.hpp"
#include "micp/slices.hpp"

using namespace micp;

TEST(Io, RationalJson) {
  EXPECT_EQ(rational_json(Rational(3, 4)), Json("3/4"));
  EXPECT_EQ(rational_json(Rational(-2)), Json("-2"));
  EXPECT_EQ(rational_from_json(Json(5)), Rational(5));
  EXPECT_EQ(rational_from_json(Json("0.125")), Rational(1, 8));
}

TEST(Io, FormulationRoundTrip) {
  for (const auto& f : {parity_cube(3), dense_sqrt2(), hyperbola(), lorentz_intcone(2), concave_balls(2)}) {
    MicpFormulation g = formulation_from_json(to_json(f));
    EXPECT_EQ(g.set, f.set);
    EXPECT_EQ(g.n, f.n);
    EXPECT_EQ(g.p, f.p);
    EXPECT_EQ(g.d, f.d);
  }
}

TEST(Io, PolyhedronRoundTrip) {
  PolyhedronH p = PolyhedronH::box({Rational(0), Rational(-1, 2)}, {Rational(3), Rational(7, 3)});
  p.add_equality({Rational(1), Rational(1)}, Rational(2));
  PolyhedronH q = polyhedron_from_json(to_json(p));
  EXPECT_EQ(q.dim(), 2u);
  EXPECT_TRUE(q.contains({Rational(1), Rational(1)}));
  EXPECT_FALSE(q.contains({Rational(1), Rational(2)}));
}

TEST(Io, FamilyRoundTrip) {
  IndexedFamily f = concave_ball_squares(3);
  IndexedFamily g = family_from_json(to_json(f));
  ASSERT_EQ(g.members.size(), 3u);
  EXPECT_EQ(g.index_points, f.index_points);
  EXPECT_EQ(g.members[2].vertices, f.members[2].vertices);
}

TEST(Io, LpParityCube) {
  MicpFormulation f = parity_cube(2);
  std::string lp = emit_lp(f);
  EXPECT_NE(lp.find("General\n z0\n"), std::string::npos);
  EXPECT_NE(lp.find("x0 + x1 - 2 z0 = 0"), std::string::npos);
  MicpFormulation g = parse_lp(lp);
  EXPECT_TRUE(same_rows_up_to_order(f, g));
  auto body = [](const std::string& t) { return t.substr(t.find('\n') + 1); };
  EXPECT_EQ(body(emit_lp(g)), body(lp));
}

TEST(Io, LpRejectsConic) {
  try {
    emit_lp(hyperbola());
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "LP export requires polyhedral formulation");
  }
}

TEST(Io, LpScaledRow) {
  PolyhedronH m(2);
  m.add_inequality({Rational(1, 3), Rational(-1, 2)}, Rational(5, 6));
  m.add_inequality({Rational(-1), Rational(0)}, Rational(0));
  MicpFormulation f = polyhedral_formulation(m, 1, 0, 1);
  std::string lp = emit_lp(f);
  EXPECT_NE(lp.find("scaled by 6"), std::string::npos);
  EXPECT_TRUE(same_rows_up_to_order(f, parse_lp(lp)));
}

TEST(Io, LpWithBinarySection) {
  const char* text =
      "Minimize\n obj: 0\nSubject To\n c0: x0 - z0 = 0\nBounds\n x0 free\nBinary\n z0\nEnd\n";
  MicpFormulation f = parse_lp(text);
  EXPECT_EQ(f.n, 1u);
  EXPECT_EQ(f.d, 1u);
  SliceOptions o;
  auto parts = slice_union(f, o);
  EXPECT_EQ(parts.size(), 2u);
}

TEST(Io, Fixtures) {
  EXPECT_EQ(fixture_registry().size(), 8u);
  auto pc = std::get<MicpFormulation>(fixture("parity_cube", {{"n", Rational(3)}}));
  EXPECT_EQ(pc.d, 1u);
  EXPECT_TRUE(pc.set.contains({Rational(1), Rational(1), Rational(0), Rational(1)}));
  EXPECT_FALSE(pc.set.contains({Rational(1), Rational(0), Rational(0), Rational(1)}));
  auto fig = std::get<PwlFunction>(fixture("figure2_pwl"));
  EXPECT_EQ(fig.prefix_values, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(fig.repeating_slopes, (std::vector<Rational>{Rational(3, 2)}));
  auto primes = std::get<NaturalOracle>(fixture("primes"));
  EXPECT_TRUE(primes.contains(47));
  EXPECT_FALSE(primes.contains(49));
  EXPECT_THROW(fixture("nope"), Error);
  EXPECT_THROW(fixture("parity_cube", {{"m", Rational(2)}}), Error);
  EXPECT_THROW(fixture("parity_cube", {{"n", Rational(1, 2)}}), Error);
}

TEST(Io, DenseSqrt2Rows) {
  // |(z1, z1)| <= z2 + 1 and |(z2, z2)| <= 2 z1 bracket z2 = floor(sqrt2 z1).
  MicpFormulation f = dense_sqrt2();
  SliceOptions o;
  o.window = IntegerBox{{Integer(0), Integer(0)}, {Integer(12), Integer(17)}};
  SliceFamily fam = enumerate_slices(f, o);
  for (const auto& s : fam.slices) {
    Integer z1 = s.z[0], z2 = s.z[1];
    // 2 z1^2 >= z2^2 and (z2 + 1)^2 >= 2 z1^2
    EXPECT_GE(2 * z1 * z1, z2 * z2);
    EXPECT_GE((z2 + 1) * (z2 + 1), 2 * z1 * z1);
  }
}
