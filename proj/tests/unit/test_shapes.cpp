// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <random>

#include "micp/fixtures.hpp"
#include "micp/shapes.hpp"

using namespace micp;

namespace {

PolyhedronV box2(Rational a, Rational b, Rational c, Rational d) { return {{{a, c}, {b, c}, {a, d}, {b, d}}, {}, {}}; }
PolyhedronV seg(Rational a, Rational b) { return {{{a}, {b}}, {}, {}}; }

}  // namespace

TEST(Shapes, Volumes) {
  EXPECT_EQ(polytope_volume(box2(0, 1, 0, 1)), Rational(1));
  EXPECT_EQ(polytope_volume({{{0, 0}, {1, 0}, {0, 1}}, {}, {}}), Rational(1, 2));
  EXPECT_EQ(polytope_volume(seg(2, 7)), Rational(5));
  PolyhedronV tet{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}, {}};
  EXPECT_EQ(polytope_volume(tet), Rational(1, 6));
  PolyhedronV ray{{{0}}, {{1}}, {}};
  EXPECT_THROW(polytope_volume(ray), Error);
}

TEST(Shapes, VolumeMonteCarlo) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> c(-10, 10);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<RationalVector> pts;
    for (int i = 0; i < 7; ++i) pts.push_back({Rational(c(rng)), Rational(c(rng))});
    PolyhedronV p{pts, {}, {}};
    const double vol = polytope_volume(p).get_d();
    if (vol == 0) continue;
    const int samples = 200000;
    int hits = 0;
    // Point-in-hull test by cross products in double precision.
    auto hull = hull_vertices(pts);
    double cx = 0, cy = 0;
    for (const auto& v : hull) {
      cx += v[0].get_d();
      cy += v[1].get_d();
    }
    cx /= hull.size();
    cy /= hull.size();
    std::sort(hull.begin(), hull.end(), [&](const RationalVector& a, const RationalVector& b) {
      return std::atan2(a[1].get_d() - cy, a[0].get_d() - cx) < std::atan2(b[1].get_d() - cy, b[0].get_d() - cx);
    });
    for (int s = 0; s < samples; ++s) {
      double x = u(rng), y = u(rng);
      bool in = true;
      for (std::size_t i = 0; i < hull.size() && in; ++i) {
        const auto& a = hull[i];
        const auto& b = hull[(i + 1) % hull.size()];
        double cross = (b[0].get_d() - a[0].get_d()) * (y - a[1].get_d()) - (b[1].get_d() - a[1].get_d()) * (x - a[0].get_d());
        in = cross >= 0;
      }
      hits += in;
    }
    const double pr = static_cast<double>(hits) / samples;
    const double est = pr * 400;
    const double sigma = 400 * std::sqrt(pr * (1 - pr) / samples);
    EXPECT_NEAR(est, vol, 3 * sigma + 1e-9);
  }
}

TEST(Shapes, Translation) {
  auto t = translation_equivalent(seg(0, 1), seg(5, 6));
  EXPECT_TRUE(t.equivalent);
  EXPECT_EQ(t.v, (RationalVector{Rational(5)}));
  EXPECT_FALSE(translation_equivalent(seg(0, 1), seg(0, 2)).equivalent);
  PolyhedronV p{{{0, 0}, {3, 1}, {1, 2}, {Rational(1, 2), Rational(1, 3)}}, {}, {}};
  RationalVector v{Rational(3, 7), Rational(-2)};
  auto r = translation_equivalent(p, scale_translate(p, 1, v));
  EXPECT_TRUE(r.equivalent);
  EXPECT_EQ(r.v, v);
}

TEST(Shapes, Homothety) {
  auto h = homothety_equivalent(seg(0, 1), seg(4, 6));
  EXPECT_EQ(h.outcome, HomothetyOutcome::Homothetic);
  EXPECT_EQ(h.scale, Rational(2));
  EXPECT_EQ(h.translation, (RationalVector{Rational(4)}));

  PolyhedronV oct{{{2, 0}, {0, 2}, {-2, 0}, {0, -2}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, {}, {}};
  oct.vertices = {{3, 1}, {1, 3}, {-1, 3}, {-3, 1}, {-3, -1}, {-1, -3}, {1, -3}, {3, -1}};
  EXPECT_EQ(homothety_equivalent(box2(0, 1, 0, 1), oct).outcome, HomothetyOutcome::NotHomothetic);

  PolyhedronV tri{{{0, 0}, {2, 1}, {1, 3}}, {}, {}};
  auto t3 = homothety_equivalent(tri, scale_translate(tri, 3, {Rational(1, 7), Rational(2)}));
  EXPECT_EQ(t3.outcome, HomothetyOutcome::Homothetic);
  EXPECT_EQ(t3.scale, Rational(3));
}

TEST(Shapes, BrunnMinkowski) {
  auto sq = box2(0, 1, 0, 1);
  EXPECT_EQ(brunn_minkowski_gap(sq, sq).sign, 0);
  EXPECT_EQ(brunn_minkowski_gap(sq, scale_translate(sq, 1, {Rational(5), Rational(1, 3)})).sign, 0);
  auto g = brunn_minkowski_gap(sq, box2(0, 2, 0, Rational(1, 2)));
  EXPECT_EQ(g.sign, 1);
  EXPECT_EQ(g.mixed_volume, Rational(9, 8));
  EXPECT_TRUE(g.exact);
  EXPECT_EQ(g.surrogate, Rational(1, 8));

  PolyhedronV tet{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {}, {}};
  PolyhedronV cube{{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}}, {}, {}};
  EXPECT_EQ(brunn_minkowski_gap(tet, cube).sign, 1);
  EXPECT_EQ(brunn_minkowski_gap(cube, scale_translate(cube, 2, {1, 1, 1})).sign, 0);
}

TEST(Shapes, MinkowskiSum) {
  auto s = minkowski_sum(box2(0, 1, 0, 1), PolyhedronV{{{0, 0}, {1, 1}}, {}, {}});
  EXPECT_EQ(polytope_volume(s), Rational(3));
  EXPECT_TRUE(polytope_contains(s, {Rational(2), Rational(2)}));
  EXPECT_FALSE(polytope_contains(s, {Rational(2), Rational(0)}));
}

TEST(Shapes, FamilyTranslates) {
  IndexedFamily fam;
  for (long z = 0; z < 6; ++z) {
    fam.index_points.push_back({Integer(z)});
    fam.members.push_back(seg(z, z + 1));
  }
  FamilyReport r = classify_family(fam);
  EXPECT_EQ(r.verdict, FamilyVerdict::TheoremConsistent);
  EXPECT_EQ(r.parity_classes.size(), 2u);
  EXPECT_LE(r.representatives.size(), 2u);
}

TEST(Shapes, FamilyGrowingBalls) {
  FamilyReport r = classify_family(concave_ball_squares(6));
  EXPECT_EQ(r.verdict, FamilyVerdict::VolumesDiffer);
  ASSERT_EQ(r.homothety_classes.size(), 1u);
  EXPECT_EQ(r.homothety_classes[0].size(), 6u);
}

TEST(Shapes, FamilyEqualAreaRectangles) {
  IndexedFamily fam;
  const long N = 5;
  for (long z = 0; z <= 6; ++z) {
    Rational w = 1 + Rational(z, N);
    fam.index_points.push_back({Integer(z)});
    fam.members.push_back(box2(0, w, 0, 1 / w));
  }
  FamilyReport r = classify_family(fam);
  EXPECT_EQ(r.verdict, FamilyVerdict::HypothesisViolated);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->size(), 3u);
}

TEST(Shapes, DegenerateHull3D) {
  std::vector<RationalVector> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  EXPECT_THROW(hull_vertices(flat), Error);
}
