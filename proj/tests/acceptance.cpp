// SPDX-License-Identifier: Apache-2.0
// Acceptance suite: one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "micp/decompose.hpp"
#include "micp/formulation.hpp"
#include "micp/lattice.hpp"
#include "micp/lower_bounds.hpp"
#include "micp/naturals.hpp"
#include "micp/pwl.hpp"
#include "micp/shapes.hpp"
#include "micp/slices.hpp"

using namespace micp;

namespace {

using Rng = std::mt19937_64;

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

Rational rand_rational(Rng& rng, long lo, long hi, long den = 4) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return make_rational(Integer(d(rng)), Integer(den));
}

std::vector<RationalVector> sorted_hull(const PolyhedronH& p) {
  auto v = vertices_and_rays(p);
  if (!v.rays.empty() || !v.lines.empty()) throw Error("unexpected unbounded piece");
  auto pts = v.vertices;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (p.dim() == 2 && pts.size() >= 3) {
    // Drop points that are not extreme.
    std::vector<RationalVector> ext;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<RationalVector> others;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i) others.push_back(pts[j]);
      PolyhedronV rest{others, {}, {}};
      if (others.size() < 3 || !polytope_contains(rest, pts[i])) ext.push_back(pts[i]);
    }
    return ext;
  }
  return pts;
}

// ---- 1 ------------------------------------------------------------------

PolyhedronH random_set(Rng& rng, std::size_t dim, bool allow_unbounded) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (dim == 1) {
    Rational a = rand_rational(rng, -5, 4), b = a + rand_rational(rng, 0, 2);
    PolyhedronH p(1);
    p.add_inequality({Rational(-1)}, -a);
    if (!allow_unbounded || coin(rng) != 0) p.add_inequality({Rational(1)}, b);
    return p;
  }
  for (;;) {
    RationalVector lo{rand_rational(rng, -5, 3), rand_rational(rng, -5, 3)};
    RationalVector hi{lo[0] + rand_rational(rng, 1, 3), lo[1] + rand_rational(rng, 1, 3)};
    PolyhedronH p = PolyhedronH::box(lo, hi);
    if (coin(rng) < 2) {
      RationalVector c{rand_rational(rng, -2, 2, 1), rand_rational(rng, -2, 2, 1)};
      RationalVector mid{(lo[0] + hi[0]) / 2, (lo[1] + hi[1]) / 2};
      p.add_inequality(c, dot(c, mid) + Rational(1, 2));
    }
    if (!p.is_empty()) return p;
  }
}

bool in_any(const std::vector<PolyhedronH>& ps, const RationalVector& x) {
  for (const auto& p : ps)
    if (p.contains(x)) return true;
  return false;
}

Check criterion_unions(Rng& rng) {
  Check c;
  for (int pair = 0; pair < 100 && c.ok; ++pair) {
    const std::size_t dim = pair % 2 == 0 ? 1 : 2;
    const bool unbounded = dim == 1 && pair % 4 == 0;
    std::vector<PolyhedronH> inputs{random_set(rng, dim, unbounded), random_set(rng, dim, unbounded)};
    std::vector<ConicSet> sets{from_polyhedron(inputs[0]), from_polyhedron(inputs[1])};

    std::vector<std::pair<std::string, MicpFormulation>> forms;
    forms.emplace_back("projected", union_projected(sets, dim));
    if (!unbounded) {
      forms.emplace_back("basic", union_basic(sets, dim));
      forms.emplace_back("ideal", union_ideal(sets, dim));
    }
    for (const auto& [name, f] : forms) {
      std::vector<PolyhedronH> pieces = slice_union(f);
      std::ostringstream tag;
      tag << "pair " << pair << " (" << name << ")";
      if (dim == 1) {
        std::vector<Interval> got, want;
        for (const auto& p : pieces) got.push_back(to_interval(p));
        for (const auto& p : inputs) want.push_back(to_interval(p));
        if (merge_intervals(got) != merge_intervals(want)) c.fail(tag.str() + ": interval union differs");
      } else {
        std::set<std::vector<RationalVector>> got, want;
        for (const auto& p : pieces) got.insert(sorted_hull(p));
        for (const auto& p : inputs) want.insert(sorted_hull(p));
        if (got != want) c.fail(tag.str() + ": pieces differ from the input sets");
      }
      // Grid membership against the brute-force union.
      for (long a = -24; a <= 24 && c.ok; a += 3)
        for (long b = (dim == 1 ? 0 : -24); b <= (dim == 1 ? 0 : 24) && c.ok; b += 3) {
          RationalVector x{make_rational(Integer(a), Integer(4))};
          if (dim == 2) x.push_back(make_rational(Integer(b), Integer(4)));
          if (in_any(pieces, x) != in_any(inputs, x)) c.fail(tag.str() + ": membership differs");
        }
    }
  }
  return c;
}

// ---- 2 ------------------------------------------------------------------

Check criterion_ideal(Rng& rng) {
  Check c;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 50 && c.ok; ++i) {
    const std::size_t dim = 1 + static_cast<std::size_t>(coin(rng));
    const std::size_t k = dim == 1 ? 2 + static_cast<std::size_t>(coin(rng)) : 2;
    std::vector<ConicSet> sets;
    for (std::size_t j = 0; j < k; ++j) sets.push_back(from_polyhedron(random_set(rng, dim, false)));
    MicpFormulation f = union_ideal(sets, dim);
    IdealReport r = check_ideal(f);
    if (r.verdict != IdealVerdict::Ideal) c.fail("instance " + std::to_string(i) + ": " + r.detail);
  }
  return c;
}

// ---- 3 ------------------------------------------------------------------

Check criterion_parity() {
  Check c;
  for (std::size_t n = 2; n <= 6; ++n) {
    auto pts = even_parity_points(n);
    std::set<RationalVector> members(pts.begin(), pts.end());
    MidpointWitness w = strongest_witness(pts, CliqueMode::Exact);
    if (w.w != (std::size_t{1} << (n - 1)) || w.bound != n - 1) c.fail("n=" + std::to_string(n) + ": wrong witness size");
    for (std::size_t i = 0; i < w.points.size(); ++i)
      for (std::size_t j = i + 1; j < w.points.size(); ++j) {
        RationalVector m(n);
        for (std::size_t k = 0; k < n; ++k) m[k] = (w.points[i][k] + w.points[j][k]) / 2;
        if (members.count(m)) c.fail("n=" + std::to_string(n) + ": midpoint inside S");
      }
  }
  return c;
}

// ---- 4 ------------------------------------------------------------------

bool trial_prime(long v) {
  if (v < 2) return false;
  for (long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

Check criterion_primes() {
  Check c;
  std::vector<RationalVector> cand;
  for (long v = 2; v <= 50; ++v) cand.push_back({Rational(v)});
  MembershipOracle oracle = [](const RationalVector& x) { return is_integer(x[0]) && is_prime(x[0].get_num()); };
  MidpointWitness w = strongest_witness(cand, oracle, CliqueMode::Exact);
  if (w.w < 3 || w.bound < 2) c.fail("witness too small");
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    if (!trial_prime(w.points[i][0].get_num().get_si())) c.fail("non-prime in witness");
    for (std::size_t j = i + 1; j < w.points.size(); ++j) {
      Rational m = (w.points[i][0] + w.points[j][0]) / 2;
      if (is_integer(m) && trial_prime(m.get_num().get_si())) c.fail("prime midpoint");
    }
  }
  c.detail = "w = " + std::to_string(w.w) + ", bound " + std::to_string(w.bound);
  return c;
}

// ---- 5 ------------------------------------------------------------------

Check criterion_naturals(Rng& rng) {
  Check c;
  std::uniform_int_distribution<Natural> period(1, 20), small(0, 60), count(0, 4);
  const Natural bound = 1000;
  for (int i = 0; i < 200 && c.ok; ++i) {
    PeriodicNaturalSet s;
    s.period = period(rng);
    const Natural no = count(rng) + (i % 10 == 0 ? 0 : 1);
    for (Natural k = 0; k < no; ++k) s.offsets.push_back(small(rng));
    for (Natural k = count(rng); k > 0; --k) s.exceptional.push_back(small(rng));
    // One offset per residue class.
    std::sort(s.offsets.begin(), s.offsets.end());
    std::set<Natural> residues;
    std::erase_if(s.offsets, [&](Natural o) { return !residues.insert(o % s.period).second; });
    std::sort(s.exceptional.begin(), s.exceptional.end());
    s.exceptional.erase(std::unique(s.exceptional.begin(), s.exceptional.end()), s.exceptional.end());
    if (s.offsets.empty() && s.exceptional.empty()) s.exceptional.push_back(small(rng));
    PeriodicNaturalSet canon = canonicalize(s);

    MicpFormulation f = to_milp(canon);
    SliceOptions o;
    o.x_region = PolyhedronH::box({Rational(0)}, {Rational(bound)});
    std::set<Natural> members;
    for (const auto& p : slice_union(f, o)) {
      Interval iv = to_interval(p);
      if (iv.empty) continue;
      if (!iv.lo || !iv.hi || *iv.lo != *iv.hi || !is_integer(*iv.lo)) {
        c.fail("set " + std::to_string(i) + ": slice is not an integer point");
        break;
      }
      members.insert(iv.lo->get_num().get_si());
    }
    auto direct = s.enumerate(bound);
    if (std::vector<Natural>(members.begin(), members.end()) != direct) {
      c.fail("set " + std::to_string(i) + ": MILP slices differ from the set");
      break;
    }
    PeriodicityResult r = detect_periodicity(oracle_from_list(direct, bound), 20);
    if (!r.periodic || !(r.set == canon)) c.fail("set " + std::to_string(i) + ": re-detection differs");
  }
  return c;
}

// ---- 6 ------------------------------------------------------------------

Check criterion_s_epsilon() {
  Check c;
  PeriodicityResult r = detect_periodicity(fixture_s_epsilon(Rational(2, 5), 100000), 500);
  if (r.periodic) c.fail("reported a period " + std::to_string(r.set.period));
  return c;
}

// ---- 7 ------------------------------------------------------------------

Check criterion_staircase() {
  Check c;
  PwlFunction f = fixture_staircase();
  PwlDecomposition d = pwl_decompose(f);
  if (d.head.size() != 1) c.fail("head has " + std::to_string(d.head.size()) + " segments");
  if (d.period.t != 1) c.fail("tail period " + std::to_string(d.period.t));
  const std::vector<Rational> expected{1, 0, Rational(3, 2), 3, Rational(9, 2)};
  for (Natural x = 0; x <= 4; ++x) {
    SliceOptions o;
    o.x_region = PolyhedronH::box({Rational(x), Rational(-100)}, {Rational(x), Rational(100)});
    std::set<Rational> vals;
    for (const auto& p : slice_union(d.formulation, o)) {
      Interval iv = to_interval(p.fix(0, x));
      if (iv.empty) continue;
      if (!iv.lo || !iv.hi || *iv.lo != *iv.hi) c.fail("graph is not single-valued at " + std::to_string(x));
      if (iv.lo) vals.insert(*iv.lo);
    }
    if (vals != std::set<Rational>{expected[x]}) c.fail("wrong value at " + std::to_string(x));
  }
  return c;
}

// ---- 8 ------------------------------------------------------------------

Check criterion_decomposition() {
  Check c;
  BoundedInput m;
  m.points = {{Rational(0), Rational(0)}, {Rational(1, 2), Rational(0)}};
  m.rays = {{Integer(1), Integer(1)}};
  m.n = 1;
  m.d = 1;
  Decomposition dec = decompose_bounded(m);
  if (dec.rays_x.size() != 1 || dec.rays_x[0] != RationalVector{Rational(1)}) c.fail("unexpected x-ray");
  // Reconstruct pieces + intcone(rays_x) within [0, 10 + 1/2].
  std::vector<Interval> parts;
  for (const auto& piece : dec.pieces) {
    Interval iv = to_interval(piece.x_set);
    for (long k = 0; k <= 10; ++k) {
      Interval t{*iv.lo + k, *iv.hi + k, false};
      if (*t.lo <= Rational(21, 2)) parts.push_back({*t.lo, std::min(*t.hi, Rational(21, 2)), false});
    }
  }
  std::vector<Interval> want;
  for (long k = 0; k <= 10; ++k) want.push_back({Rational(k), Rational(k) + Rational(1, 2), false});
  if (merge_intervals(parts) != want) c.fail("reconstruction differs from the union of [k, k + 1/2]");
  auto check = verify_decomposition(m, dec, IntegerBox{{Integer(0)}, {Integer(10)}}, {Rational(0)}, {Rational(21, 2)});
  if (!check.ok) c.fail(check.detail);
  return c;
}

// ---- 9 ------------------------------------------------------------------

PolyhedronV random_polygon(Rng& rng) {
  std::uniform_int_distribution<int> npts(3, 7);
  for (;;) {
    std::vector<RationalVector> pts;
    for (int i = npts(rng); i > 0; --i) pts.push_back({rand_rational(rng, -4, 4, 3), rand_rational(rng, -4, 4, 3)});
    PolyhedronV p{pts, {}, {}};
    if (polytope_volume(p) > 0) return {hull_vertices(pts), {}, {}};
  }
}

Check criterion_brunn_minkowski(Rng& rng) {
  Check c;
  for (int i = 0; i < 500 && c.ok; ++i) {
    PolyhedronV p = random_polygon(rng), q = random_polygon(rng);
    BrunnMinkowskiGap g = brunn_minkowski_gap(p, q);
    if (g.sign < 0) c.fail("negative gap on pair " + std::to_string(i));
    const HomothetyOutcome h = homothety_equivalent(p, q).outcome;
    if ((g.sign == 0) != (h != HomothetyOutcome::NotHomothetic))
      c.fail("pair " + std::to_string(i) + ": gap sign " + std::to_string(g.sign) + " but " + homothety_outcome_name(h));
  }
  std::uniform_int_distribution<long> s(1, 5);
  for (int i = 0; i < 50 && c.ok; ++i) {
    PolyhedronV p = random_polygon(rng);
    PolyhedronV q = scale_translate(p, make_rational(Integer(s(rng)), Integer(s(rng))), {rand_rational(rng, -3, 3), rand_rational(rng, -3, 3)});
    if (brunn_minkowski_gap(p, q).sign != 0) c.fail("homothet with nonzero gap");
    if (homothety_equivalent(p, q).outcome != HomothetyOutcome::Homothetic) c.fail("homothety not detected");
    // A non-homothetic perturbation: stretch one axis.
    PolyhedronV r = p;
    for (auto& v : r.vertices) v[0] *= 2;
    if (brunn_minkowski_gap(p, r).sign <= 0) c.fail("stretched copy with zero gap");
  }
  return c;
}

// ---- 10 -----------------------------------------------------------------

MicpFormulation random_polyhedral_formulation(Rng& rng) {
  // x in R^2, z in Z^2, inside a box, with a few random cuts.
  PolyhedronH m = PolyhedronH::box({-6, -6, -4, -4}, {6, 6, 4, 4});
  std::uniform_int_distribution<long> coef(-3, 3);
  for (int k = 0; k < 4; ++k) {
    RationalVector a{Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng)), Rational(coef(rng))};
    m.add_inequality(a, Rational(4 + coef(rng)));
  }
  return polyhedral_formulation(m, 2, 0, 2, "random");
}

Check criterion_support_concavity(Rng& rng) {
  Check c;
  std::uniform_int_distribution<long> zc(-4, 4), rc(-2, 2), cc(-3, 3);
  int triples = 0, attempts = 0;
  MicpFormulation f = random_polyhedral_formulation(rng);
  while (triples < 100 && c.ok) {
    if (++attempts % 200 == 0) f = random_polyhedral_formulation(rng);
    if (attempts > 200000) {
      c.fail("could not find enough feasible triples");
      break;
    }
    IntegerVector z{Integer(zc(rng)), Integer(zc(rng))};
    IntegerVector r{Integer(rc(rng)), Integer(rc(rng))};
    if (r[0] == 0 && r[1] == 0) continue;
    IntegerVector mid{z[0] + r[0], z[1] + r[1]}, far{z[0] + 2 * r[0], z[1] + 2 * r[1]};
    if (slice(f, z).empty || slice(f, far).empty) continue;
    RationalVector dir{Rational(cc(rng)), Rational(cc(rng))};
    auto g0 = support_function(f, z, dir), g2 = support_function(f, far, dir);
    // Convexity of the relaxation puts the midpoint slice in between.
    Slice sm = slice(f, mid);
    if (sm.empty) {
      c.fail("midpoint slice empty");
      break;
    }
    auto g1 = support_function(f, mid, dir);
    if (!g0 || !g1 || !g2) {
      c.fail("unbounded support function in a bounded formulation");
      break;
    }
    if (2 * *g1 < *g0 + *g2) c.fail("midpoint concavity violated");
    ++triples;
  }
  return c;
}

// ---- 11 -----------------------------------------------------------------

Check criterion_hnf(Rng& rng) {
  Check c;
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  int done = 0;
  while (done < 1000 && c.ok) {
    const std::size_t n = size(rng);
    IntegerMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
    if (determinant(a) == 0) continue;
    HermiteDecomposition d = hermite_normal_form(a);
    if (!(multiply(a, d.u) == d.h)) c.fail("A U != H");
    if (abs(determinant(d.u)) != 1) c.fail("U not unimodular");
    for (std::size_t i = 0; i < n; ++i) {
      if (d.h(i, i) <= 0) c.fail("nonpositive diagonal");
      for (std::size_t j = 0; j < n; ++j) {
        if (j > i && d.h(i, j) != 0) c.fail("not lower triangular");
        if (j < i && (d.h(i, j) > 0 || -d.h(i, j) >= d.h(i, i))) c.fail("off-diagonal entry not reduced");
      }
    }
    ++done;
  }
  int vectors = 0;
  while (vectors < 200 && c.ok) {
    const std::size_t n = 1 + size(rng) % 6;
    IntegerVector r(n);
    for (auto& v : r) v = entry(rng) * (1 + static_cast<long>(size(rng)));
    if (gcd_vector(r) != 1) continue;
    const auto pos = vectors % 2 ? ColumnPosition::first : ColumnPosition::last;
    IntegerMatrix u = unimodular_completion(r, pos);
    const std::size_t col = pos == ColumnPosition::first ? 0 : n - 1;
    if (abs(determinant(u)) != 1) c.fail("completion not unimodular");
    for (std::size_t i = 0; i < n; ++i)
      if (u(i, col) != r[i]) c.fail("column differs from r");
    // U^{-1} r is the unit vector of that column, hence integral.
    RationalVector x;
    if (!solve(to_rational(u), to_rational(r), x)) c.fail("singular completion");
    for (std::size_t i = 0; i < n; ++i)
      if (x[i] != (i == col ? 1 : 0)) c.fail("U^{-1} r is not a unit vector");
    ++vectors;
  }
  return c;
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Check()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const unsigned long seed = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 0;
  Rng rng(seed);
  std::vector<Criterion> all = {
      {1, "union formulations match brute-force unions on 100 random pairs", 60, [&] { return criterion_unions(rng); }},
      {2, "union_ideal is ideal on 50 random instances", 120, [&] { return criterion_ideal(rng); }},
      {3, "parity cube n=2..6 gives w = 2^(n-1), bound n-1", 10, [] { return criterion_parity(); }},
      {4, "primes <= 50 give a clique >= 3 and bound >= 2", 1, [] { return criterion_primes(); }},
      {5, "200 periodic sets round-trip through MILP and re-detection", 60, [&] { return criterion_naturals(rng); }},
      {6, "s_epsilon (eps 2/5) has no period <= 500 on [0, 100000]", 120, [] { return criterion_s_epsilon(); }},
      {7, "staircase values 1, 0, 3/2, 3, 9/2 with one head segment", 5, [] { return criterion_staircase(); }},
      {8, "bounded decomposition reconstructs union of [k, k+1/2], k=0..10", 5, [] { return criterion_decomposition(); }},
      {9, "Brunn-Minkowski gap >= 0 and equality iff homothety", 120, [&] { return criterion_brunn_minkowski(rng); }},
      {10, "support function midpoint concavity on 100 triples", 60, [&] { return criterion_support_concavity(rng); }},
      {11, "HNF on 1000 matrices, unimodular completion on 200 vectors", 30, [&] { return criterion_hnf(rng); }},
  };
  int failures = 0;
  for (const auto& cr : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Check result;
    try {
      result = cr.run();
    } catch (const std::exception& e) {
      result.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (result.ok && secs > cr.limit_s) result.fail("time limit exceeded");
    failures += !result.ok;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (result.ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " [" << secs << " s / "
         << cr.limit_s << " s]";
    if (!result.detail.empty()) line << " - " << result.detail;
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
