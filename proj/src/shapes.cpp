// SPDX-License-Identifier: Apache-2.0
#include "micp/shapes.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace micp {

namespace {

std::size_t dim_of(const PolyhedronV& p) {
  if (p.vertices.empty()) throw Error("empty polytope");
  if (!p.bounded()) throw Error("unbounded polytope");
  const std::size_t n = p.vertices[0].size();
  if (n == 0 || n > kShapeMaxDim) throw Error("dimension must be 1, 2 or 3");
  for (const auto& v : p.vertices)
    if (v.size() != n) throw Error("dimension mismatch");
  return n;
}

RationalVector sub(const RationalVector& a, const RationalVector& b) {
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational cross2(const RationalVector& o, const RationalVector& a, const RationalVector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

RationalVector cross3(const RationalVector& a, const RationalVector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Rational det3(const RationalVector& a, const RationalVector& b, const RationalVector& c) { return dot(a, cross3(b, c)); }

// Counter-clockwise hull without collinear points (monotone chain).
std::vector<RationalVector> hull2_ccw(std::vector<RationalVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<RationalVector> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct Facet {
  RationalVector normal;  // outward, first nonzero entry of magnitude 1
  Rational offset;        // normal . x <= offset
  std::vector<RationalVector> polygon;  // cyclic order
};

struct Hull3 {
  std::vector<Facet> facets;
  std::vector<RationalVector> vertices;
  bool degenerate = false;
};

Hull3 hull3(std::vector<RationalVector> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Hull3 out;
  const std::size_t m = pts.size();
  std::map<std::pair<RationalVector, Rational>, bool> seen;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        RationalVector nrm = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (std::all_of(nrm.begin(), nrm.end(), [](const Rational& v) { return v == 0; })) continue;
        bool le = true, ge = true, all_on = true;
        for (const auto& p : pts) {
          Rational s = dot(nrm, sub(p, pts[i]));
          if (s > 0) le = false;
          if (s < 0) ge = false;
          if (s != 0) all_on = false;
        }
        if (all_on) {
          out.degenerate = true;
          return out;
        }
        if (!le && !ge) continue;
        if (ge)
          for (auto& v : nrm) v = -v;
        Rational scale;
        for (const auto& v : nrm)
          if (v != 0) {
            scale = abs(v);
            break;
          }
        for (auto& v : nrm) v /= scale;
        Rational off = dot(nrm, pts[i]);
        if (!seen.emplace(std::make_pair(nrm, off), true).second) continue;

        std::size_t axis = 0;
        while (nrm[axis] == 0) ++axis;
        std::vector<RationalVector> on, flat;
        for (const auto& p : pts)
          if (dot(nrm, p) == off) on.push_back(p);
        std::map<RationalVector, RationalVector> lift;
        for (const auto& p : on) {
          RationalVector q;
          for (std::size_t c = 0; c < 3; ++c)
            if (c != axis) q.push_back(p[c]);
          lift[q] = p;
          flat.push_back(std::move(q));
        }
        Facet f{nrm, off, {}};
        for (const auto& q : hull2_ccw(flat)) f.polygon.push_back(lift[q]);
        out.facets.push_back(std::move(f));
      }
  std::set<RationalVector> verts;
  for (const auto& f : out.facets) verts.insert(f.polygon.begin(), f.polygon.end());
  out.vertices.assign(verts.begin(), verts.end());
  if (out.facets.empty()) out.degenerate = true;
  return out;
}

// Outward edge constraints of a 2D hull with at least three vertices.
bool inside2(const std::vector<RationalVector>& ccw, const RationalVector& x) {
  for (std::size_t i = 0; i < ccw.size(); ++i)
    if (cross2(ccw[i], ccw[(i + 1) % ccw.size()], x) < 0) return false;
  return true;
}

bool on_segment(const RationalVector& a, const RationalVector& b, const RationalVector& x) {
  if (cross2(a, b, x) != 0) return false;
  for (std::size_t c = 0; c < 2; ++c)
    if (x[c] < std::min(a[c], b[c]) || x[c] > std::max(a[c], b[c])) return false;
  return true;
}

// Floor of q^(1/n) at 2^-bits resolution: lo <= root <= lo + 2^-bits.
Rational root_floor(const Rational& q, unsigned n, unsigned bits) {
  Integer scale = 1;
  scale <<= bits;
  Integer pow = 1;
  for (unsigned i = 0; i < n; ++i) pow *= scale;
  Integer x = floor_of(q * Rational(pow));
  Integer r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), n);
  return make_rational(r, scale);
}

Rational power(const Rational& q, unsigned n) {
  Rational out = 1;
  for (unsigned i = 0; i < n; ++i) out *= q;
  return out;
}

}  // namespace

std::vector<RationalVector> hull_vertices(const std::vector<RationalVector>& points) {
  if (points.empty()) throw Error("empty polytope");
  const std::size_t n = points[0].size();
  for (const auto& p : points)
    if (p.size() != n) throw Error("dimension mismatch");
  if (n == 0 || n > kShapeMaxDim) throw Error("dimension must be 1, 2 or 3");
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end());
    if (*lo == *hi) return {*lo};
    return {*lo, *hi};
  }
  if (n == 2) {
    auto h = hull2_ccw(points);
    std::sort(h.begin(), h.end());
    return h;
  }
  Hull3 h = hull3(points);
  if (h.degenerate) throw Error("degenerate polytope");
  return h.vertices;
}

Rational polytope_volume(const PolyhedronV& p) {
  const std::size_t n = dim_of(p);
  if (n == 1) {
    auto h = hull_vertices(p.vertices);
    return h.size() == 1 ? Rational(0) : Rational(h[1][0] - h[0][0]);
  }
  if (n == 2) {
    auto h = hull2_ccw(p.vertices);
    if (h.size() < 3) return 0;
    Rational twice = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const auto& a = h[i];
      const auto& b = h[(i + 1) % h.size()];
      twice += a[0] * b[1] - a[1] * b[0];
    }
    return abs(twice) / 2;
  }
  Hull3 h = hull3(p.vertices);
  if (h.degenerate) return 0;
  // Pulling triangulation from the lowest vertex.
  const RationalVector& c = h.vertices.front();
  Rational six = 0;
  for (const auto& f : h.facets) {
    if (dot(f.normal, c) == f.offset) continue;
    const auto& poly = f.polygon;
    for (std::size_t i = 1; i + 1 < poly.size(); ++i)
      six += abs(det3(sub(poly[0], c), sub(poly[i], c), sub(poly[i + 1], c)));
  }
  return six / 6;
}

bool polytope_contains(const PolyhedronV& p, const RationalVector& x) {
  const std::size_t n = dim_of(p);
  if (x.size() != n) throw Error("dimension mismatch");
  if (n == 1) {
    auto h = hull_vertices(p.vertices);
    return x[0] >= h.front()[0] && x[0] <= h.back()[0];
  }
  if (n == 2) {
    auto h = hull2_ccw(p.vertices);
    if (h.size() == 1) return x == h[0];
    if (h.size() == 2) return on_segment(h[0], h[1], x);
    return inside2(h, x);
  }
  Hull3 h = hull3(p.vertices);
  if (h.degenerate) throw Error("degenerate polytope");
  return std::all_of(h.facets.begin(), h.facets.end(), [&](const Facet& f) { return dot(f.normal, x) <= f.offset; });
}

PolyhedronV minkowski_sum(const PolyhedronV& p, const PolyhedronV& q) {
  const std::size_t n = dim_of(p);
  if (dim_of(q) != n) throw Error("dimension mismatch");
  std::vector<RationalVector> sums;
  for (const auto& a : hull_vertices(p.vertices))
    for (const auto& b : hull_vertices(q.vertices)) {
      RationalVector s(n);
      for (std::size_t i = 0; i < n; ++i) s[i] = a[i] + b[i];
      sums.push_back(std::move(s));
    }
  return {hull_vertices(sums), {}, {}};
}

PolyhedronV scale_translate(const PolyhedronV& p, const Rational& s, const RationalVector& v) {
  const std::size_t n = dim_of(p);
  if (v.size() != n) throw Error("dimension mismatch");
  PolyhedronV out;
  for (const auto& a : p.vertices) {
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = s * a[i] + v[i];
    out.vertices.push_back(std::move(b));
  }
  return out;
}

TranslationResult translation_equivalent(const PolyhedronV& p, const PolyhedronV& q) {
  const std::size_t n = dim_of(p);
  if (dim_of(q) != n) throw Error("dimension mismatch");
  auto hp = hull_vertices(p.vertices);
  auto hq = hull_vertices(q.vertices);
  TranslationResult out;
  if (hp.size() != hq.size()) return out;
  RationalVector v = sub(hq[0], hp[0]);
  for (std::size_t i = 0; i < hp.size(); ++i)
    for (std::size_t c = 0; c < n; ++c)
      if (hp[i][c] + v[c] != hq[i][c]) return out;
  out.equivalent = true;
  out.v = std::move(v);
  return out;
}

const char* homothety_outcome_name(HomothetyOutcome o) {
  switch (o) {
    case HomothetyOutcome::Homothetic: return "homothetic";
    case HomothetyOutcome::NotHomothetic: return "not_homothetic";
    case HomothetyOutcome::IrrationalRatio: return "irrational_ratio";
  }
  return "?";
}

HomothetyResult homothety_equivalent(const PolyhedronV& p, const PolyhedronV& q) {
  const std::size_t n = dim_of(p);
  if (dim_of(q) != n) throw Error("dimension mismatch");
  HomothetyResult out;
  if (hull_vertices(p.vertices).size() != hull_vertices(q.vertices).size()) return out;
  Rational vp = polytope_volume(p);
  Rational vq = polytope_volume(q);
  if (vp == 0 || vq == 0) throw Error("degenerate polytope");
  // Any homothety between rational polytopes has the rational scale
  // width(q) / width(p); the volume ratio must be its n-th power.
  auto width = [](const PolyhedronV& r) {
    auto [lo, hi] = std::minmax_element(r.vertices.begin(), r.vertices.end(),
                                        [](const RationalVector& a, const RationalVector& b) { return a[0] < b[0]; });
    return Rational((*hi)[0] - (*lo)[0]);
  };
  const Rational s = width(q) / width(p);
  Rational root;
  if (!exact_root(vq / vp, static_cast<unsigned>(n), root)) return out;
  if (root != s) return out;
  auto t = translation_equivalent(scale_translate(p, s, RationalVector(n)), q);
  if (!t.equivalent) return out;
  out.outcome = HomothetyOutcome::Homothetic;
  out.scale = s;
  out.translation = std::move(t.v);
  return out;
}

BrunnMinkowskiGap brunn_minkowski_gap(const PolyhedronV& p, const PolyhedronV& q) {
  const std::size_t n = dim_of(p);
  if (dim_of(q) != n) throw Error("dimension mismatch");
  const unsigned un = static_cast<unsigned>(n);
  BrunnMinkowskiGap out;
  const Rational a = polytope_volume(p);
  const Rational b = polytope_volume(q);
  out.mixed_volume = polytope_volume(scale_translate(minkowski_sum(p, q), Rational(1, 2), RationalVector(n)));
  const Rational& v = out.mixed_volume;

  Rational ra, rb;
  const bool rational_roots = exact_root(a, un, ra) && exact_root(b, un, rb);
  if (rational_roots) {
    out.surrogate = v - power((ra + rb) / 2, un);
  } else {
    out.exact = false;
    Rational la = root_floor(a, un, 64), lb = root_floor(b, un, 64);
    out.surrogate = v - power((la + lb) / 2, un);
  }

  // Sign of (2^n v)^(1/n) - a^(1/n) - b^(1/n) by cross-powering.
  const Rational big = power(Rational(2), un) * v;
  if (n == 1) {
    Rational g = big - a - b;
    out.sign = g > 0 ? 1 : (g < 0 ? -1 : 0);
  } else if (n == 2) {
    // 2 sqrt(v) vs sqrt(a) + sqrt(b)  <=>  4v - a - b vs 2 sqrt(ab)
    Rational d = big - a - b;
    if (d < 0) {
      out.sign = -1;
    } else {
      Rational g = d * d - 4 * a * b;
      out.sign = g > 0 ? 1 : (g < 0 ? -1 : 0);
    }
  } else {
    // y = cbrt(8v), s = cbrt(a) + cbrt(b) both solve t^3 - 3 cbrt(ab) t = a + b
    // when y = s, whose positive root is unique; equality is therefore
    // 27 ab (8v) = (8v - a - b)^3.
    Rational d = big - a - b;
    if (27 * a * b * big == d * d * d) {
      out.sign = 0;
    } else {
      for (unsigned bits = 64;; bits *= 2) {
        const Rational eps = make_rational(1, Integer(1) << bits);
        Rational ly = root_floor(big, 3, bits), la = root_floor(a, 3, bits), lb = root_floor(b, 3, bits);
        if (ly > la + lb + 2 * eps) {
          out.sign = 1;
          break;
        }
        if (ly + eps < la + lb) {
          out.sign = -1;
          break;
        }
      }
    }
  }
  if (rational_roots) out.sign = out.surrogate > 0 ? 1 : (out.surrogate < 0 ? -1 : 0);
  return out;
}

const char* family_verdict_name(FamilyVerdict v) {
  switch (v) {
    case FamilyVerdict::TheoremConsistent: return "theorem_consistent";
    case FamilyVerdict::HypothesisViolated: return "hypothesis_violated";
    case FamilyVerdict::CounterexampleCandidate: return "counterexample_candidate";
    case FamilyVerdict::VolumesDiffer: return "volumes_differ";
  }
  return "?";
}

FamilyReport classify_family(const IndexedFamily& f) {
  if (f.members.empty()) throw Error("empty family");
  if (f.members.size() != f.index_points.size()) throw Error("index and member counts differ");
  const std::size_t m = f.members.size();
  const std::size_t n = dim_of(f.members[0]);
  for (const auto& mem : f.members)
    if (dim_of(mem) != n) throw Error("dimension mismatch");

  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.index_points[a] < f.index_points[b]; });

  FamilyReport out;
  for (const auto& mem : f.members) out.volumes.push_back(polytope_volume(mem));

  std::map<std::vector<int>, std::vector<std::size_t>> by_parity;
  for (auto i : order) {
    std::vector<int> key;
    for (const auto& c : f.index_points[i]) key.push_back(mpz_odd_p(c.get_mpz_t()) ? 1 : 0);
    by_parity[key].push_back(i);
  }
  for (auto& [key, idx] : by_parity) out.parity_classes.push_back(idx);

  // Midpoint containment: the member at (z + z') / 2 must contain the
  // Minkowski average of the members at z and z'.
  std::map<IntegerVector, std::size_t> where;
  for (std::size_t i = 0; i < m; ++i) where[f.index_points[i]] = i;
  for (std::size_t a = 0; a < m && !out.violation; ++a)
    for (std::size_t b = a + 1; b < m && !out.violation; ++b) {
      const auto& za = f.index_points[order[a]];
      const auto& zb = f.index_points[order[b]];
      IntegerVector mid(za.size());
      bool integral = true;
      for (std::size_t c = 0; c < za.size() && integral; ++c) {
        Integer s = za[c] + zb[c];
        if (mpz_odd_p(s.get_mpz_t())) integral = false;
        mid[c] = s / 2;
      }
      if (!integral) continue;
      auto it = where.find(mid);
      if (it == where.end()) continue;
      PolyhedronV avg = scale_translate(minkowski_sum(f.members[order[a]], f.members[order[b]]), Rational(1, 2), RationalVector(n));
      for (const auto& v : avg.vertices)
        if (!polytope_contains(f.members[it->second], v)) {
          out.violation = std::vector<std::size_t>{order[a], order[b], it->second};
          break;
        }
    }

  const bool equal_volumes = std::all_of(out.volumes.begin(), out.volumes.end(), [&](const Rational& v) { return v == out.volumes[0]; });
  if (!equal_volumes) {
    out.verdict = FamilyVerdict::VolumesDiffer;
    for (auto i : order) {
      bool placed = false;
      for (auto& cls : out.homothety_classes)
        if (homothety_equivalent(f.members[cls[0]], f.members[i]).outcome == HomothetyOutcome::Homothetic) {
          cls.push_back(i);
          placed = true;
          break;
        }
      if (!placed) out.homothety_classes.push_back({i});
    }
    out.detail = "volumes differ; the equal-volume hypothesis is not met";
    return out;
  }

  for (const auto& cls : out.parity_classes) {
    std::vector<std::size_t> reps;
    for (auto i : cls) {
      bool found = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) {
        return translation_equivalent(f.members[r], f.members[i]).equivalent;
      });
      if (!found) {
        if (!reps.empty() && !out.counterexample) out.counterexample = std::make_pair(reps[0], i);
        reps.push_back(i);
      }
    }
    out.representatives.insert(out.representatives.end(), reps.begin(), reps.end());
  }
  if (out.violation) {
    out.verdict = FamilyVerdict::HypothesisViolated;
    out.detail = "midpoint member does not contain the Minkowski average; not a convex family";
  } else if (out.counterexample) {
    out.verdict = FamilyVerdict::CounterexampleCandidate;
    out.detail = "same-parity members are not translates although no convexity failure was found";
  } else {
    out.verdict = FamilyVerdict::TheoremConsistent;
    out.detail = "every parity class is a single translation class";
  }
  return out;
}

}  // namespace micp
