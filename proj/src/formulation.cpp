// SPDX-License-Identifier: Apache-2.0
#include "micp/formulation.hpp"

#include <numeric>

#include "micp/lattice.hpp"

namespace micp {

void MicpFormulation::validate() const {
  if (n + p + d != set.ambient_dim()) throw Error("formulation partition does not match the ambient dimension");
}

namespace {

std::vector<std::size_t> range(std::size_t from, std::size_t count) {
  std::vector<std::size_t> out(count);
  std::iota(out.begin(), out.end(), from);
  return out;
}

std::vector<std::size_t> concat(std::initializer_list<std::vector<std::size_t>> parts) {
  std::vector<std::size_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

RationalVector unit(std::size_t dim, std::size_t i, int value = 1) {
  RationalVector v(dim);
  v[i] = value;
  return v;
}

// x_j - sum_k sign_k * other_k_j = 0 for every coordinate j.
void link_sum(ConicSet& m, std::size_t x, const std::vector<std::size_t>& parts, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector row(m.ambient_dim());
    row[x + j] = 1;
    for (auto p : parts) row[p + j] -= 1;
    m.add_equality(row, 0);
  }
}

void add_selector(ConicSet& m, std::size_t z, std::size_t k) {
  RationalVector row(m.ambient_dim());
  for (std::size_t i = 0; i < k; ++i) row[z + i] = 1;
  m.add_equality(row, 1);
  for (std::size_t i = 0; i < k; ++i) {
    m.add_lower_bound(z + i, 0);
    m.add_upper_bound(z + i, 1);
  }
}

void check_sets(const std::vector<ConicSet>& sets, std::size_t n) {
  if (sets.empty()) throw Error("empty input list");
  for (const auto& s : sets)
    if (s.ambient_dim() < n) throw Error("dimension mismatch");
}

bool bounded_polyhedron(const ConicSet& s) {
  auto p = to_polyhedron(s);
  if (!p) return false;
  PolyhedronH cone(p->a(), RationalVector(p->b().size()), p->e(), RationalVector(p->f().size()));
  for (std::size_t j = 0; j < cone.dim(); ++j) {
    Interval iv = to_interval(fm_project(cone, {j}));
    if (!iv.lo || !iv.hi || *iv.lo != 0 || *iv.hi != 0) return false;
  }
  return true;
}

enum class NormRows { None, Full, XOnly };

MicpFormulation disjunctive_union(const std::vector<ConicSet>& sets, std::size_t n, NormRows norms,
                                  const std::string& provenance) {
  check_sets(sets, n);
  const std::size_t k = sets.size();
  std::vector<std::size_t> start(k);
  std::size_t cursor = n;
  for (std::size_t i = 0; i < k; ++i) {
    start[i] = cursor;
    cursor += sets[i].ambient_dim();
  }
  const std::size_t t_begin = cursor;
  const std::size_t t_count = norms == NormRows::None ? 0 : k;
  const std::size_t z_begin = t_begin + t_count;
  const std::size_t dim = z_begin + k;

  ConicSet m(dim);
  std::vector<std::size_t> xs;
  for (std::size_t i = 0; i < k; ++i) xs.push_back(start[i]);
  link_sum(m, 0, xs, n);
  for (std::size_t i = 0; i < k; ++i) {
    auto map = range(start[i], sets[i].ambient_dim());
    map.push_back(z_begin + i);
    m.append(conic_hull(sets[i]), map);
  }
  add_selector(m, z_begin, k);
  if (norms != NormRows::None) {
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<AffineRow> rows{{unit(dim, z_begin + i), 0}, {unit(dim, t_begin + i), 0}};
      std::size_t width = norms == NormRows::Full ? sets[i].ambient_dim() : n;
      for (std::size_t j = 0; j < width; ++j) rows.push_back({unit(dim, start[i] + j), 0});
      m.add_block(ConeKind::RotatedSecondOrder, rows);
    }
  }
  MicpFormulation f{std::move(m), n, z_begin - n, k, provenance};
  f.validate();
  return f;
}

}  // namespace

MicpFormulation combine(CombineOp op, const MicpFormulation& f1, const MicpFormulation& f2) {
  f1.validate();
  f2.validate();
  if (op != CombineOp::Product && f1.n != f2.n) throw Error("dimension mismatch");
  const std::size_t d = f1.d + f2.d;
  switch (op) {
    case CombineOp::Product: {
      const std::size_t n = f1.n + f2.n;
      const std::size_t p = f1.p + f2.p;
      ConicSet m(n + p + d);
      m.append(f1.set, concat({range(0, f1.n), range(n, f1.p), range(n + p, f1.d)}));
      m.append(f2.set, concat({range(f1.n, f2.n), range(n + f1.p, f2.p), range(n + p + f1.d, f2.d)}));
      return {std::move(m), n, p, d, "product(" + f1.provenance + ", " + f2.provenance + ")"};
    }
    case CombineOp::Intersection: {
      const std::size_t n = f1.n;
      const std::size_t p = f1.p + f2.p;
      ConicSet m(n + p + d);
      m.append(f1.set, concat({range(0, n), range(n, f1.p), range(n + p, f1.d)}));
      m.append(f2.set, concat({range(0, n), range(n + f1.p, f2.p), range(n + p + f1.d, f2.d)}));
      return {std::move(m), n, p, d, "intersection(" + f1.provenance + ", " + f2.provenance + ")"};
    }
    case CombineOp::MinkowskiSum: {
      const std::size_t n = f1.n;
      const std::size_t s1 = n;
      const std::size_t s2 = s1 + n + f1.p;
      const std::size_t p = 2 * n + f1.p + f2.p;
      ConicSet m(n + p + d);
      link_sum(m, 0, {s1, s2}, n);
      m.append(f1.set, concat({range(s1, n + f1.p), range(n + p, f1.d)}));
      m.append(f2.set, concat({range(s2, n + f2.p), range(n + p + f1.d, f2.d)}));
      return {std::move(m), n, p, d, "minkowski_sum(" + f1.provenance + ", " + f2.provenance + ")"};
    }
  }
  throw Error("unknown combine operation");
}

bool recession_cones_agree(const ConicSet& a, const ConicSet& b, std::size_t samples) {
  if (a.ambient_dim() != b.ambient_dim()) return false;
  const std::size_t n = a.ambient_dim();
  ConicSet ra = recession_cone(a);
  ConicSet rb = recession_cone(b);
  // Lattice directions in {-1, 0, 1}^n, then larger entries if needed.
  std::size_t checked = 0;
  for (int radius = 1; checked < samples && radius <= 3 && n > 0; ++radius) {
    IntegerVector v(n, Integer(-radius));
    while (checked < samples) {
      bool nonzero = false;
      for (const auto& x : v) nonzero = nonzero || x != 0;
      if (nonzero) {
        auto rv = to_rational(v);
        if (ra.contains(rv) != rb.contains(rv)) return false;
        ++checked;
      }
      std::size_t i = n;
      while (i > 0 && v[i - 1] == radius) {
        v[i - 1] = -radius;
        --i;
      }
      if (i == 0) break;
      ++v[i - 1];
    }
  }
  return true;
}

MicpFormulation union_basic(const std::vector<ConicSet>& sets, std::size_t n) {
  auto f = disjunctive_union(sets, n, NormRows::None, "union_basic");
  for (std::size_t i = 1; i < sets.size(); ++i)
    if (sets[i].ambient_dim() != sets[0].ambient_dim() || !recession_cones_agree(sets[0], sets[i])) {
      f.provenance += " [warning: recession cones appear to differ]";
      break;
    }
  return f;
}

MicpFormulation union_projected(const std::vector<ConicSet>& sets, std::size_t n) {
  return disjunctive_union(sets, n, NormRows::Full, "union_projected");
}

MicpFormulation union_ideal(const std::vector<ConicSet>& sets, std::size_t n) {
  check_sets(sets, n);
  bool all_bounded = true;
  for (const auto& s : sets) all_bounded = all_bounded && bounded_polyhedron(s);
  return disjunctive_union(sets, n, all_bounded ? NormRows::None : NormRows::XOnly, "union_ideal");
}

MicpFormulation union_rational(const MicpFormulation& f1, const MicpFormulation& f2) {
  f1.validate();
  f2.validate();
  if (f1.n != f2.n) throw Error("dimension mismatch");
  const std::size_t n = f1.n;
  const std::size_t s1 = n;
  const std::size_t s2 = s1 + n + f1.p;
  const std::size_t t = s2 + n + f2.p;
  const std::size_t z1 = t + 1;
  const std::size_t z2 = z1 + f1.d;
  const std::size_t zp = z2 + f2.d;
  const std::size_t dim = zp + 1;

  ConicSet m(dim);
  m.append(f1.set, concat({range(s1, n + f1.p), range(z1, f1.d)}));
  m.append(f2.set, concat({range(s2, n + f2.p), range(z2, f2.d)}));
  auto pull = [&](std::size_t other, const AffineRow& product) {
    std::vector<AffineRow> rows{product, {unit(dim, t), 0}};
    for (std::size_t j = 0; j < n; ++j) {
      RationalVector r(dim);
      r[j] = 1;
      r[other + j] = -1;
      rows.push_back({r, 0});
    }
    m.add_block(ConeKind::RotatedSecondOrder, rows);
  };
  pull(s1, {unit(dim, zp), 0});
  pull(s2, {unit(dim, zp, -1), 1});
  m.add_lower_bound(zp, 0);
  m.add_upper_bound(zp, 1);
  return {std::move(m), n, z1 - n, f1.d + f2.d + 1, "union_rational(" + f1.provenance + ", " + f2.provenance + ")"};
}

IdealReport check_ideal(const MicpFormulation& f) {
  f.validate();
  IdealReport report;
  if (f.d == 0) {
    report.detail = "no integer variables";
    return report;
  }
  auto poly = to_polyhedron(f.set);
  if (!poly) throw Error("formulation is not polyhedral");
  PolyhedronV v = vertices_and_rays(*poly);
  for (const auto& line : v.lines)
    for (std::size_t k = 0; k < f.d; ++k)
      if (line[f.z_begin() + k] != 0) {
        report.verdict = IdealVerdict::Indeterminate;
        report.detail = "lineality space moves the integer variables";
        return report;
      }
  for (const auto& vert : v.vertices)
    for (std::size_t k = 0; k < f.d; ++k)
      if (!is_integer(vert[f.z_begin() + k])) {
        report.verdict = IdealVerdict::NotIdeal;
        report.witness = vert;
        report.detail = "minimal face with fractional z";
        return report;
      }
  report.detail = v.vertices.empty() ? "empty relaxation" : "every minimal face has integral z";
  return report;
}

MicpFormulation reindex_unimodular(const MicpFormulation& f, const IntegerMatrix& u) {
  f.validate();
  if (u.rows() != f.d || u.cols() != f.d || !is_unimodular(u)) throw Error("non-unimodular matrix");
  const auto& a = f.set.a();
  RationalMatrix na = a;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 0; j < f.d; ++j) {
      Rational s = 0;
      for (std::size_t k = 0; k < f.d; ++k) s += a(r, f.z_begin() + k) * u(k, j);
      na(r, f.z_begin() + j) = s;
    }
  return {ConicSet(std::move(na), f.set.b(), f.set.cones()), f.n, f.p, f.d, "reindex(" + f.provenance + ")"};
}

MicpFormulation relax_first_integer(const MicpFormulation& f) {
  f.validate();
  if (f.d == 0) throw Error("no integer variable to relax");
  return {f.set, f.n, f.p + 1, f.d - 1, "relax(" + f.provenance + ")"};
}

MicpFormulation polyhedral_formulation(const PolyhedronH& m, std::size_t n, std::size_t p, std::size_t d,
                                       std::string provenance) {
  MicpFormulation f{from_polyhedron(m), n, p, d, std::move(provenance)};
  f.validate();
  return f;
}

}  // namespace micp
