// SPDX-License-Identifier: Apache-2.0
#include "micp/decompose.hpp"

#include <algorithm>

namespace micp {

namespace {

void check_input(const BoundedInput& m) {
  if (m.points.empty()) throw Error("empty point list");
  if (m.d == 0) throw Error("decomposition needs at least one integer variable");
  const std::size_t dim = m.n + m.p + m.d;
  for (const auto& pt : m.points)
    if (pt.size() != dim) throw Error("dimension mismatch");
  for (const auto& r : m.rays)
    if (r.size() != dim) throw Error("dimension mismatch");
}

// Columns: x | y | lambda | ray multipliers | z.
MicpFormulation build(const BoundedInput& m, bool unit_box) {
  check_input(m);
  const std::size_t dim = m.n + m.p + m.d;
  const std::size_t np = m.points.size();
  const std::size_t nr = m.rays.size();
  const std::size_t lam = m.n + m.p;
  const std::size_t gam = lam + np;
  const std::size_t zb = gam + nr;
  const std::size_t total = zb + m.d;
  auto column_of = [&](std::size_t coord) { return coord < m.n + m.p ? coord : zb + (coord - m.n - m.p); };

  PolyhedronH poly(total);
  for (std::size_t c = 0; c < dim; ++c) {
    RationalVector row(total);
    row[column_of(c)] = 1;
    for (std::size_t i = 0; i < np; ++i) row[lam + i] = -m.points[i][c];
    for (std::size_t j = 0; j < nr; ++j) row[gam + j] = -Rational(m.rays[j][c]);
    poly.add_equality(row, 0);
  }
  RationalVector simplex(total);
  for (std::size_t i = 0; i < np; ++i) {
    simplex[lam + i] = 1;
    RationalVector row(total);
    row[lam + i] = -1;
    poly.add_inequality(row, 0);
  }
  poly.add_equality(simplex, 1);
  for (std::size_t j = 0; j < nr; ++j) {
    RationalVector row(total);
    row[gam + j] = -1;
    poly.add_inequality(row, 0);
    if (unit_box) {
      row[gam + j] = 1;
      poly.add_inequality(row, 1);
    }
  }
  return polyhedral_formulation(poly, m.n, m.p + np + nr, m.d, unit_box ? "conv + unit ray box" : "conv + cone");
}

PolyhedronH translate(const PolyhedronH& p, const RationalVector& s) {
  PolyhedronH out(p.dim());
  for (std::size_t r = 0; r < p.a().rows(); ++r) {
    auto row = p.a().row(r);
    out.add_inequality(row, p.b()[r] + dot(row, s));
  }
  for (std::size_t r = 0; r < p.e().rows(); ++r) {
    auto row = p.e().row(r);
    out.add_equality(row, p.f()[r] + dot(row, s));
  }
  return out;
}

bool interval_less(const Interval& a, const Interval& b) {
  if (!a.lo) return b.lo.has_value();
  if (!b.lo) return false;
  return *a.lo < *b.lo;
}

}  // namespace

MicpFormulation bounded_input_formulation(const BoundedInput& m) { return build(m, false); }

Decomposition decompose_bounded(const BoundedInput& m) {
  MicpFormulation f = build(m, true);
  IntegerBox window;
  for (std::size_t k = 0; k < m.d; ++k) {
    const std::size_t c = m.n + m.p + k;
    Rational lo = m.points[0][c];
    Rational hi = m.points[0][c];
    for (const auto& pt : m.points) {
      lo = std::min(lo, pt[c]);
      hi = std::max(hi, pt[c]);
    }
    for (const auto& r : m.rays) {
      if (r[c] < 0) lo += Rational(r[c]);
      if (r[c] > 0) hi += Rational(r[c]);
    }
    window.lo.push_back(ceil_of(lo));
    window.hi.push_back(floor_of(hi));
  }
  SliceOptions opts;
  opts.window = window;
  SliceFamily fam = enumerate_slices(f, opts);
  Decomposition out;
  for (auto& s : fam.slices) out.pieces.push_back({s.z, std::move(*s.x_set)});
  out.rays = m.rays;
  for (const auto& r : m.rays) {
    RationalVector rx(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(m.n));
    if (std::any_of(rx.begin(), rx.end(), [](const Rational& v) { return v != 0; })) out.rays_x.push_back(rx);
  }
  return out;
}

std::vector<Interval> merge_intervals(std::vector<Interval> parts) {
  parts.erase(std::remove_if(parts.begin(), parts.end(), [](const Interval& i) { return i.empty; }), parts.end());
  std::sort(parts.begin(), parts.end(), interval_less);
  std::vector<Interval> out;
  for (const auto& iv : parts) {
    if (!out.empty()) {
      Interval& last = out.back();
      bool touches = !last.hi || !iv.lo || *iv.lo <= *last.hi;
      if (touches) {
        if (last.hi && (!iv.hi || *iv.hi > *last.hi)) last.hi = iv.hi;
        continue;
      }
    }
    out.push_back(iv);
  }
  return out;
}

ReconstructionCheck verify_decomposition(const BoundedInput& m, const Decomposition& dec, const IntegerBox& z_window,
                                         const RationalVector& x_lo, const RationalVector& x_hi, unsigned grid) {
  if (x_lo.size() != m.n || x_hi.size() != m.n) throw Error("dimension mismatch");
  MicpFormulation direct = bounded_input_formulation(m);
  const PolyhedronH clip = PolyhedronH::box(x_lo, x_hi);

  // Multiplier cap: enough translates to sweep both windows.
  Rational span = 0;
  for (std::size_t k = 0; k < m.d; ++k) span = std::max(span, Rational(z_window.hi[k] - z_window.lo[k]));
  for (std::size_t j = 0; j < m.n; ++j) span = std::max(span, Rational(x_hi[j] - x_lo[j]));
  Rational step = 0;
  for (const auto& r : m.rays)
    for (std::size_t c = 0; c < r.size(); ++c)
      if (c < m.n || c >= m.n + m.p)
        if (r[c] != 0 && (step == 0 || abs(Rational(r[c])) < step)) step = abs(Rational(r[c]));
  for (const auto& piece : dec.pieces)
    for (std::size_t j = 0; j < m.n; ++j) {
      auto iv = to_interval(fm_project(piece.x_set, {j}));
      if (iv.lo) span = std::max(span, Rational(abs(*iv.lo - x_lo[j]) + abs(*iv.lo - x_hi[j])));
    }
  Integer cap = step == 0 ? Integer(0) : Integer(ceil_of(span / step) + 2);

  std::vector<IntegerVector> combos;
  {
    IntegerBox mult;
    mult.lo.assign(dec.rays.size(), Integer(0));
    mult.hi.assign(dec.rays.size(), cap);
    combos = mult.points();
  }

  ReconstructionCheck out;
  for (const auto& z : z_window.points()) {
    Slice s = slice(direct, z);
    std::vector<PolyhedronH> translates;
    for (const auto& piece : dec.pieces)
      for (const auto& mu : combos) {
        IntegerVector zz = piece.z;
        RationalVector shift(m.n);
        for (std::size_t j = 0; j < dec.rays.size(); ++j) {
          for (std::size_t k = 0; k < m.d; ++k) zz[k] += mu[j] * dec.rays[j][m.n + m.p + k];
          for (std::size_t c = 0; c < m.n; ++c) shift[c] += Rational(mu[j] * dec.rays[j][c]);
        }
        if (zz != z) continue;
        translates.push_back(translate(piece.x_set, shift));
      }

    if (m.n == 1) {
      std::vector<Interval> lhs;
      if (!s.empty) {
        PolyhedronH c = s.x_set->intersect(clip);
        lhs.push_back(to_interval(c));
      }
      std::vector<Interval> rhs;
      for (const auto& t : translates) rhs.push_back(to_interval(t.intersect(clip)));
      if (merge_intervals(lhs) != merge_intervals(rhs)) {
        out.ok = false;
        out.detail = "interval mismatch at z = " + to_string(z[0]);
        return out;
      }
      continue;
    }

    IntegerBox cells;
    cells.lo.assign(m.n, Integer(0));
    for (std::size_t j = 0; j < m.n; ++j) cells.hi.push_back(floor_of((x_hi[j] - x_lo[j]) * grid));
    for (const auto& cell : cells.points()) {
      RationalVector x(m.n);
      for (std::size_t j = 0; j < m.n; ++j) x[j] = x_lo[j] + Rational(cell[j]) / grid;
      bool a = !s.empty && s.x_set->contains(x);
      bool b = std::any_of(translates.begin(), translates.end(), [&](const PolyhedronH& t) { return t.contains(x); });
      if (a != b) {
        out.ok = false;
        out.detail = "membership mismatch on the sampling grid";
        return out;
      }
    }
  }
  return out;
}

}  // namespace micp
