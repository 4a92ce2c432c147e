// SPDX-License-Identifier: Apache-2.0
#include "micp/slices.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace micp {

bool IntegerBox::contains(const IntegerVector& z) const {
  if (z.size() != lo.size()) return false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < lo[i] || z[i] > hi[i]) return false;
  return true;
}

std::vector<IntegerVector> IntegerBox::points() const {
  std::vector<IntegerVector> out;
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return out;
  IntegerVector z = lo;
  while (true) {
    out.push_back(z);
    std::size_t i = z.size();
    while (i > 0 && z[i - 1] == hi[i - 1]) {
      z[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return out;
    ++z[i - 1];
  }
}

namespace {

enum class Role { X, Cont, Int };
using Bound = std::optional<Rational>;
constexpr std::size_t kNoZ = static_cast<std::size_t>(-1);

struct SparseRow {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rational rhs;  // terms <= rhs
};

std::vector<SparseRow> sparse_rows(const PolyhedronH& p) {
  std::vector<SparseRow> rows;
  auto add = [&](const RationalMatrix& m, std::size_t r, const Rational& rhs, int sign) {
    SparseRow row;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(r, j) != 0) row.terms.emplace_back(j, sign * m(r, j));
    row.rhs = sign * rhs;
    rows.push_back(std::move(row));
  };
  for (std::size_t r = 0; r < p.a().rows(); ++r) add(p.a(), r, p.b()[r], 1);
  for (std::size_t r = 0; r < p.e().rows(); ++r) {
    add(p.e(), r, p.f()[r], 1);
    add(p.e(), r, p.f()[r], -1);
  }
  return rows;
}

// Interval bound propagation; returns false when infeasibility is proven.
bool propagate(const std::vector<SparseRow>& rows, const std::vector<Role>& roles, std::vector<Bound>& lo,
               std::vector<Bound>& hi, int rounds = 8) {
  for (int round = 0; round < rounds; ++round) {
    bool changed = false;
    for (const auto& row : rows) {
      Rational minact = 0;
      std::size_t ninf = 0;
      std::size_t infvar = 0;
      for (const auto& [j, a] : row.terms) {
        const Bound& bd = a > 0 ? lo[j] : hi[j];
        if (!bd) {
          ++ninf;
          infvar = j;
        } else {
          minact += a * *bd;
        }
      }
      if (ninf == 0 && minact > row.rhs) return false;
      if (ninf > 1) continue;
      for (const auto& [j, a] : row.terms) {
        Rational rest;
        if (ninf == 0)
          rest = minact - a * *(a > 0 ? lo[j] : hi[j]);
        else if (infvar == j)
          rest = minact;
        else
          continue;
        Rational lim = (row.rhs - rest) / a;
        if (a > 0) {
          if (roles[j] == Role::Int) lim = floor_of(lim);
          if (!hi[j] || lim < *hi[j]) {
            hi[j] = lim;
            changed = true;
          }
        } else {
          if (roles[j] == Role::Int) lim = ceil_of(lim);
          if (!lo[j] || lim > *lo[j]) {
            lo[j] = lim;
            changed = true;
          }
        }
        if (lo[j] && hi[j] && *lo[j] > *hi[j]) return false;
      }
    }
    if (!changed) break;
  }
  return true;
}

struct Node {
  PolyhedronH poly;
  std::vector<Role> roles;
  std::vector<std::size_t> zpos;
  std::vector<Bound> lo;
  std::vector<Bound> hi;
};

Node restrict_node(const Node& node, const std::vector<bool>& keep_var) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < keep_var.size(); ++j)
    if (keep_var[j]) cols.push_back(j);
  Node out;
  out.poly = PolyhedronH(cols.size());
  auto touches = [&](const RationalMatrix& m, std::size_t r) {
    bool any = false;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(r, j) != 0) {
        if (!keep_var[j]) return false;
        any = true;
      }
    return any;
  };
  auto pick = [&](const RationalMatrix& m, std::size_t r) {
    RationalVector c(cols.size());
    for (std::size_t k = 0; k < cols.size(); ++k) c[k] = m(r, cols[k]);
    return c;
  };
  for (std::size_t r = 0; r < node.poly.a().rows(); ++r)
    if (touches(node.poly.a(), r)) out.poly.add_inequality(pick(node.poly.a(), r), node.poly.b()[r]);
  for (std::size_t r = 0; r < node.poly.e().rows(); ++r)
    if (touches(node.poly.e(), r)) out.poly.add_equality(pick(node.poly.e(), r), node.poly.f()[r]);
  for (auto j : cols) {
    out.roles.push_back(node.roles[j]);
    out.zpos.push_back(node.zpos[j]);
    out.lo.push_back(node.lo[j]);
    out.hi.push_back(node.hi[j]);
  }
  return out;
}

Node fix_node(const Node& node, std::size_t var, const Integer& value) {
  Node out;
  out.poly = node.poly.fix(var, Rational(value));
  for (std::size_t j = 0; j < node.roles.size(); ++j) {
    if (j == var) continue;
    out.roles.push_back(node.roles[j]);
    out.zpos.push_back(node.zpos[j]);
    out.lo.push_back(node.lo[j]);
    out.hi.push_back(node.hi[j]);
  }
  return out;
}

bool has_infeasible_constant_row(const PolyhedronH& p) {
  for (std::size_t r = 0; r < p.a().rows(); ++r) {
    bool zero = true;
    for (std::size_t j = 0; j < p.dim() && zero; ++j) zero = p.a()(r, j) == 0;
    if (zero && p.b()[r] < 0) return true;
  }
  for (std::size_t r = 0; r < p.e().rows(); ++r) {
    bool zero = true;
    for (std::size_t j = 0; j < p.dim() && zero; ++j) zero = p.e()(r, j) == 0;
    if (zero && p.f()[r] != 0) return true;
  }
  return false;
}

constexpr std::size_t kWitnessSteps = 4096;

struct Engine {
  bool existential = false;
  FmOptions fm;
  // Returns true to stop the search.
  std::function<bool(const IntegerVector&, const PolyhedronH&)> on_polyhedral_leaf;
  std::function<bool(const IntegerVector&, const ConicSet&)> on_conic_leaf;

  // Depth-first search over the integer variables of a polyhedral node.
  bool polyhedral(Node node, IntegerVector& z, bool exists_only, bool& found) {
    if (has_infeasible_constant_row(node.poly)) return false;
    auto rows = sparse_rows(node.poly);
    if (!propagate(rows, node.roles, node.lo, node.hi)) return false;

    if (existential && !exists_only) {
      // Variables not linked to x through any row only need to be feasible.
      const std::size_t m = node.roles.size();
      std::vector<std::size_t> parent(m);
      std::iota(parent.begin(), parent.end(), 0);
      std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
      };
      for (const auto& row : rows)
        for (std::size_t k = 1; k < row.terms.size(); ++k)
          parent[find(row.terms[k].first)] = find(row.terms[0].first);
      std::vector<bool> linked(m, false);
      bool any_x = false;
      for (std::size_t j = 0; j < m; ++j)
        if (node.roles[j] == Role::X) any_x = true;
      if (any_x) {
        std::vector<bool> root_linked(m, false);
        for (std::size_t j = 0; j < m; ++j)
          if (node.roles[j] == Role::X) root_linked[find(j)] = true;
        bool split = false;
        for (std::size_t j = 0; j < m; ++j) {
          linked[j] = root_linked[find(j)];
          if (!linked[j]) split = true;
        }
        if (split) {
          std::vector<bool> other(m);
          for (std::size_t j = 0; j < m; ++j) other[j] = !linked[j];
          Node side = restrict_node(node, other);
          IntegerVector scratch = z;
          bool side_found = false;
          polyhedral(std::move(side), scratch, true, side_found);
          if (!side_found) return false;
          for (std::size_t j = 0; j < m; ++j)
            if (!linked[j] && node.zpos[j] != kNoZ) z[node.zpos[j]] = scratch[node.zpos[j]];
          node = restrict_node(node, linked);
        }
      }
    }

    // Branch on the bounded integer variable with the fewest values.
    std::size_t best = node.roles.size();
    Rational best_span;
    bool unbounded_int = false;
    for (std::size_t j = 0; j < node.roles.size(); ++j) {
      if (node.roles[j] != Role::Int) continue;
      if (!node.lo[j] || !node.hi[j]) {
        unbounded_int = true;
        continue;
      }
      Rational span = *node.hi[j] - *node.lo[j];
      if (best == node.roles.size() || span < best_span) {
        best = j;
        best_span = span;
      }
    }
    if (best == node.roles.size() && unbounded_int && exists_only) return witness_search(std::move(node), z, found);
    if (best == node.roles.size()) {
      if (unbounded_int) throw Error("explicit window required");
      if (exists_only) {
        found = !node.poly.is_empty();
        return found;
      }
      std::vector<std::size_t> keep;
      for (std::size_t j = 0; j < node.roles.size(); ++j)
        if (node.roles[j] == Role::X) keep.push_back(j);
      PolyhedronH proj = fm_project(node.poly, keep, fm);
      if (proj.is_empty()) return false;
      found = true;
      return on_polyhedral_leaf(z, proj);
    }
    Integer from = ceil_of(*node.lo[best]);
    Integer to = floor_of(*node.hi[best]);
    for (Integer v = from; v <= to; ++v) {
      if (node.zpos[best] != kNoZ) z[node.zpos[best]] = v;
      if (polyhedral(fix_node(node, best, v), z, exists_only, found)) return true;
      if (exists_only && found) return true;
    }
    return false;
  }

  // A feasibility witness for a component with an unbounded integer
  // variable: values are tried outward from the finite bound, or from 0.
  bool witness_search(Node node, IntegerVector& z, bool& found) {
    std::size_t var = node.roles.size();
    for (std::size_t j = 0; j < node.roles.size() && var == node.roles.size(); ++j)
      if (node.roles[j] == Role::Int && (!node.lo[j] || !node.hi[j])) var = j;
    for (std::size_t step = 0; step < kWitnessSteps; ++step) {
      Integer v;
      const auto s = static_cast<long>(step);
      if (node.lo[var]) {
        v = ceil_of(*node.lo[var]) + s;
      } else if (node.hi[var]) {
        v = floor_of(*node.hi[var]) - s;
      } else {
        v = step % 2 == 0 ? Integer(s / 2) : Integer(-(s + 1) / 2);
      }
      if (node.zpos[var] != kNoZ) z[node.zpos[var]] = v;
      polyhedral(fix_node(node, var, v), z, true, found);
      if (found) return true;
    }
    throw Error("explicit window required");
  }

  // Branches on integer variables inside non-polyhedral blocks until the
  // rest reduces to a polyhedron.
  bool conic(const ConicSet& cs, std::vector<Role> roles, std::vector<std::size_t> zpos,
             std::vector<Bound> lo, std::vector<Bound> hi, IntegerVector& z) {
    std::vector<bool> prot(roles.size());
    for (std::size_t j = 0; j < roles.size(); ++j) prot[j] = roles[j] != Role::Cont;
    if (auto ph = reduce_to_polyhedron(cs, prot)) {
      Node node{std::move(*ph), std::move(roles), std::move(zpos), std::move(lo), std::move(hi)};
      bool found = false;
      return polyhedral(std::move(node), z, false, found);
    }

    // Bounds from the polyhedral blocks alone are valid for the whole set.
    ConicSet relaxed(cs.ambient_dim());
    std::vector<bool> in_cone(cs.ambient_dim(), false);
    {
      std::size_t r = 0;
      for (const auto& c : cs.cones()) {
        std::vector<AffineRow> block;
        for (std::size_t k = 0; k < c.dim; ++k, ++r) {
          block.push_back(AffineRow{cs.a().row(r), cs.b()[r]});
          if (c.kind == ConeKind::SecondOrder || c.kind == ConeKind::RotatedSecondOrder)
            for (std::size_t j = 0; j < cs.ambient_dim(); ++j)
              if (cs.a()(r, j) != 0) in_cone[j] = true;
        }
        if (c.kind == ConeKind::Zero || c.kind == ConeKind::Nonneg) relaxed.add_block(c.kind, block);
      }
    }
    auto poly = to_polyhedron(relaxed);
    if (!propagate(sparse_rows(*poly), roles, lo, hi)) return false;

    std::size_t pick = roles.size();
    for (std::size_t j = 0; j < roles.size() && pick == roles.size(); ++j)
      if (roles[j] == Role::Int && in_cone[j]) pick = j;
    for (std::size_t j = 0; j < roles.size() && pick == roles.size(); ++j)
      if (roles[j] == Role::Int) pick = j;
    if (pick == roles.size()) return on_conic_leaf(z, cs);
    if (!lo[pick] || !hi[pick]) throw Error("explicit window required");

    for (Integer v = ceil_of(*lo[pick]); v <= floor_of(*hi[pick]); ++v) {
      if (zpos[pick] != kNoZ) z[zpos[pick]] = v;
      ConicSet next = fix_variables(cs, {pick}, {Rational(v)});
      auto r2 = roles;
      auto z2 = zpos;
      auto lo2 = lo, hi2 = hi;
      r2.erase(r2.begin() + static_cast<std::ptrdiff_t>(pick));
      z2.erase(z2.begin() + static_cast<std::ptrdiff_t>(pick));
      lo2.erase(lo2.begin() + static_cast<std::ptrdiff_t>(pick));
      hi2.erase(hi2.begin() + static_cast<std::ptrdiff_t>(pick));
      if (conic(next, std::move(r2), std::move(z2), std::move(lo2), std::move(hi2), z)) return true;
    }
    return false;
  }

  void run(const MicpFormulation& f, const SliceOptions& options) {
    f.validate();
    ConicSet cs = f.set;
    if (options.x_region) {
      if (options.x_region->dim() != f.n) throw Error("x region dimension mismatch");
      std::vector<std::size_t> map(f.n);
      std::iota(map.begin(), map.end(), 0);
      cs.append(from_polyhedron(*options.x_region), map);
    }
    const std::size_t total = cs.ambient_dim();
    std::vector<Role> roles(total, Role::Cont);
    std::vector<std::size_t> zpos(total, kNoZ);
    std::vector<Bound> lo(total), hi(total);
    for (std::size_t j = 0; j < f.n; ++j) roles[j] = Role::X;
    for (std::size_t k = 0; k < f.d; ++k) {
      roles[f.z_begin() + k] = Role::Int;
      zpos[f.z_begin() + k] = k;
    }
    if (options.window) {
      if (options.window->dim() != f.d) throw Error("window dimension mismatch");
      for (std::size_t k = 0; k < f.d; ++k) {
        lo[f.z_begin() + k] = Rational(options.window->lo[k]);
        hi[f.z_begin() + k] = Rational(options.window->hi[k]);
      }
    }
    IntegerVector z(f.d);
    conic(cs, roles, zpos, lo, hi, z);
  }
};

}  // namespace

Slice slice(const MicpFormulation& f, const IntegerVector& z) {
  f.validate();
  if (z.size() != f.d) throw Error("dimension mismatch");
  Slice out;
  out.z = z;
  std::vector<std::size_t> idx;
  RationalVector vals;
  for (std::size_t k = 0; k < f.d; ++k) {
    idx.push_back(f.z_begin() + k);
    vals.push_back(Rational(z[k]));
  }
  ConicSet fixed = fix_variables(f.set, idx, vals);
  std::vector<bool> prot(f.n + f.p, false);
  for (std::size_t j = 0; j < f.n; ++j) prot[j] = true;
  if (auto ph = reduce_to_polyhedron(fixed, prot)) {
    std::vector<std::size_t> keep(f.n);
    std::iota(keep.begin(), keep.end(), 0);
    PolyhedronH proj = fm_project(*ph, keep);
    out.empty = proj.is_empty();
    if (!out.empty) out.x_set = std::move(proj);
  } else {
    out.conic = std::move(fixed);
  }
  return out;
}

SliceFamily enumerate_slices(const MicpFormulation& f, const SliceOptions& options) {
  SliceFamily out;
  Engine engine;
  engine.fm = options.fm;
  engine.on_polyhedral_leaf = [&](const IntegerVector& z, const PolyhedronH& p) {
    out.index_window.push_back(z);
    out.slices.push_back(Slice{z, false, p, std::nullopt});
    return false;
  };
  engine.on_conic_leaf = [&](const IntegerVector& z, const ConicSet& cs) {
    out.index_window.push_back(z);
    out.slices.push_back(Slice{z, false, std::nullopt, cs});
    return false;
  };
  engine.run(f, options);
  // Branching order depends on the constraints; report lexicographically.
  std::vector<std::size_t> order(out.slices.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return out.index_window[a] < out.index_window[b]; });
  SliceFamily sorted;
  for (auto i : order) {
    sorted.index_window.push_back(out.index_window[i]);
    sorted.slices.push_back(std::move(out.slices[i]));
  }
  return sorted;
}

std::vector<PolyhedronH> slice_union(const MicpFormulation& f, const SliceOptions& options) {
  std::vector<PolyhedronH> out;
  Engine engine;
  engine.existential = true;
  engine.fm = options.fm;
  engine.on_polyhedral_leaf = [&](const IntegerVector&, const PolyhedronH& p) {
    bool seen = std::any_of(out.begin(), out.end(), [&](const PolyhedronH& q) {
      return q.a() == p.a() && q.b() == p.b() && q.e() == p.e() && q.f() == p.f();
    });
    if (!seen) out.push_back(p);
    return false;
  };
  engine.on_conic_leaf = [&](const IntegerVector&, const ConicSet&) -> bool { throw Error("slice is not polyhedral"); };
  engine.run(f, options);
  return out;
}

std::optional<IntegerBox> default_window(const MicpFormulation& f) {
  f.validate();
  ConicSet relaxed(f.set.ambient_dim());
  std::size_t r = 0;
  for (const auto& c : f.set.cones()) {
    std::vector<AffineRow> block;
    for (std::size_t k = 0; k < c.dim; ++k, ++r) block.push_back(AffineRow{f.set.a().row(r), f.set.b()[r]});
    if (c.kind == ConeKind::Zero || c.kind == ConeKind::Nonneg) relaxed.add_block(c.kind, block);
  }
  auto poly = to_polyhedron(relaxed);
  std::vector<Role> roles(f.set.ambient_dim(), Role::Cont);
  for (std::size_t k = 0; k < f.d; ++k) roles[f.z_begin() + k] = Role::Int;
  std::vector<Bound> lo(roles.size()), hi(roles.size());
  IntegerBox box;
  if (!propagate(sparse_rows(*poly), roles, lo, hi, 32)) {
    // Infeasible relaxation: an empty box.
    box.lo.assign(f.d, Integer(1));
    box.hi.assign(f.d, Integer(0));
    return box;
  }
  for (std::size_t k = 0; k < f.d; ++k) {
    const auto& l = lo[f.z_begin() + k];
    const auto& h = hi[f.z_begin() + k];
    if (!l || !h) return std::nullopt;
    box.lo.push_back(ceil_of(*l));
    box.hi.push_back(floor_of(*h));
  }
  return box;
}

std::optional<Rational> support_function(const MicpFormulation& f, const IntegerVector& z, const RationalVector& c) {
  if (c.size() != f.n) throw Error("dimension mismatch");
  Slice s = slice(f, z);
  if (s.empty) throw Error("empty slice");
  if (!s.x_set) throw Error("slice is not polyhedral");
  return linear_max(*s.x_set, c);
}

}  // namespace micp
