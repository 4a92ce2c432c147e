// SPDX-License-Identifier: Apache-2.0
#include "micp/polyhedron.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace micp {

PolyhedronH::PolyhedronH(std::size_t dim) : dim_(dim), a_(0, dim), e_(0, dim) {}

PolyhedronH::PolyhedronH(RationalMatrix a, RationalVector b)
    : PolyhedronH(std::move(a), std::move(b), RationalMatrix(), RationalVector()) {}

PolyhedronH::PolyhedronH(RationalMatrix a, RationalVector b, RationalMatrix e, RationalVector f)
    : dim_(a.cols()), a_(std::move(a)), b_(std::move(b)), e_(std::move(e)), f_(std::move(f)) {
  if (e_.rows() == 0 && e_.cols() == 0) e_ = RationalMatrix(0, dim_);
  if (a_.rows() == 0 && a_.cols() == 0 && e_.cols() != 0) {
    dim_ = e_.cols();
    a_ = RationalMatrix(0, dim_);
  }
  if (a_.rows() != b_.size() || e_.rows() != f_.size() || e_.cols() != dim_) throw Error("polyhedron dimension mismatch");
}

PolyhedronH PolyhedronH::box(const RationalVector& lo, const RationalVector& hi) {
  if (lo.size() != hi.size()) throw Error("dimension mismatch");
  PolyhedronH p(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) {
    RationalVector c(lo.size());
    c[i] = 1;
    p.add_inequality(c, hi[i]);
    c[i] = -1;
    p.add_inequality(c, -lo[i]);
  }
  return p;
}

void PolyhedronH::add_inequality(const RationalVector& coeffs, const Rational& rhs) {
  if (coeffs.size() != dim_) throw Error("dimension mismatch");
  a_.append_row(coeffs);
  b_.push_back(rhs);
}

void PolyhedronH::add_equality(const RationalVector& coeffs, const Rational& rhs) {
  if (coeffs.size() != dim_) throw Error("dimension mismatch");
  e_.append_row(coeffs);
  f_.push_back(rhs);
}

bool PolyhedronH::contains(const RationalVector& v) const {
  if (v.size() != dim_) throw Error("dimension mismatch");
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += a_(i, j) * v[j];
    if (s > b_[i]) return false;
  }
  for (std::size_t i = 0; i < e_.rows(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < dim_; ++j) s += e_(i, j) * v[j];
    if (s != f_[i]) return false;
  }
  return true;
}

bool PolyhedronH::is_empty() const {
  PolyhedronH q = fm_project(*this, {});
  return q.a().rows() > 0 || q.e().rows() > 0;
}

PolyhedronH PolyhedronH::fix(std::size_t index, const Rational& value) const {
  if (index >= dim_) throw Error("index out of range");
  PolyhedronH out(dim_ - 1);
  auto drop = [&](const RationalMatrix& m, std::size_t r, Rational& rhs) {
    RationalVector c;
    c.reserve(dim_ - 1);
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j == index)
        rhs -= m(r, j) * value;
      else
        c.push_back(m(r, j));
    }
    return c;
  };
  for (std::size_t r = 0; r < a_.rows(); ++r) {
    Rational rhs = b_[r];
    auto c = drop(a_, r, rhs);
    out.add_inequality(c, rhs);
  }
  for (std::size_t r = 0; r < e_.rows(); ++r) {
    Rational rhs = f_[r];
    auto c = drop(e_, r, rhs);
    out.add_equality(c, rhs);
  }
  return out;
}

PolyhedronH PolyhedronH::intersect(const PolyhedronH& other) const {
  if (other.dim_ != dim_) throw Error("dimension mismatch");
  PolyhedronH out = *this;
  for (std::size_t r = 0; r < other.a_.rows(); ++r) out.add_inequality(other.a_.row(r), other.b_[r]);
  for (std::size_t r = 0; r < other.e_.rows(); ++r) out.add_equality(other.e_.row(r), other.f_[r]);
  return out;
}

namespace {

struct Row {
  RationalVector c;
  Rational rhs;
};

bool is_zero(const RationalVector& c) {
  return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x == 0; });
}

// Positive scaling so the first nonzero coefficient has magnitude 1.
void normalize(Row& row) {
  for (const auto& x : row.c) {
    if (x == 0) continue;
    Rational s = abs(x);
    if (s != 1) {
      for (auto& y : row.c) y /= s;
      row.rhs /= s;
    }
    return;
  }
}

// Sign-fixed scaling for equalities: first nonzero coefficient becomes 1.
void normalize_equality(Row& row) {
  for (const auto& x : row.c) {
    if (x == 0) continue;
    Rational s = x;
    if (s != 1) {
      for (auto& y : row.c) y /= s;
      row.rhs /= s;
    }
    return;
  }
}

PolyhedronH infeasible(std::size_t dim) {
  PolyhedronH p(dim);
  p.add_inequality(RationalVector(dim), Rational(-1));
  return p;
}

// Deduplicates normalized inequalities keeping the tightest rhs; returns
// false on a trivially infeasible row.
bool tidy(std::vector<Row>& rows) {
  std::map<RationalVector, Rational> best;
  for (auto& row : rows) {
    normalize(row);
    if (is_zero(row.c)) {
      if (row.rhs < 0) return false;
      continue;
    }
    auto it = best.find(row.c);
    if (it == best.end())
      best.emplace(std::move(row.c), row.rhs);
    else if (row.rhs < it->second)
      it->second = row.rhs;
  }
  rows.clear();
  rows.reserve(best.size());
  for (auto& [c, rhs] : best) rows.push_back(Row{c, rhs});
  return true;
}

}  // namespace

PolyhedronH fm_project(const PolyhedronH& p, const std::vector<std::size_t>& keep, const FmOptions& options) {
  const std::size_t n = p.dim();
  std::vector<bool> kept(n, false);
  for (auto k : keep) {
    if (k >= n) throw Error("projection index out of range");
    kept[k] = true;
  }

  std::vector<Row> ineqs;
  std::vector<Row> eqs;
  for (std::size_t r = 0; r < p.a().rows(); ++r) ineqs.push_back(Row{p.a().row(r), p.b()[r]});
  for (std::size_t r = 0; r < p.e().rows(); ++r) eqs.push_back(Row{p.e().row(r), p.f()[r]});

  // Gaussian elimination of dropped variables through equalities.
  for (std::size_t j = 0; j < n; ++j) {
    if (kept[j]) continue;
    auto pivot = std::find_if(eqs.begin(), eqs.end(), [&](const Row& r) { return r.c[j] != 0; });
    if (pivot == eqs.end()) continue;
    Row piv = *pivot;
    eqs.erase(pivot);
    auto eliminate = [&](Row& row) {
      if (row.c[j] == 0) return;
      Rational f = row.c[j] / piv.c[j];
      for (std::size_t k = 0; k < n; ++k)
        if (piv.c[k] != 0) row.c[k] -= f * piv.c[k];
      row.rhs -= f * piv.rhs;
    };
    for (auto& row : eqs) eliminate(row);
    for (auto& row : ineqs) eliminate(row);
  }

  if (!tidy(ineqs)) return infeasible(keep.size());

  // Fourier-Motzkin on the remaining dropped variables.
  while (true) {
    std::size_t best = n;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (kept[j]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const auto& row : ineqs) {
        if (row.c[j] > 0) ++pos;
        if (row.c[j] < 0) ++neg;
      }
      if (pos + neg == 0) continue;
      std::size_t cost = pos * neg;
      if (best == n || cost < best_cost) {
        best = j;
        best_cost = cost;
      }
    }
    if (best == n) break;
    const std::size_t j = best;
    std::vector<Row> pos, neg, next;
    for (auto& row : ineqs) {
      if (row.c[j] > 0)
        pos.push_back(std::move(row));
      else if (row.c[j] < 0)
        neg.push_back(std::move(row));
      else
        next.push_back(std::move(row));
    }
    for (const auto& a : pos)
      for (const auto& b : neg) {
        Rational wa = -b.c[j];
        Rational wb = a.c[j];
        Row row{RationalVector(n), wa * a.rhs + wb * b.rhs};
        for (std::size_t k = 0; k < n; ++k) row.c[k] = wa * a.c[k] + wb * b.c[k];
        row.c[j] = 0;
        next.push_back(std::move(row));
      }
    if (next.size() > options.row_cap) throw Error("Fourier-Motzkin row cap exceeded");
    ineqs = std::move(next);
    if (!tidy(ineqs)) return infeasible(keep.size());
  }

  PolyhedronH out(keep.size());
  auto restrict = [&](const Row& row) {
    RationalVector c(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) c[i] = row.c[keep[i]];
    return c;
  };
  std::map<RationalVector, Rational> eq_seen;
  for (auto& row : eqs) {
    normalize_equality(row);
    if (is_zero(row.c)) {
      if (row.rhs != 0) return infeasible(keep.size());
      continue;
    }
    auto c = restrict(row);
    auto it = eq_seen.find(c);
    if (it != eq_seen.end()) {
      if (it->second != row.rhs) return infeasible(keep.size());
      continue;
    }
    eq_seen.emplace(c, row.rhs);
    out.add_equality(c, row.rhs);
  }
  for (const auto& row : ineqs) out.add_inequality(restrict(row), row.rhs);
  return out;
}

IntegerVector primitive_direction(const RationalVector& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = Rational(v[i] * l).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  if (g == 0) throw Error("zero direction");
  for (auto& x : out) x /= g;
  return out;
}

namespace {

// Incremental echelon basis used to skip linearly dependent row subsets.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

  bool try_add(const RationalVector& row) {
    RationalVector r = row;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& b = rows_[i];
      std::size_t pc = pivots_[i];
      if (r[pc] == 0) continue;
      Rational f = r[pc] / b[pc];
      for (std::size_t k = 0; k < dim_; ++k)
        if (b[k] != 0) r[k] -= f * b[k];
    }
    for (std::size_t k = 0; k < dim_; ++k)
      if (r[k] != 0) {
        rows_.push_back(std::move(r));
        pivots_.push_back(k);
        return true;
      }
    return false;
  }

  std::size_t size() const { return rows_.size(); }

 private:
  std::size_t dim_;
  std::vector<RationalVector> rows_;
  std::vector<std::size_t> pivots_;
};

template <class Visit>
void for_each_independent_subset(const std::vector<RationalVector>& rows, std::size_t dim, std::size_t target,
                                 std::size_t start, EchelonBasis& basis, std::vector<std::size_t>& chosen,
                                 Visit&& visit) {
  if (chosen.size() == target) {
    visit(chosen);
    return;
  }
  std::size_t remaining = target - chosen.size();
  for (std::size_t i = start; i + remaining <= rows.size(); ++i) {
    EchelonBasis next = basis;
    if (!next.try_add(rows[i])) continue;
    chosen.push_back(i);
    for_each_independent_subset(rows, dim, target, i + 1, next, chosen, visit);
    chosen.pop_back();
  }
}

}  // namespace

PolyhedronV vertices_and_rays(const PolyhedronH& p, std::size_t max_dim) {
  const std::size_t n = p.dim();
  if (n > max_dim) throw Error("desk-scale limit");
  PolyhedronV out;

  // Lineality space: nullspace of all constraint normals.
  RationalMatrix normals(0, n);
  for (std::size_t r = 0; r < p.a().rows(); ++r) normals.append_row(p.a().row(r));
  for (std::size_t r = 0; r < p.e().rows(); ++r) normals.append_row(p.e().row(r));
  auto lines = nullspace(normals);

  // Affine hull of equalities plus orthogonality to the lineality space.
  RationalMatrix eq(0, n);
  RationalVector rhs;
  for (std::size_t r = 0; r < p.e().rows(); ++r) {
    eq.append_row(p.e().row(r));
    rhs.push_back(p.f()[r]);
  }
  for (const auto& l : lines) {
    eq.append_row(l);
    rhs.push_back(0);
  }
  RationalVector v0(n);
  if (eq.rows() > 0 && !solve(eq, rhs, v0)) return out;
  auto basis = eq.rows() > 0 ? nullspace(eq) : nullspace(RationalMatrix(0, n));
  if (eq.rows() == 0) {
    basis.clear();
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector e(n);
      e[i] = 1;
      basis.push_back(std::move(e));
    }
  }
  const std::size_t k = basis.size();

  // Inequalities in the local coordinates w: G w <= h.
  std::vector<RationalVector> g;
  RationalVector h;
  for (std::size_t r = 0; r < p.a().rows(); ++r) {
    RationalVector row(k);
    for (std::size_t c = 0; c < k; ++c)
      for (std::size_t j = 0; j < n; ++j) row[c] += p.a()(r, j) * basis[c][j];
    Rational slack = p.b()[r];
    for (std::size_t j = 0; j < n; ++j) slack -= p.a()(r, j) * v0[j];
    g.push_back(std::move(row));
    h.push_back(std::move(slack));
  }
  auto to_global = [&](const RationalVector& w, bool affine) {
    RationalVector v = affine ? v0 : RationalVector(n);
    for (std::size_t c = 0; c < k; ++c)
      if (w[c] != 0)
        for (std::size_t j = 0; j < n; ++j) v[j] += w[c] * basis[c][j];
    return v;
  };
  auto feasible = [&](const RationalVector& w) {
    for (std::size_t r = 0; r < g.size(); ++r)
      if (dot(g[r], w) > h[r]) return false;
    return true;
  };

  std::set<RationalVector> vertices;
  if (k == 0) {
    if (feasible(RationalVector())) vertices.insert(v0);
  } else {
    EchelonBasis eb(k);
    std::vector<std::size_t> chosen;
    for_each_independent_subset(g, k, k, 0, eb, chosen, [&](const std::vector<std::size_t>& rows) {
      RationalMatrix m(k, k);
      RationalVector rhs_s(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t c = 0; c < k; ++c) m(i, c) = g[rows[i]][c];
        rhs_s[i] = h[rows[i]];
      }
      RationalVector w;
      if (!solve(m, rhs_s, w) || !feasible(w)) return;
      vertices.insert(to_global(w, true));
    });
  }
  out.vertices.assign(vertices.begin(), vertices.end());
  if (out.vertices.empty()) return out;

  // Extreme rays of the (pointed) recession cone {G w <= 0}.
  std::set<IntegerVector> rays;
  auto consider_direction = [&](const RationalVector& dir) {
    for (int sign : {1, -1}) {
      RationalVector d = dir;
      if (sign < 0)
        for (auto& x : d) x = -x;
      bool ok = true;
      for (const auto& row : g)
        if (dot(row, d) > 0) {
          ok = false;
          break;
        }
      if (ok) rays.insert(primitive_direction(to_global(d, false)));
    }
  };
  if (k == 1) {
    consider_direction(RationalVector{Rational(1)});
  } else if (k > 1) {
    EchelonBasis eb(k);
    std::vector<std::size_t> chosen;
    for_each_independent_subset(g, k, k - 1, 0, eb, chosen, [&](const std::vector<std::size_t>& rows) {
      RationalMatrix m(0, k);
      for (auto r : rows) m.append_row(g[r]);
      auto ns = nullspace(m);
      if (ns.size() == 1) consider_direction(ns[0]);
    });
  }
  for (const auto& r : rays) out.rays.push_back(to_rational(r));
  for (const auto& l : lines) out.lines.push_back(to_rational(primitive_direction(l)));
  return out;
}

std::optional<Rational> linear_max(const PolyhedronH& p, const RationalVector& c) {
  if (c.size() != p.dim()) throw Error("dimension mismatch");
  PolyhedronV v = vertices_and_rays(p);
  if (v.empty()) throw Error("empty polyhedron");
  for (const auto& l : v.lines)
    if (dot(l, c) != 0) return std::nullopt;
  for (const auto& r : v.rays)
    if (dot(r, c) > 0) return std::nullopt;
  Rational best = dot(v.vertices.front(), c);
  for (const auto& x : v.vertices) best = std::max(best, dot(x, c));
  return best;
}

Interval to_interval(const PolyhedronH& p) {
  if (p.dim() != 1) throw Error("interval requires a one-dimensional polyhedron");
  Interval out;
  if (p.is_empty()) {
    out.empty = true;
    return out;
  }
  auto tighten_hi = [&](const Rational& v) {
    if (!out.hi || v < *out.hi) out.hi = v;
  };
  auto tighten_lo = [&](const Rational& v) {
    if (!out.lo || v > *out.lo) out.lo = v;
  };
  for (std::size_t r = 0; r < p.a().rows(); ++r) {
    const Rational& a = p.a()(r, 0);
    if (a > 0) tighten_hi(p.b()[r] / a);
    if (a < 0) tighten_lo(p.b()[r] / a);
  }
  for (std::size_t r = 0; r < p.e().rows(); ++r) {
    const Rational& a = p.e()(r, 0);
    if (a != 0) {
      tighten_hi(p.f()[r] / a);
      tighten_lo(p.f()[r] / a);
    }
  }
  return out;
}

}  // namespace micp
