// SPDX-License-Identifier: Apache-2.0
#include "micp/conic_set.hpp"

#include <algorithm>

namespace micp {

std::string cone_kind_name(ConeKind kind) {
  switch (kind) {
    case ConeKind::Zero:
      return "zero";
    case ConeKind::Nonneg:
      return "nonneg";
    case ConeKind::SecondOrder:
      return "second_order";
    case ConeKind::RotatedSecondOrder:
      return "rotated_second_order";
  }
  return "unknown";
}

ConeKind parse_cone_kind(const std::string& name) {
  if (name == "zero") return ConeKind::Zero;
  if (name == "nonneg") return ConeKind::Nonneg;
  if (name == "second_order") return ConeKind::SecondOrder;
  if (name == "rotated_second_order") return ConeKind::RotatedSecondOrder;
  throw Error("unknown cone kind: " + name);
}

namespace {

void validate_cone(const ElementaryCone& c) {
  if (c.kind == ConeKind::SecondOrder && c.dim < 1) throw Error("second-order cone needs dimension >= 1");
  if (c.kind == ConeKind::RotatedSecondOrder && c.dim < 2) throw Error("rotated second-order cone needs dimension >= 2");
}

}  // namespace

ConicSet::ConicSet(std::size_t ambient_dim) : dim_(ambient_dim), a_(0, ambient_dim) {}

ConicSet::ConicSet(RationalMatrix a, RationalVector b, std::vector<ElementaryCone> cones)
    : dim_(a.cols()), a_(std::move(a)), b_(std::move(b)), cones_(std::move(cones)) {
  std::size_t total = 0;
  for (const auto& c : cones_) {
    validate_cone(c);
    total += c.dim;
  }
  if (total != a_.rows() || b_.size() != a_.rows()) throw Error("cone dimensions do not match the rows of A");
}

std::vector<std::size_t> ConicSet::block_offsets() const {
  std::vector<std::size_t> out;
  std::size_t r = 0;
  for (const auto& c : cones_) {
    out.push_back(r);
    r += c.dim;
  }
  return out;
}

void ConicSet::add_block(ConeKind kind, const std::vector<AffineRow>& rows) {
  ElementaryCone cone{kind, rows.size()};
  validate_cone(cone);
  for (const auto& row : rows) {
    if (row.coeffs.size() != dim_) throw Error("dimension mismatch");
    a_.append_row(row.coeffs);
    b_.push_back(row.constant);
  }
  if (a_.rows() == 0) a_ = RationalMatrix(0, dim_);
  cones_.push_back(cone);
}

void ConicSet::add_equality(const RationalVector& coeffs, const Rational& rhs) {
  add_block(ConeKind::Zero, {AffineRow{coeffs, -rhs}});
}

void ConicSet::add_inequality(const RationalVector& coeffs, const Rational& rhs) {
  RationalVector neg(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) neg[i] = -coeffs[i];
  add_block(ConeKind::Nonneg, {AffineRow{neg, rhs}});
}

void ConicSet::add_lower_bound(std::size_t var, const Rational& lo) {
  RationalVector c(dim_);
  c.at(var) = 1;
  add_block(ConeKind::Nonneg, {AffineRow{c, -lo}});
}

void ConicSet::add_upper_bound(std::size_t var, const Rational& hi) {
  RationalVector c(dim_);
  c.at(var) = -1;
  add_block(ConeKind::Nonneg, {AffineRow{c, hi}});
}

void ConicSet::append(const ConicSet& other, const std::vector<std::size_t>& column_map) {
  if (column_map.size() != other.dim_) throw Error("column map size mismatch");
  std::size_t r = 0;
  for (const auto& cone : other.cones_) {
    std::vector<AffineRow> rows;
    for (std::size_t k = 0; k < cone.dim; ++k, ++r) {
      AffineRow row{RationalVector(dim_), other.b_[r]};
      for (std::size_t j = 0; j < other.dim_; ++j) {
        const Rational& v = other.a_(r, j);
        if (v == 0) continue;
        if (column_map[j] == kConstant)
          row.constant += v;
        else
          row.coeffs.at(column_map[j]) += v;
      }
      rows.push_back(std::move(row));
    }
    add_block(cone.kind, rows);
  }
}

void ConicSet::add_variables(std::size_t count) {
  RationalMatrix grown(a_.rows(), dim_ + count);
  for (std::size_t i = 0; i < a_.rows(); ++i)
    for (std::size_t j = 0; j < dim_; ++j) grown(i, j) = a_(i, j);
  a_ = std::move(grown);
  dim_ += count;
}

namespace {

bool block_contains(ConeKind kind, const Rational* y, std::size_t m) {
  switch (kind) {
    case ConeKind::Zero:
      return std::all_of(y, y + m, [](const Rational& v) { return v == 0; });
    case ConeKind::Nonneg:
      return std::all_of(y, y + m, [](const Rational& v) { return v >= 0; });
    case ConeKind::SecondOrder: {
      if (y[0] < 0) return false;
      Rational s = 0;
      for (std::size_t i = 1; i < m; ++i) s += y[i] * y[i];
      return s <= y[0] * y[0];
    }
    case ConeKind::RotatedSecondOrder: {
      if (y[0] < 0 || y[1] < 0) return false;
      Rational s = 0;
      for (std::size_t i = 2; i < m; ++i) s += y[i] * y[i];
      return s <= y[0] * y[1];
    }
  }
  return false;
}

}  // namespace

bool ConicSet::contains(const RationalVector& v) const {
  if (v.size() != dim_) throw Error("dimension mismatch");
  RationalVector y = multiply(a_, v);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += b_[i];
  std::size_t r = 0;
  for (const auto& c : cones_) {
    if (!block_contains(c.kind, y.data() + r, c.dim)) return false;
    r += c.dim;
  }
  return true;
}

bool ConicSet::is_polyhedral() const {
  return std::all_of(cones_.begin(), cones_.end(),
                     [](const ElementaryCone& c) { return c.kind == ConeKind::Zero || c.kind == ConeKind::Nonneg; });
}

ConicSet recession_cone(const ConicSet& s) {
  return ConicSet(s.a(), RationalVector(s.b().size()), s.cones());
}

ConicSet conic_hull(const ConicSet& t) {
  const std::size_t n = t.ambient_dim();
  RationalMatrix a(t.a().rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = t.a()(i, j);
    a(i, n) = t.b()[i];
  }
  ConicSet out(std::move(a), RationalVector(t.b().size()), t.cones());
  out.add_lower_bound(n, 0);
  return out;
}

ConicSet recession_equalize(const ConicSet& t) {
  const std::size_t n = t.ambient_dim();
  ConicSet out = t;
  out.add_variables(1);
  std::vector<AffineRow> rows;
  RationalVector tcol(n + 1);
  tcol[n] = 1;
  rows.push_back(AffineRow{tcol, 0});
  rows.push_back(AffineRow{RationalVector(n + 1), 1});
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector c(n + 1);
    c[j] = 1;
    rows.push_back(AffineRow{c, 0});
  }
  out.add_block(ConeKind::RotatedSecondOrder, rows);
  return out;
}

ConicSet from_polyhedron(const PolyhedronH& p) {
  ConicSet out(p.dim());
  for (std::size_t r = 0; r < p.e().rows(); ++r) out.add_equality(p.e().row(r), p.f()[r]);
  for (std::size_t r = 0; r < p.a().rows(); ++r) out.add_inequality(p.a().row(r), p.b()[r]);
  return out;
}

namespace {

struct Block {
  ConeKind kind;
  std::vector<AffineRow> rows;
};

std::vector<Block> split_blocks(const ConicSet& s) {
  std::vector<Block> out;
  std::size_t r = 0;
  for (const auto& c : s.cones()) {
    Block b{c.kind, {}};
    for (std::size_t k = 0; k < c.dim; ++k, ++r) b.rows.push_back(AffineRow{s.a().row(r), s.b()[r]});
    out.push_back(std::move(b));
  }
  return out;
}

PolyhedronH blocks_to_polyhedron(const std::vector<Block>& blocks, std::size_t dim) {
  PolyhedronH p(dim);
  for (const auto& b : blocks)
    for (const auto& row : b.rows) {
      if (b.kind == ConeKind::Zero) {
        p.add_equality(row.coeffs, -row.constant);
      } else {
        RationalVector neg(dim);
        for (std::size_t j = 0; j < dim; ++j) neg[j] = -row.coeffs[j];
        p.add_inequality(neg, row.constant);
      }
    }
  return p;
}

bool is_const(const AffineRow& r) {
  return std::all_of(r.coeffs.begin(), r.coeffs.end(), [](const Rational& v) { return v == 0; });
}

bool is_zero_row(const AffineRow& r) { return r.constant == 0 && is_const(r); }

// Membership of a block whose rows carry no variables.
bool constant_block_holds(const Block& b) {
  ConicSet probe(0);
  std::vector<AffineRow> rows;
  for (const auto& r : b.rows) rows.push_back({RationalVector{}, r.constant});
  probe.add_block(b.kind, rows);
  return probe.contains(RationalVector{});
}

AffineRow scaled_sum(const AffineRow& a, int sa, const AffineRow& b, int sb) {
  AffineRow out{RationalVector(a.coeffs.size()), sa * a.constant + sb * b.constant};
  for (std::size_t j = 0; j < out.coeffs.size(); ++j) out.coeffs[j] = sa * a.coeffs[j] + sb * b.coeffs[j];
  return out;
}

// Rows in which increasing a variable can only help feasibility.
bool monotone_row(ConeKind kind, std::size_t index) {
  switch (kind) {
    case ConeKind::Nonneg:
      return true;
    case ConeKind::SecondOrder:
      return index == 0;
    case ConeKind::RotatedSecondOrder:
      return index <= 1;
    case ConeKind::Zero:
      return false;
  }
  return false;
}

bool upward_free(const std::vector<Block>& blocks, std::size_t var) {
  for (const auto& b : blocks)
    for (std::size_t k = 0; k < b.rows.size(); ++k) {
      const Rational& c = b.rows[k].coeffs[var];
      if (c == 0) continue;
      if (c < 0 || !monotone_row(b.kind, k)) return false;
    }
  return true;
}

bool has_free_push(const std::vector<Block>& blocks, const AffineRow& row, const std::vector<bool>& protected_columns) {
  for (std::size_t j = 0; j < row.coeffs.size(); ++j)
    if (row.coeffs[j] > 0 && !protected_columns[j] && upward_free(blocks, j)) return true;
  return false;
}

}  // namespace

std::optional<PolyhedronH> to_polyhedron(const ConicSet& s) {
  if (!s.is_polyhedral()) return std::nullopt;
  return blocks_to_polyhedron(split_blocks(s), s.ambient_dim());
}

ConicSet fix_variables(const ConicSet& s, const std::vector<std::size_t>& indices, const RationalVector& values) {
  if (indices.size() != values.size()) throw Error("dimension mismatch");
  const std::size_t n = s.ambient_dim();
  std::vector<bool> fixed(n, false);
  for (auto i : indices) {
    if (i >= n) throw Error("index out of range");
    fixed[i] = true;
  }
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < n; ++j)
    if (!fixed[j]) keep.push_back(j);
  RationalMatrix a(s.a().rows(), keep.size());
  RationalVector b = s.b();
  for (std::size_t r = 0; r < s.a().rows(); ++r) {
    for (std::size_t k = 0; k < keep.size(); ++k) a(r, k) = s.a()(r, keep[k]);
    for (std::size_t k = 0; k < indices.size(); ++k) b[r] += s.a()(r, indices[k]) * values[k];
  }
  return ConicSet(std::move(a), std::move(b), s.cones());
}

std::optional<PolyhedronH> reduce_to_polyhedron(const ConicSet& s, const std::vector<bool>& protected_columns) {
  const std::size_t n = s.ambient_dim();
  if (protected_columns.size() != n) throw Error("dimension mismatch");
  auto blocks = split_blocks(s);
  auto infeasible = [&] {
    PolyhedronH p(n);
    p.add_inequality(RationalVector(n), Rational(-1));
    return p;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      Block& b = blocks[bi];
      if (std::all_of(b.rows.begin(), b.rows.end(), is_const)) {
        if (!constant_block_holds(b)) return infeasible();
        if (b.kind == ConeKind::Zero || b.kind == ConeKind::Nonneg) continue;
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bi));
        changed = true;
        break;
      }
      if (b.kind == ConeKind::Zero || b.kind == ConeKind::Nonneg) {
        for (const auto& r : b.rows)
          if (is_const(r) && (b.kind == ConeKind::Zero ? r.constant != 0 : r.constant < 0)) return infeasible();
        continue;
      }
      const std::size_t head = b.kind == ConeKind::SecondOrder ? 1 : 2;

      // Coordinates of x that vanish identically contribute nothing.
      std::vector<AffineRow> xs;
      for (std::size_t k = head; k < b.rows.size(); ++k)
        if (!is_zero_row(b.rows[k])) xs.push_back(b.rows[k]);

      std::optional<std::vector<Block>> replacement;
      bool drop = false;

      if (b.kind == ConeKind::SecondOrder) {
        const AffineRow& t = b.rows[0];
        if (xs.empty()) {
          replacement = std::vector<Block>{{ConeKind::Nonneg, {t}}};
        } else if (xs.size() == 1) {
          replacement = std::vector<Block>{{ConeKind::Nonneg, {scaled_sum(t, 1, xs[0], -1), scaled_sum(t, 1, xs[0], 1)}}};
        } else if (is_const(t) && t.constant < 0) {
          return infeasible();
        } else if (is_zero_row(t)) {
          replacement = std::vector<Block>{{ConeKind::Zero, xs}};
        } else if (has_free_push(blocks, t, protected_columns)) {
          drop = true;
        }
      } else {
        const AffineRow& z = b.rows[0];
        const AffineRow& t = b.rows[1];
        if ((is_const(z) && z.constant < 0) || (is_const(t) && t.constant < 0)) return infeasible();
        if (xs.empty()) {
          replacement = std::vector<Block>{{ConeKind::Nonneg, {z, t}}};
        } else if (is_zero_row(z)) {
          replacement = std::vector<Block>{{ConeKind::Zero, xs}, {ConeKind::Nonneg, {t}}};
        } else if (is_zero_row(t)) {
          replacement = std::vector<Block>{{ConeKind::Zero, xs}, {ConeKind::Nonneg, {z}}};
        } else if (is_const(z) && z.constant > 0 && has_free_push(blocks, t, protected_columns)) {
          drop = true;
        } else if (is_const(t) && t.constant > 0 && has_free_push(blocks, z, protected_columns)) {
          drop = true;
        } else if (is_const(z) && is_const(t) && xs.size() == 1) {
          Rational root;
          if (exact_root(Rational(z.constant * t.constant), 2, root)) {
            AffineRow r{RationalVector(n), root};
            replacement = std::vector<Block>{{ConeKind::Nonneg, {scaled_sum(r, 1, xs[0], -1), scaled_sum(r, 1, xs[0], 1)}}};
          }
        }
      }

      if (drop) {
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bi));
        changed = true;
        break;
      }
      if (replacement) {
        blocks.erase(blocks.begin() + static_cast<std::ptrdiff_t>(bi));
        blocks.insert(blocks.end(), replacement->begin(), replacement->end());
        changed = true;
        break;
      }
    }
  }
  for (const auto& b : blocks)
    if (b.kind != ConeKind::Zero && b.kind != ConeKind::Nonneg) return std::nullopt;
  return blocks_to_polyhedron(blocks, n);
}

}  // namespace micp
