// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "micp/rational.hpp"

namespace micp {

/// {v : A v <= b, E v = f} over Q^dim.
class PolyhedronH {
 public:
  PolyhedronH() = default;
  explicit PolyhedronH(std::size_t dim);
  PolyhedronH(RationalMatrix a, RationalVector b);
  PolyhedronH(RationalMatrix a, RationalVector b, RationalMatrix e, RationalVector f);

  /// Box lo <= v <= hi.
  static PolyhedronH box(const RationalVector& lo, const RationalVector& hi);

  std::size_t dim() const { return dim_; }
  const RationalMatrix& a() const { return a_; }
  const RationalVector& b() const { return b_; }
  const RationalMatrix& e() const { return e_; }
  const RationalVector& f() const { return f_; }

  void add_inequality(const RationalVector& coeffs, const Rational& rhs);
  void add_equality(const RationalVector& coeffs, const Rational& rhs);

  bool contains(const RationalVector& v) const;
  /// Decided exactly by projecting every variable away.
  bool is_empty() const;

  /// Substitutes v[index] = value and drops that column.
  PolyhedronH fix(std::size_t index, const Rational& value) const;
  PolyhedronH intersect(const PolyhedronH& other) const;

 private:
  std::size_t dim_ = 0;
  RationalMatrix a_;
  RationalVector b_;
  RationalMatrix e_;
  RationalVector f_;
};

/// conv(vertices) + cone(rays) + span(lines).
struct PolyhedronV {
  std::vector<RationalVector> vertices;
  std::vector<RationalVector> rays;
  std::vector<RationalVector> lines;

  bool empty() const { return vertices.empty(); }
  bool bounded() const { return rays.empty() && lines.empty(); }
};

struct FmOptions {
  std::size_t row_cap = 10000;
};

/// Exact Fourier-Motzkin projection onto the variables listed in `keep`
/// (output columns follow the order of `keep`). Redundancy removal is
/// syntactic: duplicate and dominated rows, trivially true rows. An empty
/// input yields a polyhedron whose rows include 0 <= -1.
/// Throws Error("Fourier-Motzkin row cap exceeded").
PolyhedronH fm_project(const PolyhedronH& p, const std::vector<std::size_t>& keep, const FmOptions& options = {});

constexpr std::size_t kDeskScaleDim = 8;

/// Exact V-representation by basis enumeration. Lines are returned as a
/// basis of the lineality space; vertices are then the vertices of
/// P intersected with its orthogonal complement, i.e. one point per
/// minimal face. Rays are primitive integer vectors.
/// Throws Error("desk-scale limit") when dim exceeds `max_dim`.
PolyhedronV vertices_and_rays(const PolyhedronH& p, std::size_t max_dim = kDeskScaleDim);

/// max c.v over P, or nullopt for +infinity. Throws Error("empty polyhedron").
std::optional<Rational> linear_max(const PolyhedronH& p, const RationalVector& c);

/// Lower/upper bounds of a one-dimensional polyhedron (nullopt = infinite).
struct Interval {
  std::optional<Rational> lo;
  std::optional<Rational> hi;
  bool empty = false;

  friend bool operator==(const Interval&, const Interval&) = default;
};
Interval to_interval(const PolyhedronH& p);

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction.
IntegerVector primitive_direction(const RationalVector& v);

}  // namespace micp
