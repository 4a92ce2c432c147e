// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micp/polyhedron.hpp"
#include "micp/rational.hpp"

namespace micp {

enum class ConeKind { Zero, Nonneg, SecondOrder, RotatedSecondOrder };

std::string cone_kind_name(ConeKind kind);
ConeKind parse_cone_kind(const std::string& name);

/// Zero(m) = {0}, Nonneg(m) = R^m_+, SecondOrder(m) = {(t, x) : |x| <= t},
/// RotatedSecondOrder(m) = {(z, t, x) : |x|^2 <= z t, z >= 0, t >= 0}.
struct ElementaryCone {
  ConeKind kind = ConeKind::Nonneg;
  std::size_t dim = 0;

  friend bool operator==(const ElementaryCone&, const ElementaryCone&) = default;
};

/// An affine row a.v + c; the building block handed to ConicSet::add_block.
struct AffineRow {
  RationalVector coeffs;
  Rational constant;
};

/// {v : A v + b in K_1 x ... x K_m}.
class ConicSet {
 public:
  ConicSet() = default;
  explicit ConicSet(std::size_t ambient_dim);
  ConicSet(RationalMatrix a, RationalVector b, std::vector<ElementaryCone> cones);

  std::size_t ambient_dim() const { return dim_; }
  const RationalMatrix& a() const { return a_; }
  const RationalVector& b() const { return b_; }
  const std::vector<ElementaryCone>& cones() const { return cones_; }

  /// First row of each cone block, in block order.
  std::vector<std::size_t> block_offsets() const;

  void add_block(ConeKind kind, const std::vector<AffineRow>& rows);
  void add_equality(const RationalVector& coeffs, const Rational& rhs);    // coeffs.v = rhs
  void add_inequality(const RationalVector& coeffs, const Rational& rhs);  // coeffs.v <= rhs
  void add_lower_bound(std::size_t var, const Rational& lo);
  void add_upper_bound(std::size_t var, const Rational& hi);

  /// Copies every block of `other`, mapping its variable j to column
  /// column_map[j] of this set. A column index equal to kConstant routes the
  /// coefficient into the constant term instead.
  void append(const ConicSet& other, const std::vector<std::size_t>& column_map);
  static constexpr std::size_t kConstant = static_cast<std::size_t>(-1);

  /// Adds `count` fresh variables at the end, with zero coefficients.
  void add_variables(std::size_t count);

  bool contains(const RationalVector& v) const;
  /// Only Zero and Nonneg blocks.
  bool is_polyhedral() const;

  friend bool operator==(const ConicSet&, const ConicSet&) = default;

 private:
  std::size_t dim_ = 0;
  RationalMatrix a_;
  RationalVector b_;
  std::vector<ElementaryCone> cones_;
};

/// {v : A v in K}. The set is assumed nonempty.
ConicSet recession_cone(const ConicSet& s);

/// {(v, z) : A v + z b in K, z >= 0}.
ConicSet conic_hull(const ConicSet& t);

/// {(v, t) : v in T, |v|^2 <= t * 1}; the new t is the last coordinate.
ConicSet recession_equalize(const ConicSet& t);

ConicSet from_polyhedron(const PolyhedronH& p);

/// Exact conversion when the set is polyhedral; nullopt otherwise.
std::optional<PolyhedronH> to_polyhedron(const ConicSet& s);

/// Substitutes v[indices[k]] = values[k] and drops those columns.
ConicSet fix_variables(const ConicSet& s, const std::vector<std::size_t>& indices, const RationalVector& values);

/// Eliminates non-polyhedral blocks whose effect on the protected columns is
/// polyhedral, using explicit witnesses: a product or radius row that a free
/// unprotected variable can push to infinity, a product row fixed at zero, a
/// one-coordinate second-order block, and so on. The result has the same
/// projection onto the protected columns (the remaining columns are kept but
/// may be less constrained). Returns nullopt when some block survives.
std::optional<PolyhedronH> reduce_to_polyhedron(const ConicSet& s, const std::vector<bool>& protected_columns);

}  // namespace micp
