// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "micp/rational.hpp"

namespace micp {

/// gcd of the absolute values; 0 iff every component is zero.
/// Throws Error("empty input") on an empty vector.
Integer gcd_vector(const IntegerVector& v);

struct HermiteDecomposition {
  IntegerMatrix h;  ///< lower triangular, A * U = H
  IntegerMatrix u;  ///< unimodular
};

/// Column-style Hermite normal form of a square nonsingular integer matrix.
///
/// H is lower triangular with a positive diagonal; every off-diagonal entry
/// of row i lies in (-H(i,i), 0]. Only unimodular column operations are
/// applied, so U is unimodular by construction.
///
/// Errors: "singular matrix", "non-integral input", "non-square matrix".
HermiteDecomposition hermite_normal_form(const RationalMatrix& a);
HermiteDecomposition hermite_normal_form(const IntegerMatrix& a);

/// True iff H satisfies the three normal-form conditions above.
bool is_hermite_normal_form(const IntegerMatrix& h);

enum class ColumnPosition { first, last };

/// A d x d unimodular matrix with r as its first or last column.
///
/// Built by completing r to a rational basis B, scaling B^{-1} to an
/// integer matrix qB^{-1}, and taking U = B H / q from its HNF. The last
/// column of that U is (H_dd / q) r, and primitivity of r forces the factor
/// to be 1; the result is re-checked before returning.
///
/// Errors: "zero vector", "non-primitive vector".
IntegerMatrix unimodular_completion(const IntegerVector& r, ColumnPosition position = ColumnPosition::last);

bool is_unimodular(const IntegerMatrix& u);

}  // namespace micp
