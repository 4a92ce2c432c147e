// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micp/conic_set.hpp"
#include "micp/polyhedron.hpp"

namespace micp {

/// M together with the (x, y, z) partition; z is integer constrained.
struct MicpFormulation {
  ConicSet set;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t d = 0;
  std::string provenance;

  std::size_t z_begin() const { return n + p; }
  void validate() const;
};

enum class CombineOp { Intersection, Product, MinkowskiSum };

MicpFormulation combine(CombineOp op, const MicpFormulation& f1, const MicpFormulation& f2);

/// Each set lives in R^{n + p_i}; the first n coordinates are x. Layout:
/// x | x^1 y^1 ... x^k y^k | z. Requires a common recession cone; a sampled
/// check records a warning in the provenance when the cones look different.
MicpFormulation union_basic(const std::vector<ConicSet>& sets, std::size_t n);

/// Adds |(x^i, y^i)|^2 <= z_i t_i. Layout: x | x^i y^i ... | t | z.
MicpFormulation union_projected(const std::vector<ConicSet>& sets, std::size_t n);

/// Adds |x^i|^2 <= z_i t_i. When every set is a bounded polyhedron the norm
/// rows are implied and omitted, keeping the formulation polyhedral.
MicpFormulation union_ideal(const std::vector<ConicSet>& sets, std::size_t n);

/// Union of two formulations of sets in R^n. Layout:
/// x | x^1 y^1 | x^2 y^2 | t | z^1 z^2 z'.
MicpFormulation union_rational(const MicpFormulation& f1, const MicpFormulation& f2);

/// Compares two recession cones on sampled lattice directions (advisory).
bool recession_cones_agree(const ConicSet& a, const ConicSet& b, std::size_t samples = 26);

enum class IdealVerdict { Ideal, NotIdeal, Indeterminate };

struct IdealReport {
  IdealVerdict verdict = IdealVerdict::Ideal;
  RationalVector witness;  ///< a minimal-face point with fractional z
  std::string detail;
};

/// Polyhedral M only; throws "formulation is not polyhedral".
IdealReport check_ideal(const MicpFormulation& f);

/// M' = {(x, y, z) : (x, y, U z) in M}. Throws "non-unimodular matrix".
MicpFormulation reindex_unimodular(const MicpFormulation& f, const IntegerMatrix& u);

/// Moves the first integer variable into the continuous block.
MicpFormulation relax_first_integer(const MicpFormulation& f);

/// A polyhedral formulation built directly from H-representation data.
MicpFormulation polyhedral_formulation(const PolyhedronH& m, std::size_t n, std::size_t p, std::size_t d,
                                       std::string provenance = {});

}  // namespace micp
