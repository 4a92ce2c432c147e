// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "micp/slices.hpp"

namespace micp {

/// M = conv(points) + cone(rays) in R^{n+p+d}, rays integral.
struct BoundedInput {
  std::vector<RationalVector> points;
  std::vector<IntegerVector> rays;
  std::size_t n = 0;
  std::size_t p = 0;
  std::size_t d = 0;
};

struct DecomposedPiece {
  IntegerVector z;
  PolyhedronH x_set;
};

/// S = union of pieces + intcone(rays_x).
struct Decomposition {
  std::vector<DecomposedPiece> pieces;
  std::vector<RationalVector> rays_x;
  std::vector<IntegerVector> rays;  ///< full rays, for reconstruction
};

/// Enumerates the integer points of (conv(points) + B) with
/// B = {sum gamma_j r_j : 0 <= gamma <= 1} and projects each slice onto x.
Decomposition decompose_bounded(const BoundedInput& m);

/// The formulation of M itself (multipliers become continuous variables).
MicpFormulation bounded_input_formulation(const BoundedInput& m);

struct ReconstructionCheck {
  bool ok = true;
  std::string detail;
};

/// For every z in the window, compares the slice of M with the union of
/// translated pieces. Exact for n = 1; for n >= 2 compares membership on a
/// grid of step 1/grid inside x_window.
ReconstructionCheck verify_decomposition(const BoundedInput& m, const Decomposition& dec, const IntegerBox& z_window,
                                         const RationalVector& x_lo, const RationalVector& x_hi, unsigned grid = 8);

/// Disjoint closed intervals in increasing order; bounds may be infinite.
std::vector<Interval> merge_intervals(std::vector<Interval> parts);

}  // namespace micp
