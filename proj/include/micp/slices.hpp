// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "micp/formulation.hpp"

namespace micp {

/// Inclusive integer box lo <= z <= hi.
struct IntegerBox {
  IntegerVector lo;
  IntegerVector hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(const IntegerVector& z) const;
  /// All points in lexicographic order.
  std::vector<IntegerVector> points() const;
};

/// The slice of M at a fixed z. When the slice reduces to a polyhedron,
/// `x_set` is its exact projection onto x; otherwise `conic` holds the slice
/// over (x, y) and emptiness is not decided.
struct Slice {
  IntegerVector z;
  bool empty = false;
  std::optional<PolyhedronH> x_set;
  std::optional<ConicSet> conic;
};

Slice slice(const MicpFormulation& f, const IntegerVector& z);

struct SliceOptions {
  /// Bounds on z. Without it, bounds are inferred from the constraints and
  /// an unbounded integer variable raises Error("explicit window required").
  std::optional<IntegerBox> window;
  /// Extra constraints on x only (dimension n), e.g. a clipping box.
  std::optional<PolyhedronH> x_region;
  FmOptions fm;
};

/// Every z (in the window) with a nonempty slice, in lexicographic order.
struct SliceFamily {
  std::vector<IntegerVector> index_window;
  std::vector<Slice> slices;
};

SliceFamily enumerate_slices(const MicpFormulation& f, const SliceOptions& options = {});

/// The distinct x-pieces whose union is the represented set (within the
/// window). Integer variables that do not interact with x are only checked
/// for one feasible completion. Throws Error("slice is not polyhedral") when
/// some piece cannot be reduced to a polyhedron.
std::vector<PolyhedronH> slice_union(const MicpFormulation& f, const SliceOptions& options = {});

/// Bounding box of the z-projection of the polyhedral relaxation, when the
/// constraints bound every integer variable.
std::optional<IntegerBox> default_window(const MicpFormulation& f);

/// sup{c^T x : x in A_z}; nullopt when unbounded. Throws Error("empty slice").
std::optional<Rational> support_function(const MicpFormulation& f, const IntegerVector& z, const RationalVector& c);

}  // namespace micp
