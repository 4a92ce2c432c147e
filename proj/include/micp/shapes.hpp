// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "micp/polyhedron.hpp"

namespace micp {

constexpr std::size_t kShapeMaxDim = 3;

/// Vertices of conv(points), sorted lexicographically. n <= 3; a
/// lower-dimensional 3D input throws Error("degenerate polytope").
std::vector<RationalVector> hull_vertices(const std::vector<RationalVector>& points);

/// Exact volume (length / area / volume by dimension). Zero for degenerate
/// inputs; throws Error("unbounded polytope") when rays or lines are present.
Rational polytope_volume(const PolyhedronV& p);

/// True iff x lies in conv(p.vertices).
bool polytope_contains(const PolyhedronV& p, const RationalVector& x);

PolyhedronV minkowski_sum(const PolyhedronV& p, const PolyhedronV& q);
/// s * p + v.
PolyhedronV scale_translate(const PolyhedronV& p, const Rational& s, const RationalVector& v);

struct TranslationResult {
  bool equivalent = false;
  RationalVector v;
};
TranslationResult translation_equivalent(const PolyhedronV& p, const PolyhedronV& q);

/// IrrationalRatio is kept for callers that compare against it; a homothety
/// between polytopes with rational vertices always has a rational scale.
enum class HomothetyOutcome { Homothetic, NotHomothetic, IrrationalRatio };
const char* homothety_outcome_name(HomothetyOutcome o);

/// q = scale * p + translation with scale > 0.
struct HomothetyResult {
  HomothetyOutcome outcome = HomothetyOutcome::NotHomothetic;
  Rational scale;
  RationalVector translation;
};
HomothetyResult homothety_equivalent(const PolyhedronV& p, const PolyhedronV& q);

/// Vol(P/2 + Q/2)^(1/n) - (Vol(P)^(1/n) + Vol(Q)^(1/n)) / 2. The sign is
/// exact. `surrogate` is Vol(P/2 + Q/2) - ((Vol P^(1/n) + Vol Q^(1/n)) / 2)^n,
/// exact when every root involved is rational and otherwise a rational
/// approximation to within 2^-64.
struct BrunnMinkowskiGap {
  int sign = 0;
  Rational surrogate;
  bool exact = true;
  Rational mixed_volume;  ///< Vol(P/2 + Q/2)
};
BrunnMinkowskiGap brunn_minkowski_gap(const PolyhedronV& p, const PolyhedronV& q);

struct IndexedFamily {
  std::vector<IntegerVector> index_points;
  std::vector<PolyhedronV> members;
};

enum class FamilyVerdict { TheoremConsistent, HypothesisViolated, CounterexampleCandidate, VolumesDiffer };
const char* family_verdict_name(FamilyVerdict v);

struct FamilyReport {
  FamilyVerdict verdict = FamilyVerdict::TheoremConsistent;
  std::vector<Rational> volumes;
  /// Indices into the family, grouped by parity of the index point.
  std::vector<std::vector<std::size_t>> parity_classes;
  /// One member per translation class inside each parity class.
  std::vector<std::size_t> representatives;
  /// Homothety classes, reported when volumes differ.
  std::vector<std::vector<std::size_t>> homothety_classes;
  /// (z, z', midpoint) whose midpoint member fails to contain the Minkowski average.
  std::optional<std::vector<std::size_t>> violation;
  /// Two same-parity members that are not translates.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
  std::string detail;
};
FamilyReport classify_family(const IndexedFamily& f);

}  // namespace micp
