// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "micp/formulation.hpp"
#include "micp/naturals.hpp"
#include "micp/polyhedron.hpp"

namespace micp {

/// Piecewise linear function on [0, inf) with integer breakpoints: the
/// values P(0..m) followed by a slope block repeated forever.
struct PwlFunction {
  std::vector<Rational> prefix_values;
  std::vector<Rational> repeating_slopes;

  std::size_t m() const { return prefix_values.empty() ? 0 : prefix_values.size() - 1; }
  Rational value(Natural i) const;
  /// P(i + 1) - P(i).
  Rational slope(Natural i) const;
  void validate() const;
};

/// conv{(i, x), (i + 1, x + c)}.
struct Segment {
  Natural i = 0;
  Rational x;
  Rational c;
  friend bool operator==(const Segment& a, const Segment& b) { return a.i == b.i && a.x == b.x && a.c == b.c; }
};
using SegmentSet = std::vector<Segment>;

PolyhedronH segment_polyhedron(const Segment& s);
SegmentSet graph_segments(const PwlFunction& f, Natural count);

enum class PwlMode { Global, Eventual };

struct PwlPeriod {
  bool periodic = false;
  Natural threshold = 0;
  Natural t = 0;
};

/// Minimal period of the slope word from the least threshold on. In global
/// mode a positive threshold is reported as not periodic.
PwlPeriod detect_pwl_period(const PwlFunction& f, PwlMode mode = PwlMode::Eventual);

/// Segments start..start+t-1 plus lambda * (t, P(start + t) - P(start)).
/// Columns: x1 x2 | theta_0.. | z_0.. lambda.
MicpFormulation pwl_tail_formulation(const PwlFunction& f, Natural start, Natural t);

/// Throws Error("function is not globally periodic; use pwl_decompose").
MicpFormulation pwl_to_milp(const PwlFunction& f);

/// Binary selector over finitely many segments.
MicpFormulation segment_selector(const SegmentSet& segments);

struct PwlDecomposition {
  SegmentSet head;
  PwlPeriod period;
  MicpFormulation formulation;
};
PwlDecomposition pwl_decompose(const PwlFunction& f);

/// Prefix (1, 0), block (3/2).
PwlFunction fixture_staircase();

}  // namespace micp
