// SPDX-License-Identifier: Apache-2.0
#include "micp/pwl.hpp"

namespace micp {

void PwlFunction::validate() const {
  if (prefix_values.empty()) throw Error("prefix needs P(0)");
  if (repeating_slopes.empty()) throw Error("empty slope block");
}

Rational PwlFunction::value(Natural i) const {
  validate();
  if (i < 0) throw Error("negative argument");
  const auto mm = static_cast<Natural>(m());
  if (i <= mm) return prefix_values[static_cast<std::size_t>(i)];
  const auto len = static_cast<Natural>(repeating_slopes.size());
  Rational block_sum = 0;
  for (const auto& s : repeating_slopes) block_sum += s;
  const Natural steps = i - mm;
  Rational v = prefix_values.back() + block_sum * Rational(static_cast<long>(steps / len));
  for (Natural k = 0; k < steps % len; ++k) v += repeating_slopes[static_cast<std::size_t>(k)];
  return v;
}

Rational PwlFunction::slope(Natural i) const {
  validate();
  if (i < 0) throw Error("negative argument");
  const auto mm = static_cast<Natural>(m());
  if (i < mm) return prefix_values[static_cast<std::size_t>(i + 1)] - prefix_values[static_cast<std::size_t>(i)];
  return repeating_slopes[static_cast<std::size_t>((i - mm) % static_cast<Natural>(repeating_slopes.size()))];
}

PolyhedronH segment_polyhedron(const Segment& s) {
  // x1 in [i, i + 1], x2 = x + c (x1 - i)
  const Rational i(static_cast<long>(s.i));
  PolyhedronH out(2);
  out.add_inequality({Rational(-1), Rational(0)}, -i);
  out.add_inequality({Rational(1), Rational(0)}, i + 1);
  out.add_equality({-s.c, Rational(1)}, s.x - s.c * i);
  return out;
}

SegmentSet graph_segments(const PwlFunction& f, Natural count) {
  SegmentSet out;
  for (Natural i = 0; i < count; ++i) out.push_back({i, f.value(i), f.slope(i)});
  return out;
}

PwlPeriod detect_pwl_period(const PwlFunction& f, PwlMode mode) {
  f.validate();
  const auto& w = f.repeating_slopes;
  const std::size_t len = w.size();
  // Border array of the block; the infinite repetition has period len - border
  // only when that divides len.
  std::vector<std::size_t> border(len + 1, 0);
  for (std::size_t i = 1, k = 0; i < len; ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k];
    if (w[i] == w[k]) ++k;
    border[i + 1] = k;
  }
  std::size_t p = len - border[len];
  if (len % p != 0) p = len;

  PwlPeriod out;
  out.t = static_cast<Natural>(p);
  Natural tau = static_cast<Natural>(f.m());
  while (tau > 0 && f.slope(tau - 1) == f.slope(tau - 1 + out.t)) --tau;
  out.threshold = tau;
  out.periodic = mode == PwlMode::Eventual || tau == 0;
  return out;
}

MicpFormulation pwl_tail_formulation(const PwlFunction& f, Natural start, Natural t) {
  if (t < 1) throw Error("period must be positive");
  const auto k = static_cast<std::size_t>(t);
  // x1 x2 | theta_0..theta_{k-1} | z_0..z_{k-1} lambda
  const std::size_t th = 2;
  const std::size_t zb = 2 + k;
  const std::size_t lam = zb + k;
  ConicSet m(lam + 1);
  RationalVector row1(lam + 1), row2(lam + 1), simplex(lam + 1);
  row1[0] = 1;
  row2[1] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    const Natural i = start + static_cast<Natural>(j);
    row1[zb + j] = -Rational(static_cast<long>(i));
    row1[th + j] = -1;
    row2[zb + j] = -f.value(i);
    row2[th + j] = -f.slope(i);
    simplex[zb + j] = 1;
  }
  row1[lam] = -Rational(static_cast<long>(t));
  row2[lam] = -(f.value(start + t) - f.value(start));
  m.add_equality(row1, 0);
  m.add_equality(row2, 0);
  m.add_equality(simplex, 1);
  for (std::size_t j = 0; j < k; ++j) {
    m.add_lower_bound(th + j, 0);
    RationalVector cap(lam + 1);
    cap[zb + j] = -1;
    cap[th + j] = 1;
    m.add_inequality(cap, 0);
    m.add_lower_bound(zb + j, 0);
    m.add_upper_bound(zb + j, 1);
  }
  m.add_lower_bound(lam, 0);
  return {std::move(m), 2, k, k + 1, "periodic segments + intcone(r)"};
}

MicpFormulation pwl_to_milp(const PwlFunction& f) {
  auto per = detect_pwl_period(f, PwlMode::Global);
  if (!per.periodic) throw Error("function is not globally periodic; use pwl_decompose");
  return pwl_tail_formulation(f, 0, per.t);
}

MicpFormulation segment_selector(const SegmentSet& segments) {
  const std::size_t k = segments.size();
  // x1 x2 | theta | w
  const std::size_t th = 2;
  const std::size_t wb = 2 + k;
  ConicSet m(wb + k);
  RationalVector row1(wb + k), row2(wb + k), simplex(wb + k);
  row1[0] = 1;
  row2[1] = 1;
  for (std::size_t j = 0; j < k; ++j) {
    row1[wb + j] = -Rational(static_cast<long>(segments[j].i));
    row1[th + j] = -1;
    row2[wb + j] = -segments[j].x;
    row2[th + j] = -segments[j].c;
    simplex[wb + j] = 1;
  }
  m.add_equality(row1, 0);
  m.add_equality(row2, 0);
  m.add_equality(simplex, 1);
  for (std::size_t j = 0; j < k; ++j) {
    m.add_lower_bound(th + j, 0);
    RationalVector cap(wb + k);
    cap[wb + j] = -1;
    cap[th + j] = 1;
    m.add_inequality(cap, 0);
    m.add_lower_bound(wb + j, 0);
    m.add_upper_bound(wb + j, 1);
  }
  return {std::move(m), 2, k, k, "segment selector"};
}

PwlDecomposition pwl_decompose(const PwlFunction& f) {
  PwlDecomposition out;
  out.period = detect_pwl_period(f, PwlMode::Eventual);
  out.head = graph_segments(f, out.period.threshold);
  MicpFormulation tail = pwl_tail_formulation(f, out.period.threshold, out.period.t);
  out.formulation = out.head.empty() ? std::move(tail) : union_rational(tail, segment_selector(out.head));
  return out;
}

PwlFunction fixture_staircase() { return {{1, 0}, {Rational(3, 2)}}; }

}  // namespace micp
