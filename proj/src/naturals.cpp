// SPDX-License-Identifier: Apache-2.0
#include "micp/naturals.hpp"

#include <algorithm>
#include <memory>
#include <numeric>
#include <set>

namespace micp {

bool PeriodicNaturalSet::contains(Natural x) const {
  if (x < 0) return false;
  if (std::binary_search(exceptional.begin(), exceptional.end(), x)) return true;
  for (auto o : offsets)
    if (x >= o && (x - o) % period == 0) return true;
  return false;
}

std::vector<Natural> PeriodicNaturalSet::enumerate(Natural bound) const {
  std::vector<Natural> out;
  for (Natural x = 0; x <= bound; ++x)
    if (contains(x)) out.push_back(x);
  return out;
}

namespace {

void check_valid(const PeriodicNaturalSet& s) {
  if (s.period < 1) throw Error("period must be positive");
  for (auto v : s.exceptional)
    if (v < 0) throw Error("negative member");
  std::set<Natural> residues;
  for (auto o : s.offsets) {
    if (o < 0) throw Error("negative member");
    if (!residues.insert(o % s.period).second) throw Error("offsets share a residue");
  }
}

// Canonical triple of a set that is `t`-periodic on [threshold, bound].
PeriodicNaturalSet canonical_from_window(const std::vector<bool>& member, Natural t, Natural threshold) {
  const Natural bound = static_cast<Natural>(member.size()) - 1;
  PeriodicNaturalSet out;
  out.period = t;
  std::vector<bool> covered(member.size(), false);
  for (Natural r = 0; r < t; ++r) {
    Natural o = threshold + ((r - threshold % t) % t + t) % t;
    if (o > bound || !member[static_cast<std::size_t>(o)]) continue;
    while (o - t >= 0 && member[static_cast<std::size_t>(o - t)]) o -= t;
    out.offsets.push_back(o);
    for (Natural x = o; x <= bound; x += t) covered[static_cast<std::size_t>(x)] = true;
  }
  std::sort(out.offsets.begin(), out.offsets.end());
  for (Natural x = 0; x <= bound; ++x)
    if (member[static_cast<std::size_t>(x)] && !covered[static_cast<std::size_t>(x)]) out.exceptional.push_back(x);
  if (out.offsets.empty()) out.period = 1;
  return out;
}

}  // namespace

PeriodicNaturalSet canonicalize(const PeriodicNaturalSet& s) {
  check_valid(s);
  if (s.offsets.empty()) {
    PeriodicNaturalSet out;
    std::set<Natural> e(s.exceptional.begin(), s.exceptional.end());
    out.exceptional.assign(e.begin(), e.end());
    return out;
  }
  // Eventual residue pattern and its least period.
  const Natural t = s.period;
  std::vector<bool> occupied(static_cast<std::size_t>(t), false);
  for (auto o : s.offsets) occupied[static_cast<std::size_t>(o % t)] = true;
  Natural tmin = t;
  for (Natural q = 1; q < t; ++q) {
    if (t % q != 0) continue;
    bool ok = true;
    for (Natural r = 0; r < t && ok; ++r) ok = occupied[static_cast<std::size_t>(r)] == occupied[static_cast<std::size_t>((r + q) % t)];
    if (ok) {
      tmin = q;
      break;
    }
  }
  Natural top = 0;
  for (auto v : s.exceptional) top = std::max(top, v);
  for (auto v : s.offsets) top = std::max(top, v);
  const Natural threshold = top + 1;
  const Natural bound = threshold + 3 * t;
  std::vector<bool> member(static_cast<std::size_t>(bound + 1));
  for (Natural x = 0; x <= bound; ++x) member[static_cast<std::size_t>(x)] = s.contains(x);
  return canonical_from_window(member, tmin, threshold);
}

bool NaturalOracle::contains(Natural x) const {
  if (x < 0) return false;
  if (x > bound_) throw Error("query beyond certified bound");
  return predicate_(x);
}

NaturalOracle oracle_from_list(const std::vector<Natural>& members, Natural certified_bound) {
  auto set = std::make_shared<std::set<Natural>>(members.begin(), members.end());
  return NaturalOracle([set](Natural x) { return set->count(x) > 0; }, certified_bound);
}

std::vector<Natural> intcone_enumerate(const std::vector<Natural>& generators, Natural bound) {
  if (generators.empty()) throw Error("empty generator set");
  std::vector<bool> reach(static_cast<std::size_t>(std::max<Natural>(bound, 0) + 1), false);
  reach[0] = true;
  for (Natural v = 1; v <= bound; ++v)
    for (auto g : generators)
      if (g > 0 && g <= v && reach[static_cast<std::size_t>(v - g)]) {
        reach[static_cast<std::size_t>(v)] = true;
        break;
      }
  std::vector<Natural> out;
  for (Natural v = 0; v <= bound; ++v)
    if (reach[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

IntconeNormalForm intcone_normal_form(const std::vector<Natural>& generators) {
  if (generators.empty()) throw Error("empty generator set");
  IntconeNormalForm out;
  Natural g = 0;
  for (auto a : generators) {
    if (a < 0) throw Error("negative generator");
    g = std::gcd(g, a);
  }
  if (g == 0) {
    out.finite = true;
    out.set.exceptional = {0};
    return out;
  }
  out.gcd = g;
  std::vector<Natural> reduced;
  for (auto a : generators)
    if (a > 0) reduced.push_back(a / g);
  std::sort(reduced.begin(), reduced.end());
  reduced.erase(std::unique(reduced.begin(), reduced.end()), reduced.end());
  const Natural amin = reduced.front();
  const Natural amax = reduced.back();
  out.schur_bound = (amin - 1) * (amax - 1);

  // Every integer beyond the Schur bound is representable; a run of amin
  // consecutive members certifies that directly.
  const Natural scan = out.schur_bound + amin;
  auto members = intcone_enumerate(reduced, scan);
  std::vector<bool> in(static_cast<std::size_t>(scan + 1), false);
  for (auto v : members) in[static_cast<std::size_t>(v)] = true;
  Natural alpha = scan;
  while (alpha > 0 && in[static_cast<std::size_t>(alpha - 1)]) --alpha;
  out.threshold = alpha;

  out.set.period = g;
  out.set.offsets = {alpha * g};
  for (auto v : members)
    if (v < alpha) out.set.exceptional.push_back(v * g);

  // R_0: members of intcone(R') below the threshold; 0 is dropped from the product.
  Integer prod = 1;
  for (auto v : members)
    if (v > 0 && v < alpha) prod *= Integer(static_cast<long>(v));
  if (alpha <= 1) prod = 1;
  out.product_period = prod * Integer(static_cast<long>(g));
  return out;
}

bool window_periodic(const std::vector<bool>& member, Natural t, Natural threshold) {
  const Natural bound = static_cast<Natural>(member.size()) - 1;
  for (Natural x = std::max<Natural>(threshold, 0); x + t <= bound; ++x)
    if (member[static_cast<std::size_t>(x)] != member[static_cast<std::size_t>(x + t)]) return false;
  return true;
}

PeriodicityResult detect_periodicity(const NaturalOracle& s, Natural max_period, const PeriodicityOptions& options) {
  if (max_period < 1) throw Error("max period must be positive");
  const Natural bound = s.certified_bound();
  if (bound < options.window_factor * max_period) throw Error("insufficient window");
  std::vector<bool> member(static_cast<std::size_t>(bound + 1));
  for (Natural x = 0; x <= bound; ++x) member[static_cast<std::size_t>(x)] = s.contains(x);

  PeriodicityResult result;
  result.max_period = max_period;
  for (Natural t = 1; t <= max_period; ++t) {
    Natural last_mismatch = -1;
    for (Natural x = bound - t; x >= 0; --x)
      if (member[static_cast<std::size_t>(x)] != member[static_cast<std::size_t>(x + t)]) {
        last_mismatch = x;
        break;
      }
    Natural threshold = last_mismatch + 1;
    if (2 * threshold > bound) continue;
    result.periodic = true;
    result.threshold = threshold;
    result.set = canonical_from_window(member, t, threshold);
    result.set.window_certified = true;
    return result;
  }
  return result;
}

namespace {

// x = sum_i v_i w_i with a binary simplex over w.
MicpFormulation selector(const std::vector<Natural>& values) {
  const std::size_t k = values.size();
  ConicSet m(1 + k);
  RationalVector link(1 + k);
  link[0] = 1;
  RationalVector simplex(1 + k);
  for (std::size_t i = 0; i < k; ++i) {
    link[1 + i] = -Rational(static_cast<long>(values[i]));
    simplex[1 + i] = 1;
  }
  m.add_equality(link, 0);
  m.add_equality(simplex, 1);
  for (std::size_t i = 0; i < k; ++i) {
    m.add_lower_bound(1 + i, 0);
    m.add_upper_bound(1 + i, 1);
  }
  return {std::move(m), 1, 0, k, "finite selector"};
}

}  // namespace

MicpFormulation to_milp(const PeriodicNaturalSet& s) {
  check_valid(s);
  if (s.offsets.empty()) return selector(s.exceptional);
  const std::size_t k = s.offsets.size();
  // x | z_0..z_{k-1} lambda
  ConicSet m(2 + k);
  RationalVector link(2 + k);
  link[0] = 1;
  RationalVector simplex(2 + k);
  for (std::size_t j = 0; j < k; ++j) {
    link[1 + j] = -Rational(static_cast<long>(s.offsets[j]));
    simplex[1 + j] = 1;
  }
  link[1 + k] = -Rational(static_cast<long>(s.period));
  m.add_equality(link, 0);
  m.add_equality(simplex, 1);
  for (std::size_t j = 0; j < k; ++j) {
    m.add_lower_bound(1 + j, 0);
    m.add_upper_bound(1 + j, 1);
  }
  m.add_lower_bound(1 + k, 0);
  MicpFormulation periodic{std::move(m), 1, 0, k + 1, "offsets + period * N"};
  if (s.exceptional.empty()) return periodic;
  return union_rational(periodic, selector(s.exceptional));
}

namespace {

void check_epsilon(const Rational& eps) {
  Rational one_minus = 1 - eps;
  if (eps <= 0 || eps >= 1 || !(2 * eps * eps < one_minus * one_minus)) throw Error("epsilon out of range");
}

}  // namespace

bool s_epsilon_member(const Rational& eps, Natural x) {
  check_epsilon(eps);
  if (x < 0) return false;
  Integer xi(static_cast<long>(x));
  Integer two_x2 = 2 * xi * xi;
  Integer a = isqrt(two_x2);
  // frac(sqrt2 x) <= eps  <=>  2x^2 <= (a + eps)^2
  Rational lo = a + eps;
  if (Rational(two_x2) <= lo * lo) return true;
  // frac(sqrt2 x) >= 1 - sqrt2 eps  <=>  2 (x + eps)^2 >= (a + 1)^2
  Rational hi = xi + eps;
  Integer a1 = a + 1;
  return 2 * hi * hi >= Rational(a1 * a1);
}

NaturalOracle fixture_s_epsilon(const Rational& eps, Natural certified_bound) {
  check_epsilon(eps);
  return NaturalOracle([eps](Natural x) { return s_epsilon_member(eps, x); }, certified_bound);
}

ConicSet k_epsilon(const Rational& eps) {
  check_epsilon(eps);
  ConicSet k(2);
  k.add_block(ConeKind::SecondOrder, {{{0, 1}, eps}, {{1, 0}, 0}, {{1, 0}, 0}});
  k.add_block(ConeKind::SecondOrder, {{{2, 0}, 2 * eps}, {{0, 1}, 0}, {{0, 1}, 0}});
  k.add_lower_bound(0, 0);
  k.add_lower_bound(1, 0);
  return k;
}

}  // namespace micp
