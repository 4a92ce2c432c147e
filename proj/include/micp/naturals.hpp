// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "micp/conic_set.hpp"
#include "micp/formulation.hpp"

namespace micp {

using Natural = std::int64_t;

/// exceptional U (offsets + period * N).
///
/// Canonical form: the period is the minimal eventual period, each offset is
/// the least o of its residue with o + k*period in the set for all k >= 0,
/// and the exceptional points are exactly the members not covered by the
/// periodic part. A finite set has no offsets and period 1.
struct PeriodicNaturalSet {
  std::vector<Natural> exceptional;
  std::vector<Natural> offsets;
  Natural period = 1;
  bool window_certified = false;

  bool contains(Natural x) const;
  std::vector<Natural> enumerate(Natural bound) const;

  friend bool operator==(const PeriodicNaturalSet& a, const PeriodicNaturalSet& b) {
    return a.exceptional == b.exceptional && a.offsets == b.offsets && a.period == b.period;
  }
};

/// Rewrites any valid (exceptional, offsets, period) triple into canonical form.
PeriodicNaturalSet canonicalize(const PeriodicNaturalSet& s);

/// Membership predicate that is exact on [0, certified_bound].
class NaturalOracle {
 public:
  NaturalOracle(std::function<bool(Natural)> predicate, Natural certified_bound)
      : predicate_(std::move(predicate)), bound_(certified_bound) {}

  Natural certified_bound() const { return bound_; }
  /// Throws Error("query beyond certified bound").
  bool contains(Natural x) const;

 private:
  std::function<bool(Natural)> predicate_;
  Natural bound_;
};

NaturalOracle oracle_from_list(const std::vector<Natural>& members, Natural certified_bound);

std::vector<Natural> intcone_enumerate(const std::vector<Natural>& generators, Natural bound);

/// Exact normal form of intcone(generators). Also reports the
/// product-of-generators period used in the existence argument.
struct IntconeNormalForm {
  PeriodicNaturalSet set;
  Natural gcd = 0;
  Natural threshold = 0;        ///< in units of gcd: all of [threshold, inf) lies in intcone(R')
  Natural schur_bound = 0;      ///< (a_min - 1)(a_max - 1) for the reduced generators
  Integer product_period = 0;   ///< gcd * prod(R_0 \ {0}); a valid, usually non-minimal period
  bool finite = false;
};
IntconeNormalForm intcone_normal_form(const std::vector<Natural>& generators);

struct PeriodicityOptions {
  /// Smallest certified bound accepted, as a multiple of max_period.
  Natural window_factor = 4;
};

struct PeriodicityResult {
  bool periodic = false;
  PeriodicNaturalSet set;  ///< valid when periodic
  Natural threshold = 0;   ///< least threshold for the chosen period
  Natural max_period = 0;
};

/// Searches t = 1..max_period for the smallest period whose least threshold
/// lies in the first half of the certified window. Throws
/// Error("insufficient window") when the window is shorter than
/// window_factor * max_period.
PeriodicityResult detect_periodicity(const NaturalOracle& s, Natural max_period, const PeriodicityOptions& options = {});

/// True when x in S <=> x + t in S on [threshold, bound - t].
bool window_periodic(const std::vector<bool>& member, Natural t, Natural threshold);

/// x = sum_j s_j z_j + period * lambda over the offsets, joined with a
/// selector formulation of the exceptional points by the rational union.
MicpFormulation to_milp(const PeriodicNaturalSet& s);

/// x in N with frac(sqrt(2) x) outside (eps, 1 - sqrt(2) eps), decided in
/// exact arithmetic. Throws Error("epsilon out of range").
bool s_epsilon_member(const Rational& eps, Natural x);
NaturalOracle fixture_s_epsilon(const Rational& eps, Natural certified_bound);

/// K_eps = {x in R^2 : |(x1, x1)| <= x2 + eps, |(x2, x2)| <= 2 x1 + 2 eps, x >= 0}.
ConicSet k_epsilon(const Rational& eps);

}  // namespace micp
