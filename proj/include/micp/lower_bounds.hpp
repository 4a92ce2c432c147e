// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "micp/rational.hpp"

namespace micp {

using MembershipOracle = std::function<bool(const RationalVector&)>;

/// Points whose pairwise midpoints all lie outside the examined set.
struct MidpointWitness {
  std::vector<RationalVector> points;
  std::size_t w = 0;
  std::size_t bound = 0;  ///< ceil(log2 w)
};

enum class CliqueMode { Exact, Greedy };

constexpr std::size_t kExactCliqueLimit = 40;

/// Candidates are filtered to members of S (by the oracle) and sorted
/// lexicographically. Exact mode returns the lexicographically smallest
/// maximum clique of the midpoint-exclusion graph; greedy mode grows one
/// clique by largest remaining degree. With `target`, the search stops at
/// the first clique of that size.
/// Errors: "empty input", "too many candidates for exact mode".
MidpointWitness strongest_witness(const std::vector<RationalVector>& candidates, const MembershipOracle& in_set,
                                  CliqueMode mode, std::optional<std::size_t> target = std::nullopt);

/// Finite point set version: the oracle is exact membership in `points`.
MidpointWitness strongest_witness(const std::vector<RationalVector>& points, CliqueMode mode,
                                  std::optional<std::size_t> target = std::nullopt);

/// True iff every pairwise midpoint of `w.points` is rejected by the oracle.
bool verify_witness(const MidpointWitness& w, const MembershipOracle& in_set);

std::size_t dimension_lower_bound(std::size_t w);
inline std::size_t dimension_lower_bound(const MidpointWitness& w) { return dimension_lower_bound(w.w); }

/// Groups vectors by componentwise parity, classes ordered by parity pattern.
std::vector<std::vector<IntegerVector>> parity_classes(const std::vector<IntegerVector>& z);

/// The even-parity points of {0,1}^n.
std::vector<RationalVector> even_parity_points(std::size_t n);

bool is_prime(const Integer& v);

}  // namespace micp
