// SPDX-License-Identifier: Apache-2.0
#include "micp/lower_bounds.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace micp {

namespace {

RationalVector midpoint(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw Error("dimension mismatch");
  RationalVector m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = (a[i] + b[i]) / 2;
  return m;
}

using Graph = std::vector<std::vector<bool>>;

struct CliqueSearch {
  const Graph& adj;
  std::size_t target;
  std::vector<std::size_t> best;
  std::vector<std::size_t> current;
  bool done = false;

  // Greedy coloring of `cand` gives an upper bound on any clique inside it.
  std::size_t color_bound(const std::vector<std::size_t>& cand) const {
    std::vector<std::vector<std::size_t>> classes;
    for (auto v : cand) {
      bool placed = false;
      for (auto& c : classes) {
        if (std::none_of(c.begin(), c.end(), [&](std::size_t u) { return adj[u][v]; })) {
          c.push_back(v);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({v});
    }
    return classes.size();
  }

  // Candidates are visited in increasing index order, so the first clique
  // found of each size is lexicographically smallest; ties never replace it.
  void expand(const std::vector<std::size_t>& cand) {
    if (done) return;
    if (current.size() > best.size()) {
      best = current;
      if (best.size() >= target) {
        done = true;
        return;
      }
    }
    if (cand.empty()) return;
    if (current.size() + color_bound(cand) <= best.size()) return;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (current.size() + (cand.size() - i) <= best.size()) return;
      std::size_t v = cand[i];
      std::vector<std::size_t> next;
      for (std::size_t j = i + 1; j < cand.size(); ++j)
        if (adj[v][cand[j]]) next.push_back(cand[j]);
      current.push_back(v);
      expand(next);
      current.pop_back();
      if (done) return;
    }
  }
};

}  // namespace

MidpointWitness strongest_witness(const std::vector<RationalVector>& candidates, const MembershipOracle& in_set,
                                  CliqueMode mode, std::optional<std::size_t> target) {
  if (candidates.empty()) throw Error("empty input");
  std::set<RationalVector> uniq;
  for (const auto& c : candidates)
    if (in_set(c)) uniq.insert(c);
  std::vector<RationalVector> pts(uniq.begin(), uniq.end());
  if (pts.empty()) throw Error("empty input");
  if (mode == CliqueMode::Exact && pts.size() > kExactCliqueLimit) throw Error("too many candidates for exact mode");

  const std::size_t m = pts.size();
  Graph adj(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) adj[i][j] = adj[j][i] = !in_set(midpoint(pts[i], pts[j]));

  std::vector<std::size_t> chosen;
  const std::size_t goal = target.value_or(m);
  if (mode == CliqueMode::Exact) {
    CliqueSearch search{adj, goal, {}, {}, false};
    std::vector<std::size_t> all(m);
    for (std::size_t i = 0; i < m; ++i) all[i] = i;
    search.expand(all);
    chosen = search.best;
  } else {
    std::vector<std::size_t> cand(m);
    for (std::size_t i = 0; i < m; ++i) cand[i] = i;
    while (!cand.empty() && chosen.size() < goal) {
      std::size_t pick = cand[0];
      std::size_t pick_deg = 0;
      bool first = true;
      for (auto v : cand) {
        std::size_t deg = 0;
        for (auto u : cand) deg += adj[v][u] ? 1 : 0;
        if (first || deg > pick_deg) {
          pick = v;
          pick_deg = deg;
          first = false;
        }
      }
      chosen.push_back(pick);
      std::vector<std::size_t> next;
      for (auto u : cand)
        if (adj[pick][u]) next.push_back(u);
      cand = std::move(next);
    }
    std::sort(chosen.begin(), chosen.end());
  }

  MidpointWitness w;
  for (auto i : chosen) w.points.push_back(pts[i]);
  w.w = w.points.size();
  w.bound = dimension_lower_bound(w.w);
  if (!verify_witness(w, in_set)) throw Error("internal error: witness failed verification");
  return w;
}

MidpointWitness strongest_witness(const std::vector<RationalVector>& points, CliqueMode mode,
                                  std::optional<std::size_t> target) {
  std::set<RationalVector> members(points.begin(), points.end());
  return strongest_witness(points, [&](const RationalVector& v) { return members.count(v) > 0; }, mode, target);
}

bool verify_witness(const MidpointWitness& w, const MembershipOracle& in_set) {
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (std::size_t j = i + 1; j < w.points.size(); ++j)
      if (in_set(midpoint(w.points[i], w.points[j]))) return false;
  return true;
}

std::size_t dimension_lower_bound(std::size_t w) {
  std::size_t bound = 0;
  std::size_t power = 1;
  while (power < w) {
    power *= 2;
    ++bound;
  }
  return bound;
}

std::vector<std::vector<IntegerVector>> parity_classes(const std::vector<IntegerVector>& z) {
  std::map<std::vector<int>, std::vector<IntegerVector>> classes;
  std::size_t dim = z.empty() ? 0 : z[0].size();
  for (const auto& v : z) {
    if (v.size() != dim) throw Error("dimension mismatch");
    std::vector<int> key;
    for (const auto& x : v) key.push_back(mpz_odd_p(x.get_mpz_t()) ? 1 : 0);
    classes[key].push_back(v);
  }
  std::vector<std::vector<IntegerVector>> out;
  for (auto& [k, members] : classes) out.push_back(std::move(members));
  return out;
}

std::vector<RationalVector> even_parity_points(std::size_t n) {
  std::vector<RationalVector> out;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    if (__builtin_popcountl(mask) % 2 != 0) continue;
    RationalVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> (n - 1 - i)) & 1UL ? 1 : 0;
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime(const Integer& v) {
  if (v < 2) return false;
  for (Integer d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

}  // namespace micp
