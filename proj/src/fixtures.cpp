// SPDX-License-Identifier: Apache-2.0
#include "micp/fixtures.hpp"

#include "micp/lower_bounds.hpp"

namespace micp {

namespace {

std::size_t count_param(const FixtureParams& p, const std::string& key, long lo, long hi) {
  const Rational& v = p.at(key);
  if (!is_integer(v) || v < lo || v > hi)
    throw Error("parameter " + key + " must be an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(v.get_num().get_si());
}

AffineRow var_row(std::size_t dim, std::size_t j, const Rational& scale = 1, const Rational& constant = 0) {
  RationalVector c(dim);
  c[j] = scale;
  return {c, constant};
}

}  // namespace

const std::vector<FixtureDescriptor>& fixture_registry() {
  static const std::vector<FixtureDescriptor> reg = {
      {"parity_cube", {{"n", 3}}, "MicpFormulation"},
      {"dense_sqrt2", {}, "MicpFormulation"},
      {"hyperbola", {}, "MicpFormulation"},
      {"s_epsilon", {{"eps", Rational(2, 5)}, {"bound", 100000}}, "NaturalOracle"},
      {"concave_balls", {{"count", 6}}, "IndexedFamily"},
      {"lorentz_intcone", {{"n", 2}}, "MicpFormulation"},
      {"figure2_pwl", {}, "PwlFunction"},
      {"primes", {{"bound", 50}}, "NaturalOracle"},
  };
  return reg;
}

FixtureArtifact fixture(const std::string& name, const FixtureParams& params) {
  const FixtureDescriptor* desc = nullptr;
  for (const auto& d : fixture_registry())
    if (d.name == name) desc = &d;
  if (!desc) {
    std::string names;
    for (const auto& d : fixture_registry()) names += (names.empty() ? "" : ", ") + d.name;
    throw Error("unknown fixture '" + name + "'; registered: " + names);
  }
  FixtureParams p = desc->defaults;
  for (const auto& [k, v] : params) {
    if (!p.count(k)) throw Error("fixture " + name + " has no parameter '" + k + "'");
    p[k] = v;
  }
  if (name == "parity_cube") return parity_cube(count_param(p, "n", 1, 20));
  if (name == "dense_sqrt2") return dense_sqrt2();
  if (name == "hyperbola") return hyperbola();
  if (name == "s_epsilon") return fixture_s_epsilon(p.at("eps"), static_cast<Natural>(count_param(p, "bound", 0, 100000000)));
  if (name == "concave_balls") return concave_ball_squares(count_param(p, "count", 1, 64));
  if (name == "lorentz_intcone") return lorentz_intcone(count_param(p, "n", 1, 8));
  if (name == "figure2_pwl") return fixture_staircase();
  return primes_oracle(static_cast<Natural>(count_param(p, "bound", 0, 10000000)));
}

MicpFormulation parity_cube(std::size_t n) {
  if (n == 0) throw Error("n must be positive");
  ConicSet m(n + 1);
  RationalVector row(n + 1, Rational(1));
  row[n] = -2;
  m.add_equality(row, 0);
  return {std::move(m), n, 0, 1, "parity cube: sum x = 2 z"};
}

MicpFormulation dense_sqrt2() {
  // x1 | y1 y2 y3 | z1 z2
  const std::size_t dim = 6;
  const std::size_t x1 = 0, y1 = 1, z1 = 4, z2 = 5;
  ConicSet m(dim);
  m.add_block(ConeKind::SecondOrder, {var_row(dim, z2, 1, 1), var_row(dim, z1), var_row(dim, z1)});
  m.add_block(ConeKind::SecondOrder, {var_row(dim, z1, 2), var_row(dim, z2), var_row(dim, z2)});
  m.add_block(ConeKind::SecondOrder, {var_row(dim, y1), var_row(dim, z1), var_row(dim, z1)});
  m.add_block(ConeKind::SecondOrder, {var_row(dim, z1, 2), var_row(dim, y1), var_row(dim, y1)});
  RationalVector link(dim);
  link[x1] = 1;
  link[y1] = -1;
  link[z2] = 1;
  m.add_equality(link, 0);
  return {std::move(m), 1, 3, 2, "dense sqrt2 fractional parts"};
}

MicpFormulation hyperbola() {
  // x1 x2 | z
  ConicSet m(3);
  m.add_block(ConeKind::RotatedSecondOrder, {var_row(3, 0), var_row(3, 1), AffineRow{RationalVector(3), Rational(1)}});
  m.add_equality({Rational(1), Rational(0), Rational(-1)}, 0);
  return {std::move(m), 2, 0, 1, "x1 in N, x1 x2 >= 1"};
}

MicpFormulation lorentz_intcone(std::size_t n) {
  const std::size_t dim = 2 * (n + 1);
  ConicSet m(dim);
  std::vector<AffineRow> rows;
  for (std::size_t j = 0; j <= n; ++j) rows.push_back(var_row(dim, j));
  m.add_block(ConeKind::SecondOrder, rows);
  for (std::size_t j = 0; j <= n; ++j) {
    RationalVector link(dim);
    link[j] = 1;
    link[n + 1 + j] = -1;
    m.add_equality(link, 0);
  }
  return {std::move(m), n + 1, 0, n + 1, "integer points of the Lorentz cone"};
}

MicpFormulation concave_balls(std::size_t n) {
  if (n == 0) throw Error("n must be positive");
  // x | z with |x - z e1| <= z + 1
  const std::size_t dim = n + 1;
  ConicSet m(dim);
  std::vector<AffineRow> rows{var_row(dim, n, 1, 1)};
  for (std::size_t j = 0; j < n; ++j) {
    AffineRow r = var_row(dim, j);
    if (j == 0) r.coeffs[n] = -1;
    rows.push_back(r);
  }
  m.add_block(ConeKind::SecondOrder, rows);
  m.add_lower_bound(n, 0);
  return {std::move(m), n, 0, 1, "balls |x - z e1| <= z + 1"};
}

IndexedFamily concave_ball_squares(std::size_t count) {
  IndexedFamily f;
  for (std::size_t z = 0; z < count; ++z) {
    const Rational c(static_cast<long>(z));
    const Rational h = Rational(static_cast<long>(z) + 1) / 2;
    f.index_points.push_back({Integer(static_cast<long>(z))});
    f.members.push_back({{{c - h, -h}, {c + h, -h}, {c + h, h}, {c - h, h}}, {}, {}});
  }
  return f;
}

NaturalOracle primes_oracle(Natural bound) {
  return NaturalOracle([](Natural x) { return is_prime(Integer(static_cast<long>(x))); }, bound);
}

}  // namespace micp
