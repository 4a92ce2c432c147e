// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "micp/formulation.hpp"
#include "micp/naturals.hpp"
#include "micp/pwl.hpp"
#include "micp/shapes.hpp"

namespace micp {

using FixtureParams = std::map<std::string, Rational>;
using FixtureArtifact = std::variant<ConicSet, MicpFormulation, NaturalOracle, PwlFunction, IndexedFamily>;

struct FixtureDescriptor {
  std::string name;
  FixtureParams defaults;
  std::string produces;
};

const std::vector<FixtureDescriptor>& fixture_registry();

/// Unknown names throw Error listing the registry; unknown parameters and
/// out-of-range values throw as well.
FixtureArtifact fixture(const std::string& name, const FixtureParams& params = {});

/// {(x, z) : sum x = 2 z}.
MicpFormulation parity_cube(std::size_t n);
/// x = y1 - z2 with y1 = sqrt(2) z1 and z2 = floor(sqrt(2) z1).
MicpFormulation dense_sqrt2();
/// x1 = z, x1 x2 >= 1.
MicpFormulation hyperbola();
/// {(t, x) in Z^(n+1) : |x| <= t}.
MicpFormulation lorentz_intcone(std::size_t n);
/// |x - z v| <= z + 1 with z >= 0 and v = e_1.
MicpFormulation concave_balls(std::size_t n);
/// Squares of side z + 1 centered at (z, 0), z = 0..count-1.
IndexedFamily concave_ball_squares(std::size_t count);
NaturalOracle primes_oracle(Natural bound);

}  // namespace micp
