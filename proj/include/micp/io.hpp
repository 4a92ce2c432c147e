// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "micp/formulation.hpp"
#include "micp/naturals.hpp"
#include "micp/pwl.hpp"
#include "micp/shapes.hpp"

namespace micp {

using Json = nlohmann::ordered_json;

// Rationals are written as "p/q" strings ("p" for integers); readers also
// accept JSON integers and decimal strings.
Json rational_json(const Rational& q);
Rational rational_from_json(const Json& j);
Json integer_json(const Integer& v);
Integer integer_from_json(const Json& j);

Json vector_json(const RationalVector& v);
RationalVector rational_vector_from_json(const Json& j);
Json vector_json(const IntegerVector& v);
IntegerVector integer_vector_from_json(const Json& j);

/// conic_set.v1
Json to_json(const ConicSet& s);
ConicSet conic_set_from_json(const Json& j);

/// polyhedron_h.v1
Json to_json(const PolyhedronH& p);
PolyhedronH polyhedron_from_json(const Json& j);

Json to_json(const PolyhedronV& p);
PolyhedronV polyhedron_v_from_json(const Json& j);

/// micp_formulation.v1
Json to_json(const MicpFormulation& f);
MicpFormulation formulation_from_json(const Json& j);

/// indexed_family.v1: {"members": [{"z": [...], "vertices": [[...], ...]}, ...]}
Json to_json(const IndexedFamily& f);
IndexedFamily family_from_json(const Json& j);

Json to_json(const PeriodicNaturalSet& s);
Json to_json(const PwlFunction& f);
Json to_json(const Interval& iv);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Variable names x0.., y0.., z0.. in column order.
std::string variable_name(const MicpFormulation& f, std::size_t column);

/// CPLEX LP text. Throws Error("LP export requires polyhedral formulation").
std::string emit_lp(const MicpFormulation& f);
/// Reads the subset of the LP format that emit_lp writes, plus Bounds and
/// Binary sections. Variables must be named x<i>, y<i>, z<i>.
MicpFormulation parse_lp(std::string_view text);

/// Equal ambient layout and the same constraint rows up to order and
/// positive scaling.
bool same_rows_up_to_order(const MicpFormulation& a, const MicpFormulation& b);

}  // namespace micp
