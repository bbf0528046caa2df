#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gdd/dessins.hpp"
#include "gdd/forms.hpp"
#include "gdd/search.hpp"
#include "gdd/types.hpp"

namespace gdd::io {

using Json = nlohmann::ordered_json;

/// "2,4,-3" -> {2, 4, -3}. Throws DomainError("invalid_argument").
std::vector<std::int64_t> parse_int_list(const std::string& text);

/// Comma-separated elements, lowest degree first; "[1,2]" entries for d > 1.
Polynomial parse_polynomial(const FieldPtr& field, const std::string& text);
/// Same syntax as parse_polynomial, kept as a list of elements.
std::vector<FqElement> parse_elements(const FieldPtr& field, const std::string& text);

/// An integer for d = 1, the coefficient array otherwise.
Json element_json(const FqElement& x);
FqElement element_from_json(const FieldPtr& field, const Json& j);
Json point_json(const Point& x);

Json polynomial_json(const Polynomial& f);
Polynomial polynomial_from_json(const FieldPtr& field, const Json& j);

/// {p, d, modulus}
Json field_json(const FieldPtr& field);
/// Rebuilds the field and checks that the modulus matches.
FieldPtr field_from_json(const Json& j);

/// {field, num, den}
Json form_json(const DifferentialForm& omega);
DifferentialForm form_from_json(const Json& j);

Json goodness_json(const GoodnessReport& report);
Json verdict_json(const LiftingVerdict& verdict);

/// {vertices: [{id, color}], edges: [{black, white, weight}], rotation: {id: [edge ids]}}
Json tree_json(const WeightedPlaneTree& t);
WeightedPlaneTree tree_from_json(const Json& j);

Json cycle_type_json(const CycleType& c);
Json generating_system_json(const GeneratingSystem& s);

Json configuration_json(const PoleConfiguration& c);
/// Witness forms, when requested, use the form_json() schema.
Json search_report_json(const SearchReport& report, bool emit_witness);

Json fiber_json(const Fiber& f);
Json portrait_json(const RamificationPortrait& portrait);
Json prop4_json(const Prop4Report& report);

}  // namespace gdd::io
