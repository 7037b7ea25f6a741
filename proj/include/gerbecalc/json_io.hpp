#pragma once

// JSON conversions shared by the command-line tool and the tests.
//
// Canonical output rules: object keys are sorted (the default nlohmann map
// representation), arrays keep construction order, rationals are rendered as
// strings via rat_str ("p/q", or "p" for integers), counts and indices as
// JSON numbers, and documents are serialized with two-space indentation plus
// a trailing newline.

#include <string>

#include "json.hpp"

#include "gerbecalc/covershrink.hpp"

namespace gerbecalc {

/// Serializes a document in the canonical layout described above.
std::string canonical_json(const nlohmann::json& doc);

/// Parses a poset-with-cover document of the form
///   {"elements": ["a", ...],
///    "order": [["a", "b"], ...],      // pair [a, b] meaning a <= b
///    "cover": [["a", ...], ...]}      // one member per element-name list
/// Structural problems (invalid JSON, missing keys, unknown or duplicate
/// names) raise ParseError; violations of the poset or cover axioms
/// (antisymmetry, members not open, union not total) raise DimensionError.
OpenCover cover_from_json(const std::string& text);

/// Renders a subset as the sorted list of element names.
nlohmann::json elemset_json(const FinitePoset& p, const ElemSet& s);

/// Renders a shrinking as
///   {"index_sets": [[0], ...], "u_sets": [[names], ...],
///    "v_prime": [[names], ...]}.
nlohmann::json shrink_result_json(const OpenCover& cover, const ShrinkResult& result);

}  // namespace gerbecalc
