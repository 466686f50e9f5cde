#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "contologic/structure.hpp"

namespace contologic {

using Json = nlohmann::ordered_json;

/// Reads a JSON file; throws Error with the path on I/O or syntax errors.
Json read_json_file(const std::filesystem::path& path);

/// "num/den" string (or a JSON integer) to Rational.
Rational json_rational(const Json& v);
Json rational_json(const Rational& q);

/// "lipschitz L", "identity", a list of [x, y] pairs (linear), or
/// {"interpolation": mode, "breakpoints": [[x, y], ...]}.
PLMap modulus_from_json(const Json& v);
Json modulus_json(const PLMap& m);

/// Structure file: "universe", "metric", "predicates", "functions",
/// "constants". Each unordered metric pair must be listed once (in either
/// orientation) unless both orientations are given; the diagonal defaults
/// to 0.
FiniteStructure structure_from_json(const Json& j);
FiniteStructure load_structure(const std::filesystem::path& path);
Json structure_json(const FiniteStructure& m);

/// Element list (names) to indices.
std::vector<Element> elements_from_json(const FiniteStructure& m, const Json& v);

/// Binary table over the structure's universe from [[a, b, "n/d"], ...];
/// missing entries are an error unless `symmetric` lets (b, a) stand in.
Table binary_table_from_json(const FiniteStructure& m, const Json& v, bool symmetric);

Json table_json(const FiniteStructure& m, const Table& t);

}  // namespace contologic
