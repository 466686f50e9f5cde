#pragma once

#include <filesystem>

#include "contologic/chains.hpp"
#include "contologic/groups.hpp"
#include "contologic/structure_io.hpp"
#include "contologic/topometric.hpp"

namespace contologic {

/// Structure file plus "op": [[a, b, ab], ...], "identity", "inverse":
/// [[a, a^-1], ...]. Optional "group": [names] picks G inside the universe
/// (default: all of it) and "ambient_op" gives a multiplication on the whole
/// universe.
FiniteMetricGroup group_from_json(const Json& j);
FiniteMetricGroup load_group(const std::filesystem::path& path);

/// {"trees": [{"scale": "1/2", "children": [...]}], "D": [[i, j, "n/d"]]}.
/// Missing D entries between distinct trees default to 1.
TreeClusterSpace space_from_json(const Json& j);
TreeClusterSpace load_space(const std::filesystem::path& path);

/// {"structure": <file relative to the chain file>, "chain": [[names], ...]}.
DescendingChain load_chain(const std::filesystem::path& path);

}  // namespace contologic
