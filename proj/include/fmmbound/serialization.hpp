#pragma once

// JSON form of an Expansion:
//   {"kind": "local"|"multipole", "center": [x, y, z], "order": p,
//    "radius": r, "coefficients": [[re, im], ...]}
// with coefficients in (n, m) row-major order, (order+1)^2 entries.

#include "json.hpp"

#include "fmmbound/expansions.hpp"

namespace fmmbound {

nlohmann::json expansion_to_json(const Expansion& e);

/// Throws ConfigError on a malformed document.
Expansion expansion_from_json(const nlohmann::json& j);

}  // namespace fmmbound
