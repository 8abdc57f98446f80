#pragma once

#include <string>

#include <json.hpp>

#include "vahlen/verify.hpp"

namespace vahlen {

// JSON schema "spec_v1":
//   { "schema": "spec_v1", "n": 4,
//     "g1": [ {"name": "g1", "a": {...}, "b": {...}, "c": {...}, "d": {...}}, ... ],
//     "g2": [ ... ],
//     "j":  { "kind": "finite_list" | "integer_matrix", "data": [matrix, ...] },
//     "sphere": { "type": "euclidean", "center": [...], "radius": r, "b1": "interior"|"exterior" }
//             | { "type": "plane", "normal": [...], "offset": s, "b1": "negative"|"positive" },
//     "checks": { ...CheckConfig overrides... } }
// Matrix entries are blade-coefficient maps like {"1": -0.5, "e1e2": 1.0}.

ordered_json clifford_json(const Clifford& c);
Clifford clifford_from_json(const nlohmann::json& j, int dim);

ordered_json moebius_json(const Moebius& m);
Moebius moebius_from_json(const nlohmann::json& j, int dim);

ordered_json sphere_to_json(const Sphere& s);
Sphere sphere_from_json(const nlohmann::json& j);

ordered_json ballpair_json(const BallPair& bp);
BallPair ballpair_from_json(const nlohmann::json& j);

ordered_json spec_json(const GroupSpec& spec);
GroupSpec spec_from_json(const nlohmann::json& j);

CheckConfig check_config_from_json(const nlohmann::json& j, CheckConfig base = {});
// Loads a spec file; "checks" overrides are applied to *cfg when present.
GroupSpec load_spec_file(const std::string& path, CheckConfig* cfg);

}  // namespace vahlen
