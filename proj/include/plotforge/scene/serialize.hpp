#pragma once

#include <string>

#include <json.hpp>

#include "plotforge/scene/types.hpp"

namespace plotforge::scene {

using Json = nlohmann::json;

inline constexpr int kSpecVersion = 1;

/// Canonical JSON form: every field present, object keys sorted, NaN as
/// null. Equal scenes produce identical JSON; the same form is the
/// addressing space for property paths.
Json to_json(const Scene& scene);
Json to_json(const PlotNode& node);

/// Deterministic compact text of to_json(scene).
std::string canonical_text(const Scene& scene);

/// Structural parse of a scene document ({"version":1,"plots":[root]}).
/// Throws Error with the offending property path on schema violations.
/// Cross-reference invariants are checked separately by validate().
Scene scene_from_json(const Json& doc);

std::string to_string(AxisKind kind);
std::string to_string(Side side);

}  // namespace plotforge::scene
