#pragma once

#include <string>
#include <utility>
#include <vector>

#include "plotforge/scene/change.hpp"
#include "plotforge/scene/path.hpp"
#include "plotforge/scene/serialize.hpp"

namespace plotforge::scene {

/// Reads the value at `path` in canonical form.
/// Errors: BAD_PATH (unknown field, indexing a non-list), INDEX_OUT_OF_RANGE.
Json resolve(const Scene& scene, const PropertyPath& path);

struct Applied {
    Scene scene;
    ChangeRecord change;
};

/// Writes `value` at `path` and revalidates. An index equal to a list's
/// length appends. The input scene is never modified.
/// Errors: those of resolve, TYPE_MISMATCH, and any validation error.
Applied apply_change(const Scene& scene, const PropertyPath& path, const Json& value);

/// Several writes applied atomically (validated once, after the last).
Applied apply_changes(const Scene& scene, const std::vector<std::pair<PropertyPath, Json>>& writes);

/// Every addressable field of the scene, in document order.
std::vector<PropertyPath> enumerate_paths(const Scene& scene);

/// Typed property tree for generic editors. Each entry:
/// {"name", "path", "type", ...}; "type" is one of object, list, number,
/// integer, string, boolean, enum, color, numbers, matrix, null. Scalars
/// carry "value"; enums carry "options"; numbers/matrix carry sizes only.
Json describe_tree(const Scene& scene);

}  // namespace plotforge::scene
