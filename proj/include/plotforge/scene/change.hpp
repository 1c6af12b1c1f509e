#pragma once

#include <set>
#include <string>
#include <vector>

#include "plotforge/scene/path.hpp"
#include "plotforge/scene/types.hpp"

namespace plotforge::scene {

// Component ids name the units of render caching. Every node has one
// decoration and one annotation-group component, plus one component per
// axis and per layer (hidden or empty ones included).
std::string layer_component(const std::string& node_id, const std::string& layer_id);
std::string axis_component(const std::string& node_id, std::size_t axis_index);
std::string annotations_component(const std::string& node_id);
std::string decoration_component(const std::string& node_id);

std::vector<std::string> node_components(const PlotNode& node);
std::vector<std::string> subtree_components(const PlotNode& node);
std::vector<std::string> scene_components(const Scene& scene);

struct ChangeRecord {
    std::set<std::string> affected;

    void merge(const ChangeRecord& other) { affected.insert(other.affected.begin(), other.affected.end()); }
    bool empty() const noexcept { return affected.empty(); }

    friend bool operator==(const ChangeRecord&, const ChangeRecord&) = default;
};

/// Components whose tiles a write at `path` may invalidate. Component ids
/// from both sides are included so renames are covered. Geometry shifts
/// caused by relayout are added separately (layout::escalate_for_layout).
ChangeRecord change_scope(const Scene& before, const Scene& after, const PropertyPath& path);

}  // namespace plotforge::scene
