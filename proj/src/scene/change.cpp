#include "plotforge/scene/change.hpp"

namespace plotforge::scene {

std::string layer_component(const std::string& node_id, const std::string& layer_id)
{
    return node_id + "/layer/" + layer_id;
}

std::string axis_component(const std::string& node_id, std::size_t axis_index)
{
    return node_id + "/axis/" + std::to_string(axis_index);
}

std::string annotations_component(const std::string& node_id)
{
    return node_id + "/annotations";
}

std::string decoration_component(const std::string& node_id)
{
    return node_id + "/decoration";
}

std::vector<std::string> node_components(const PlotNode& node)
{
    std::vector<std::string> out;
    for (const auto& l : node.layers) {
        out.push_back(layer_component(node.id, l.id));
    }
    for (std::size_t i = 0; i < node.axes.size(); ++i) {
        out.push_back(axis_component(node.id, i));
    }
    out.push_back(annotations_component(node.id));
    out.push_back(decoration_component(node.id));
    return out;
}

std::vector<std::string> subtree_components(const PlotNode& node)
{
    std::vector<std::string> out;
    for_each_node(node, [&](const PlotNode& n) {
        auto part = node_components(n);
        out.insert(out.end(), part.begin(), part.end());
    });
    return out;
}

std::vector<std::string> scene_components(const Scene& scene)
{
    return subtree_components(scene.root);
}

namespace {

using Segments = std::vector<PropertyPath::Segment>;

const std::string* key_at(const Segments& s, std::size_t i)
{
    return i < s.size() ? std::get_if<std::string>(&s[i]) : nullptr;
}

const std::size_t* index_at(const Segments& s, std::size_t i)
{
    return i < s.size() ? std::get_if<std::size_t>(&s[i]) : nullptr;
}

void add_all(std::set<std::string>& out, const std::vector<std::string>& ids)
{
    out.insert(ids.begin(), ids.end());
}

bool references(const Annotation& ann, const std::string& tid)
{
    return std::visit(
        [&](const auto& a) {
            bool hit = false;
            if constexpr (requires { a.x_transform_ref; }) {
                hit = hit || a.x_transform_ref == tid;
            }
            if constexpr (requires { a.y_transform_ref; }) {
                hit = hit || a.y_transform_ref == tid;
            }
            return hit;
        },
        ann);
}

void scope_in_node(const PlotNode& node, const PlotNode* parent, const Segments& s, std::size_t i,
                   std::set<std::string>& out)
{
    const std::string* field = key_at(s, i);
    if (field == nullptr || *field == "children" || *field == "id" || *field == "margins") {
        add_all(out, subtree_components(node));
        return;
    }
    if (*field == "layout_hints") {
        add_all(out, subtree_components(parent != nullptr ? *parent : node));
        return;
    }
    if (*field == "title") {
        out.insert(decoration_component(node.id));
        return;
    }
    if (*field == "annotations") {
        out.insert(annotations_component(node.id));
        return;
    }
    const std::size_t* idx = index_at(s, i + 1);
    if (*field == "layers" && idx != nullptr && *idx < node.layers.size()) {
        out.insert(layer_component(node.id, node.layers[*idx].id));
        return;
    }
    if (*field == "axes" && idx != nullptr && *idx < node.axes.size()) {
        out.insert(axis_component(node.id, *idx));
        return;
    }
    if (*field == "transforms" && idx != nullptr && *idx < node.transforms.size()) {
        const std::string& tid = node.transforms[*idx].id;
        for (const auto& l : node.layers) {
            if (l.x_transform_ref == tid || l.y_transform_ref == tid) {
                out.insert(layer_component(node.id, l.id));
            }
        }
        for (std::size_t a = 0; a < node.axes.size(); ++a) {
            if (node.axes[a].transform_ref == tid) {
                out.insert(axis_component(node.id, a));
            }
        }
        for (const auto& ann : node.annotations) {
            if (references(ann, tid)) {
                out.insert(annotations_component(node.id));
                break;
            }
        }
        return;
    }
    add_all(out, node_components(node));
}

void scope_in_scene(const Scene& scene, const Segments& s, std::set<std::string>& out)
{
    const std::string* plots = key_at(s, 0);
    const std::size_t* root_index = index_at(s, 1);
    if (plots == nullptr || *plots != "plots" || root_index == nullptr || *root_index != 0) {
        add_all(out, scene_components(scene));
        return;
    }
    const PlotNode* node = &scene.root;
    const PlotNode* parent = nullptr;
    std::size_t i = 2;
    while (true) {
        const std::string* key = key_at(s, i);
        const std::size_t* idx = index_at(s, i + 1);
        if (key == nullptr || *key != "children" || idx == nullptr || *idx >= node->children.size()) {
            break;
        }
        parent = node;
        node = &node->children[*idx];
        i += 2;
    }
    scope_in_node(*node, parent, s, i, out);
}

}  // namespace

ChangeRecord change_scope(const Scene& before, const Scene& after, const PropertyPath& path)
{
    ChangeRecord record;
    scope_in_scene(before, path.segments(), record.affected);
    scope_in_scene(after, path.segments(), record.affected);
    return record;
}

}  // namespace plotforge::scene
