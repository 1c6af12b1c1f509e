#include "plotforge/scene/property.hpp"

#include <cmath>
#include <string_view>

#include "plotforge/error.hpp"
#include "plotforge/scene/build.hpp"

namespace plotforge::scene {

namespace {

using Segments = std::vector<PropertyPath::Segment>;

// Optional fields: canonical form holds null when unset.
bool is_nullable(std::string_view key)
{
    for (std::string_view k : {"minor_count", "label_format", "explicit_labels", "outline", "margins", "x_err_lo",
                               "x_err_hi", "y_err_lo", "y_err_hi", "title"}) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

Json& walk(Json& cur, const Segments& segs, std::size_t n, const PropertyPath& path)
{
    Json* node = &cur;
    for (std::size_t i = 0; i < n; ++i) {
        if (const auto* key = std::get_if<std::string>(&segs[i])) {
            if (!node->is_object() || !node->contains(*key)) {
                throw Error(ErrorCode::BadPath, path.str(), "no field '" + *key + "' at '" + path.prefix(i).str() + "'");
            }
            node = &(*node)[*key];
        } else {
            const std::size_t idx = std::get<std::size_t>(segs[i]);
            if (!node->is_array()) {
                throw Error(ErrorCode::BadPath, path.str(), "'" + path.prefix(i).str() + "' is not a list");
            }
            if (idx >= node->size()) {
                throw Error(ErrorCode::IndexOutOfRange, path.str(),
                            "index " + std::to_string(idx) + " out of range (size " + std::to_string(node->size()) +
                                ") at '" + path.prefix(i).str() + "'");
            }
            node = &(*node)[idx];
        }
    }
    return *node;
}

bool integral(const Json& v)
{
    if (v.is_number_integer()) {
        return true;
    }
    const double d = v.get<double>();
    return std::isfinite(d) && d == std::floor(d);
}

void check_type(const Json& target, const Json& value, std::string_view key, bool in_array, const PropertyPath& path)
{
    auto mismatch = [&](const char* expected) {
        throw Error(ErrorCode::TypeMismatch, path.str(),
                    std::string("expected ") + expected + ", got " + std::string(value.type_name()));
    };
    if (target.is_null()) {
        return;
    }
    if (value.is_null()) {
        if (is_nullable(key) || (in_array && target.is_number())) {
            return;
        }
        mismatch(target.type_name());
    }
    if (target.is_number()) {
        if (!value.is_number()) {
            mismatch("number");
        }
        if (target.is_number_integer() && !integral(value)) {
            mismatch("integer");
        }
        return;
    }
    if (target.is_string() && !value.is_string()) {
        mismatch("string");
    }
    if (target.is_boolean() && !value.is_boolean()) {
        mismatch("boolean");
    }
    if (target.is_array() && !value.is_array()) {
        mismatch("array");
    }
    if (target.is_object() && !value.is_object()) {
        mismatch("object");
    }
}

void write(Json& doc, const PropertyPath& path, const Json& value)
{
    const Segments& segs = path.segments();
    if (segs.empty()) {
        throw Error(ErrorCode::BadPath, "", "empty path");
    }
    const std::string* first = std::get_if<std::string>(&segs[0]);
    if (first == nullptr || *first != "plots" || segs.size() < 2) {
        throw Error(ErrorCode::BadPath, path.str(), "paths start at 'plots[0]'");
    }
    Json& parent = walk(doc, segs, segs.size() - 1, path);
    const auto& last = segs.back();
    if (const auto* key = std::get_if<std::string>(&last)) {
        if (!parent.is_object() || !parent.contains(*key)) {
            throw Error(ErrorCode::BadPath, path.str(),
                        "no field '" + *key + "' at '" + path.prefix(segs.size() - 1).str() + "'");
        }
        check_type(parent[*key], value, *key, false, path);
        parent[*key] = value;
        return;
    }
    const std::size_t idx = std::get<std::size_t>(last);
    if (!parent.is_array()) {
        throw Error(ErrorCode::BadPath, path.str(), "'" + path.prefix(segs.size() - 1).str() + "' is not a list");
    }
    const bool appendable = segs.size() > 2;  // the single root plot cannot be appended to
    if (idx > parent.size() || (idx == parent.size() && !appendable)) {
        throw Error(ErrorCode::IndexOutOfRange, path.str(),
                    "index " + std::to_string(idx) + " out of range (size " + std::to_string(parent.size()) + ")");
    }
    std::string_view owner;
    if (segs.size() >= 2) {
        if (const auto* k = std::get_if<std::string>(&segs[segs.size() - 2])) {
            owner = *k;
        }
    }
    if (idx < parent.size()) {
        check_type(parent[idx], value, owner, true, path);
        parent[idx] = value;
    } else {
        if (!parent.empty()) {
            check_type(parent[0], value, owner, true, path);
        }
        parent.push_back(value);
    }
}

Scene rebuild(const Json& doc)
{
    try {
        return build_scene(doc);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SchemaError) {
            throw Error(ErrorCode::TypeMismatch, e.path(), e.info().message);
        }
        throw;
    }
}

void enumerate(const Json& node, const PropertyPath& path, std::vector<PropertyPath>& out)
{
    out.push_back(path);
    if (node.is_object()) {
        for (const auto& [key, value] : node.items()) {
            enumerate(value, path.child(key), out);
        }
    } else if (node.is_array()) {
        for (std::size_t i = 0; i < node.size(); ++i) {
            enumerate(node[i], path.child(i), out);
        }
    }
}

std::string_view enum_options(std::string_view key, const Json& value)
{
    struct Entry {
        std::string_view key;
        std::string_view options;
    };
    static constexpr Entry kTable[] = {
        {"kind", "linear,log,date,sexagesimal"},
        {"sexa_mode", "hms,dms"},
        {"side", "bottom,top,left,right"},
        {"tick_direction", "in,out"},
        {"chart_type", "normal,histogram"},
        {"line", "solid,dashed,none"},
        {"symbol", "none,circle,square,cross,triangle,dot"},
        {"ramp", "gray,heat"},
        {"mode", "linear_minmax,explicit"},
        {"frame", "data,box"},
    };
    if (!value.is_string()) {
        return {};
    }
    for (const auto& e : kTable) {
        if (e.key == key) {
            return e.options;
        }
    }
    return {};
}

bool is_numbers_key(std::string_view key)
{
    for (std::string_view k : {"x", "y", "x_err_lo", "x_err_hi", "y_err_lo", "y_err_hi", "dash_pattern",
                               "explicit_positions"}) {
        if (k == key) {
            return true;
        }
    }
    return false;
}

bool is_matrix_key(std::string_view key)
{
    return key == "values" || key == "r" || key == "g" || key == "b";
}

bool is_color_key(std::string_view key)
{
    return key == "color" || key == "fill" || key == "outline";
}

Json describe(const Json& node, std::string_view name, const PropertyPath& path)
{
    Json entry{{"name", name}, {"path", path.str()}};
    if (node.is_array() && is_numbers_key(name)) {
        entry["type"] = "numbers";
        entry["length"] = node.size();
        return entry;
    }
    if (node.is_array() && is_matrix_key(name)) {
        entry["type"] = "matrix";
        entry["rows"] = node.size();
        entry["cols"] = node.empty() ? 0 : node[0].size();
        return entry;
    }
    if (node.is_object()) {
        entry["type"] = "object";
        Json children = Json::array();
        for (const auto& [key, value] : node.items()) {
            children.push_back(describe(value, key, path.child(key)));
        }
        entry["children"] = std::move(children);
        return entry;
    }
    if (node.is_array()) {
        entry["type"] = "list";
        Json children = Json::array();
        for (std::size_t i = 0; i < node.size(); ++i) {
            children.push_back(describe(node[i], "[" + std::to_string(i) + "]", path.child(i)));
        }
        entry["children"] = std::move(children);
        return entry;
    }
    entry["value"] = node;
    if (node.is_null()) {
        entry["type"] = "null";
    } else if (node.is_boolean()) {
        entry["type"] = "boolean";
    } else if (node.is_number_integer()) {
        entry["type"] = "integer";
    } else if (node.is_number()) {
        entry["type"] = "number";
    } else if (is_color_key(name)) {
        entry["type"] = "color";
    } else if (name == "type") {
        entry["type"] = "string";
        entry["readonly"] = true;
    } else if (std::string_view opts = enum_options(name, node); !opts.empty()) {
        entry["type"] = "enum";
        Json options = Json::array();
        std::size_t start = 0;
        while (start <= opts.size()) {
            const std::size_t comma = opts.find(',', start);
            const std::size_t end = comma == std::string_view::npos ? opts.size() : comma;
            options.push_back(std::string(opts.substr(start, end - start)));
            start = end + 1;
        }
        entry["options"] = std::move(options);
    } else {
        entry["type"] = "string";
    }
    return entry;
}

}  // namespace

Json resolve(const Scene& scene, const PropertyPath& path)
{
    Json doc = to_json(scene);
    return walk(doc, path.segments(), path.size(), path);
}

Applied apply_change(const Scene& scene, const PropertyPath& path, const Json& value)
{
    return apply_changes(scene, {{path, value}});
}

Applied apply_changes(const Scene& scene, const std::vector<std::pair<PropertyPath, Json>>& writes)
{
    Json doc = to_json(scene);
    for (const auto& [path, value] : writes) {
        write(doc, path, value);
    }
    Applied out{rebuild(doc), {}};
    for (const auto& [path, value] : writes) {
        out.change.merge(change_scope(scene, out.scene, path));
    }
    return out;
}

std::vector<PropertyPath> enumerate_paths(const Scene& scene)
{
    std::vector<PropertyPath> out;
    enumerate(to_json(scene.root), PropertyPath({std::string("plots"), std::size_t{0}}), out);
    return out;
}

Json describe_tree(const Scene& scene)
{
    return describe(to_json(scene.root), "plots[0]", PropertyPath({std::string("plots"), std::size_t{0}}));
}

}  // namespace plotforge::scene
