#include "fixtures.hpp"

#include "plotforge/error.hpp"

namespace fixtures {

namespace {

Json four_axes()
{
    return Json::array({
        {{"side", "bottom"}, {"transform_ref", "x"}, {"axis_label", "x"}},
        {{"side", "left"}, {"transform_ref", "y"}, {"axis_label", "y"}},
        {{"side", "top"}, {"transform_ref", "x"}, {"tick_config", {{"labels_visible", false}}}},
        {{"side", "right"}, {"transform_ref", "y"}, {"tick_config", {{"labels_visible", false}}}},
    });
}

Json plain_node(const std::string& id)
{
    return Json{
        {"id", id},
        {"transforms", Json::array({{{"id", "x"}, {"kind", "linear"}, {"range", {{"lo", 0}, {"hi", 100}}}},
                                    {{"id", "y"}, {"kind", "linear"}, {"range", {{"lo", 0}, {"hi", 10}}}}})},
        {"axes", four_axes()},
        {"layers", Json::array({{{"id", "data"},
                                 {"x_transform_ref", "x"},
                                 {"y_transform_ref", "y"},
                                 {"graphs", Json::array({{{"type", "xy"},
                                                          {"x", {0, 25, 50, 75, 100}},
                                                          {"y", {1, 4, 2, 8, 5}},
                                                          {"style", {{"color", "#1f77b4ff"}}}}})}}})},
    };
}

}  // namespace

Json minimal_doc()
{
    Json node = plain_node("main");
    node["title"] = "Minimal";
    return Json{{"version", 1}, {"plots", Json::array({node})}};
}

Json two_children_doc(double left_weight, double right_weight)
{
    Json left = plain_node("left");
    left["layout_hints"] = {{"row", 0}, {"col", 0}, {"weight", left_weight}};
    Json right = plain_node("right");
    right["layout_hints"] = {{"row", 0}, {"col", 1}, {"weight", right_weight}};
    Json root{{"id", "root"}, {"children", Json::array({left, right})}};
    return Json{{"version", 1}, {"plots", Json::array({root})}};
}

Scene build(const Json& doc)
{
    return plotforge::scene::build_scene(doc);
}

Scene minimal_scene()
{
    return build(minimal_doc());
}

}  // namespace fixtures
