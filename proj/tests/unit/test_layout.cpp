#include <catch_amalgamated.hpp>

#include <cmath>

#include "fixtures.hpp"
#include "plotforge/axes/ticks.hpp"
#include "plotforge/layout/layout.hpp"
#include "plotforge/scene/change.hpp"

using namespace plotforge;
using layout::compute_layout;

namespace {

scene::AxisDef axis(scene::Side side, bool labels, std::string label = {})
{
    scene::AxisDef a;
    a.side = side;
    a.transform_ref = "x";
    a.tick_config.labels_visible = labels;
    a.axis_label = std::move(label);
    return a;
}

axes::TickSet ticks_with_labels(std::initializer_list<const char*> labels)
{
    axes::TickSet t;
    double v = 0.0;
    for (const char* l : labels) {
        t.major.push_back({v, l});
        v += 1.0;
    }
    return t;
}

std::size_t pixels(double w)
{
    return static_cast<std::size_t>(w + 1.0);
}

}  // namespace

TEST_CASE("axis thickness follows the measurement rule", "[layout]")
{
    using scene::Side;
    const auto ticks = ticks_with_labels({"0", "10.0", "100"});
    CHECK(layout::measure_axis(axis(Side::Bottom, false), ticks) == 10.0);
    CHECK(layout::measure_axis(axis(Side::Left, false), ticks) == 10.0);

    // tick 6, gap 2, line 12, padding 4
    CHECK(layout::measure_axis(axis(Side::Bottom, true), ticks) == 24.0);
    // widest label 4 chars * 6 px
    CHECK(layout::measure_axis(axis(Side::Left, true), ticks) == 36.0);
    // axis label band: gap 2 + 14.4
    CHECK(layout::measure_axis(axis(Side::Bottom, true, "time"), ticks) == std::ceil(24.0 + 16.4));

    auto hidden = axis(Side::Left, true, "y");
    hidden.visible = false;
    CHECK(layout::measure_axis(hidden, ticks) == 0.0);
}

TEST_CASE("vertical thickness never shrinks as labels grow", "[layout]")
{
    double previous = 0.0;
    for (int n = 1; n <= 24; ++n) {
        axes::TickSet t;
        t.major.push_back({0.0, std::string(static_cast<std::size_t>(n), '8')});
        const double m = layout::measure_axis(axis(scene::Side::Right, true), t);
        CHECK(m >= previous);
        previous = m;
    }
}

TEST_CASE("superscript labels use the reduced exponent size", "[layout]")
{
    auto sup = layout::split_superscript("10^-3");
    REQUIRE(sup);
    CHECK(sup->first == "10");
    CHECK(sup->second == "-3");
    CHECK_FALSE(layout::split_superscript("10^x"));
    CHECK_FALSE(layout::split_superscript("100"));
    CHECK(layout::tick_label_width("10^-3") == Catch::Approx(2 * 6.0 + 2 * 6.0 * 0.7));
}

TEST_CASE("hidden axes leave the whole canvas to content", "[layout]")
{
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["title"] = "";
    for (auto& a : doc["plots"][0]["axes"]) {
        a["visible"] = false;
    }
    const auto g = compute_layout(fixtures::build(doc), 640, 480);
    REQUIRE(g.nodes.size() == 1);
    CHECK(g.nodes[0].content == layout::Rect{0, 0, 639, 479});
}

TEST_CASE("content rect of the minimal scene", "[layout]")
{
    const auto scene = fixtures::minimal_scene();
    const auto g = compute_layout(scene, 640, 480);
    const auto& n = g.nodes.at(0);
    const auto& node = scene.root;

    double side[4] = {0, 0, 0, 0};
    for (const auto& a : node.axes) {
        const auto t = axes::generate_ticks(*node.find_transform(a.transform_ref), a.tick_config);
        side[static_cast<int>(a.side)] += layout::measure_axis(a, t);
    }
    const double title = std::ceil(1.2 * 14) + 4;
    CHECK(n.content.x == side[static_cast<int>(scene::Side::Left)]);
    CHECK(n.content.y == title + side[static_cast<int>(scene::Side::Top)]);
    CHECK(n.content.right() == 639 - side[static_cast<int>(scene::Side::Right)]);
    CHECK(n.content.bottom() == 479 - side[static_cast<int>(scene::Side::Bottom)]);

    REQUIRE(n.title);
    CHECK(n.title->text == "Minimal");
    CHECK(std::abs(n.title->x + 7 * 0.6 * 14 / 2 - 319.5) <= 0.5);
}

TEST_CASE("major ticks sit on rounded device positions", "[layout]")
{
    const auto g = compute_layout(fixtures::minimal_scene(), 640, 480);
    const auto& n = g.nodes.at(0);
    const auto& bottom = n.axes.at(0);
    REQUIRE_FALSE(bottom.majors.empty());
    for (const auto& m : bottom.majors) {
        CHECK(m.pos == std::lround(n.content.x + m.value / 100.0 * n.content.w));
    }
    const auto& left = n.axes.at(1);
    for (const auto& m : left.majors) {
        CHECK(m.pos == std::lround(n.content.bottom() - m.value / 10.0 * n.content.h));
    }
    CHECK(bottom.line == n.content.bottom());
    CHECK(left.line == n.content.x);
    CHECK(bottom.labels.size() == bottom.majors.size());
    CHECK(n.axes.at(2).labels.empty());
}

TEST_CASE("tick direction sign points into or out of the content", "[layout]")
{
    auto doc = fixtures::minimal_doc();
    auto g = compute_layout(fixtures::build(doc), 400, 300);
    CHECK(g.nodes[0].axes[0].tick_sign == -1);  // bottom, inward = up
    CHECK(g.nodes[0].axes[1].tick_sign == 1);   // left, inward = right
    CHECK(g.nodes[0].axes[2].tick_sign == 1);   // top
    CHECK(g.nodes[0].axes[3].tick_sign == -1);  // right

    doc["plots"][0]["axes"][0]["tick_direction"] = "out";
    g = compute_layout(fixtures::build(doc), 400, 300);
    CHECK(g.nodes[0].axes[0].tick_sign == 1);
}

TEST_CASE("stacked axes on one side go outward", "[layout]")
{
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["axes"].push_back({{"side", "bottom"}, {"transform_ref", "x"}, {"axis_label", "again"}});
    const auto g = compute_layout(fixtures::build(doc), 640, 480);
    const auto& n = g.nodes[0];
    const auto& first = n.axes[0];
    const auto& second = n.axes[4];
    CHECK(second.line == first.line + first.strip.h);
    CHECK(n.content.bottom() + first.strip.h + second.strip.h == 479);
}

TEST_CASE("margins override measured thickness", "[layout]")
{
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["title"] = "";
    doc["plots"][0]["margins"] = {{"left", 50}, {"right", 10}, {"top", 20}, {"bottom", 30}};
    const auto g = compute_layout(fixtures::build(doc), 400, 300);
    CHECK(g.nodes[0].content == layout::Rect{50, 20, 399 - 60, 299 - 50});
}

TEST_CASE("equal weights split the width evenly", "[layout]")
{
    const auto g = compute_layout(fixtures::build(fixtures::two_children_doc()), 801, 400);
    const auto* l = g.find("left");
    const auto* r = g.find("right");
    REQUIRE(l);
    REQUIRE(r);
    const auto lp = pixels(l->cell.w);
    const auto rp = pixels(r->cell.w);
    CHECK(lp + rp == 801);
    CHECK((lp > rp ? lp - rp : rp - lp) <= 1);
    CHECK(std::abs(l->content.w - r->content.w) <= 1.0);
    CHECK(l->cell.right() < r->cell.x);
}

TEST_CASE("weights 2:1 split the width 2:1", "[layout]")
{
    for (int width : {600, 601, 757, 1024}) {
        const auto g = compute_layout(fixtures::build(fixtures::two_children_doc(2.0, 1.0)), width, 400);
        const double lp = static_cast<double>(pixels(g.find("left")->cell.w));
        const double rp = static_cast<double>(pixels(g.find("right")->cell.w));
        CHECK(lp + rp == width);
        CHECK(std::abs(lp - 2.0 * width / 3.0) <= 1.0);
    }
}

TEST_CASE("children content rects are disjoint and inside the parent", "[layout]")
{
    const auto g = compute_layout(fixtures::build(fixtures::two_children_doc()), 640, 480);
    const auto& root = *g.find("root");
    const auto& l = *g.find("left");
    const auto& r = *g.find("right");
    CHECK(l.content.right() < r.content.x);
    for (const auto* n : {&l, &r}) {
        CHECK(n->cell.x >= root.content.x);
        CHECK(n->cell.right() <= root.content.right());
        CHECK(n->content.x >= n->cell.x);
        CHECK(n->content.bottom() <= n->cell.bottom());
    }
}

TEST_CASE("canvas and content minimums", "[layout]")
{
    const auto scene = fixtures::minimal_scene();
    CHECK(fixtures::capture_error([&] { compute_layout(scene, 63, 200); }).code == ErrorCode::CanvasTooSmall);
    CHECK(fixtures::capture_error([&] { compute_layout(scene, 200, 63); }).code == ErrorCode::CanvasTooSmall);
    // 64x64 leaves no room after four axes and a title
    CHECK(fixtures::capture_error([&] { compute_layout(scene, 64, 64); }).code == ErrorCode::CanvasTooSmall);

    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["title"] = "";
    for (auto& a : doc["plots"][0]["axes"]) {
        a["visible"] = false;
    }
    CHECK_NOTHROW(compute_layout(fixtures::build(doc), 64, 64));
}

TEST_CASE("layout is deterministic", "[layout]")
{
    const auto scene = fixtures::build(fixtures::two_children_doc(1.5, 1.0));
    const auto a = compute_layout(scene, 900, 500);
    const auto b = compute_layout(scene, 900, 500);
    CHECK(a.nodes == b.nodes);
}

TEST_CASE("relayout escalates every component of shifted nodes", "[layout]")
{
    const auto before = fixtures::minimal_scene();
    auto doc = fixtures::minimal_doc();
    doc["plots"][0]["transforms"][1]["range"] = {{"lo", 0}, {"hi", 100000}};
    const auto after = fixtures::build(doc);
    const auto gb = compute_layout(before, 640, 480);
    const auto ga = compute_layout(after, 640, 480);
    REQUIRE(gb.nodes[0].content != ga.nodes[0].content);

    scene::ChangeRecord change;
    layout::escalate_for_layout(change, after, gb, ga);
    for (const auto& id : scene::node_components(after.root)) {
        CHECK(change.affected.count(id) == 1);
    }

    scene::ChangeRecord none;
    layout::escalate_for_layout(none, before, gb, gb);
    CHECK(none.empty());
}
