// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances and sizes are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "plotforge/axes/ticks.hpp"
#include "plotforge/axes/transform.hpp"
#include "plotforge/engine/engine.hpp"
#include "plotforge/export/eps.hpp"
#include "plotforge/export/png.hpp"
#include "plotforge/layout/layout.hpp"
#include "plotforge/render/rasterize.hpp"
#include "plotforge/render/render.hpp"
#include "plotforge/scene/serialize.hpp"
#include "plotforge/scene/session.hpp"
#include "plotforge/spec/spec.hpp"
#include "plotforge/util/calendar.hpp"
#include "png_decode.hpp"
#include "process.hpp"
#include "ps_interp.hpp"
#include "tick_oracle.hpp"

using namespace plotforge;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using scene::AxisKind;
using scene::Json;

namespace {

constexpr int kTickRangesPerKind = 1000;
constexpr double kTickTimeLimit = 10.0;  // s
constexpr int kBijectionTriples = 10000;
constexpr double kBijectionRel = 1e-9;
constexpr int kZoomSequences = 500;
constexpr double kWheelRel = 1e-9;
constexpr int kBatchSize = 50;
constexpr int kTrials = 100;
constexpr int kUpdatesPerTrial = 100;
constexpr int kSubmitters = 4;
constexpr double kConcurrencyTimeLimit = 60.0;  // s
constexpr int kEpsChannelTolerance = 8;
constexpr double kEpsMaxDiffering = 0.005;
constexpr int kWidth = 800;
constexpr int kHeight = 600;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 2)
{
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(precision);
    s << v;
    return s.str();
}

std::vector<fs::path> golden_specs()
{
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(fs::path(fixtures::specs_dir()) / "golden")) {
        if (e.path().extension() == ".json") {
            out.push_back(e.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// --- ticks ------------------------------------------------------------------

std::vector<double> tick_values(const axes::TickSet& t)
{
    std::vector<double> v;
    for (const auto& tick : t.major) {
        v.push_back(tick.value);
    }
    return v;
}

std::vector<std::string> tick_labels(const axes::TickSet& t)
{
    std::vector<std::string> v;
    for (const auto& tick : t.major) {
        v.push_back(tick.label);
    }
    return v;
}

Outcome tick_oracle()
{
    const auto t0 = Clock::now();
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0, 1);
    const double epoch1900 = *util::parse_iso8601_utc("1900-01-01");
    int mismatches = 0;
    std::string first;
    auto compare = [&](const char* kind, const axes::TickSet& fast, const oracle::Ticks& slow, double lo, double hi) {
        if (tick_values(fast) != slow.values || tick_labels(fast) != slow.labels) {
            if (mismatches++ == 0) {
                first = std::string(kind) + " [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
            }
        }
    };
    for (int i = 0; i < kTickRangesPerKind; ++i) {
        const int target = 2 + static_cast<int>(u(rng) * 9);
        const double lo = (u(rng) - 0.5) * std::pow(10, 6 * u(rng));
        const double hi = lo + std::pow(10, -5 + 10 * u(rng));
        compare("linear", axes::linear_ticks({lo, hi}, target), oracle::linear(lo, hi, target), lo, hi);

        const double llo = std::pow(10, -10 + 20 * u(rng));
        const double lhi = llo * std::pow(10, 0.01 + 12 * u(rng));
        compare("log", axes::log_ticks({llo, lhi}, target), oracle::log(llo, lhi, target), llo, lhi);

        const double dlo = epoch1900 + u(rng) * 6e9;
        const double dhi = dlo + std::pow(10, 0.5 + 9 * u(rng));
        compare("date", axes::date_ticks({dlo, dhi}, target), oracle::date(dlo, dhi, target), dlo, dhi);

        const double slo = (u(rng) - 0.5) * 400;
        const double shi = slo + std::pow(10, -3.5 + 6 * u(rng));
        const bool hms = i % 2 == 0;
        compare("sexagesimal",
                axes::sexagesimal_ticks({slo, shi}, target, hms ? scene::SexaMode::Hms : scene::SexaMode::Dms),
                oracle::sexagesimal(slo, shi, target, hms), slo, shi);
    }
    const double elapsed = seconds_since(t0);
    std::string detail = std::to_string(4 * kTickRangesPerKind) + " ranges, " + std::to_string(mismatches) +
                         " mismatches, " + fmt(elapsed) + " s (limit " + fmt(kTickTimeLimit, 0) + " s)";
    if (!first.empty()) {
        detail += ", first: " + first;
    }
    return {mismatches == 0 && elapsed < kTickTimeLimit, detail};
}

// --- transforms -------------------------------------------------------------

Outcome transform_bijection()
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    int failures = 0;
    for (int i = 0; i < kBijectionTriples; ++i) {
        scene::AxisTransformDef t;
        t.id = "t";
        t.kind = static_cast<AxisKind>(i % 4);
        t.inverted = u(rng) < 0.5;
        double lo;
        double hi;
        if (t.kind == AxisKind::Log) {
            lo = std::pow(10, -8 + 16 * u(rng));
            hi = lo * std::pow(10, 0.01 + 10 * u(rng));
        } else {
            lo = (u(rng) - 0.5) * std::pow(10, 9 * u(rng));
            hi = lo + std::pow(10, -4 + 10 * u(rng));
        }
        t.range = {lo, hi};
        const double x = t.kind == AxisKind::Log ? lo * std::pow(hi / lo, u(rng)) : lo + (hi - lo) * u(rng);
        const double back = axes::inverse(t, axes::forward(t, x));
        // Relative to the value, or to the span when the value sits near zero.
        const double scale = t.kind == AxisKind::Log ? std::abs(x) : std::max(std::abs(x), hi - lo);
        const double rel = std::abs(back - x) / scale;
        worst = std::max(worst, rel);
        failures += rel > kBijectionRel;
    }
    std::ostringstream d;
    d << kBijectionTriples << " triples, worst relative error " << worst << " (limit " << kBijectionRel << ")";
    return {failures == 0, d.str()};
}

// --- zoom -------------------------------------------------------------------

// 2x2 children, one per axis kind; the sexagesimal one is inverted on x.
Json zoom_doc()
{
    auto child = [](const std::string& id, int row, int col, Json x, Json y) {
        return Json{{"id", id},
                    {"layout_hints", {{"row", row}, {"col", col}}},
                    {"margins", {{"left", 40}, {"right", 10}, {"top", 10}, {"bottom", 30}}},
                    {"transforms", {x, y}},
                    {"axes", {{{"side", "bottom"}, {"transform_ref", "x"}}, {{"side", "left"}, {"transform_ref", "y"}}}},
                    {"layers", {{{"id", "d"},
                                 {"x_transform_ref", "x"},
                                 {"y_transform_ref", "y"},
                                 {"graphs", Json::array()}}}}};
    };
    auto tr = [](const char* kind, double lo, double hi, bool inverted = false) {
        return Json{{"id", ""}, {"kind", kind}, {"range", {{"lo", lo}, {"hi", hi}}}, {"inverted", inverted}};
    };
    auto named = [](Json t, const char* id) {
        t["id"] = id;
        return t;
    };
    Json root = {{"id", "root"},
                 {"children",
                  {child("lin", 0, 0, named(tr("linear", 0, 100), "x"), named(tr("linear", -5, 5), "y")),
                   child("log", 0, 1, named(tr("log", 1e-3, 1e4), "x"), named(tr("log", 1, 1e6), "y")),
                   child("date", 1, 0, named(tr("date", 1.2e9, 1.3e9), "x"), named(tr("linear", 0, 1), "y")),
                   child("sexa", 1, 1, named(tr("sexagesimal", 150, 150.5, true), "x"),
                         named(tr("sexagesimal", 2, 2.3), "y"))}}};
    return Json{{"version", 1}, {"plots", {root}}};
}

bool close_rel(const scene::Range& a, const scene::Range& b, AxisKind kind)
{
    auto near = [&](double p, double q) {
        const double scale = kind == AxisKind::Log ? std::abs(q) : std::max(std::abs(q), b.hi - b.lo);
        return std::abs(p - q) <= kWheelRel * scale;
    };
    return near(a.lo, b.lo) && near(a.hi, b.hi);
}

Outcome zoom_algebra()
{
    const scene::Scene built = spec::load_spec_text(zoom_doc().dump(), ".").scene;
    engine::EngineOptions eo;
    eo.width = 640;
    eo.height = 480;
    eo.workers = 1;
    engine::Engine e(built, eo);
    const auto geo = layout::compute_layout(built, 640, 480);

    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> u(0, 1);
    const std::vector<std::string> nodes{"lin", "log", "date", "sexa"};
    int reset_failures = 0;
    int wheel_failures = 0;
    int command_errors = 0;
    int wheel_pairs = 0;
    std::string first;

    auto ranges_of = [&](const scene::Scene& s) {
        std::vector<std::pair<scene::Range, AxisKind>> out;
        for (const auto& child : s.root.children) {
            for (const auto& t : child.transforms) {
                out.emplace_back(t.range, t.kind);
            }
        }
        return out;
    };
    auto current = [&] { return ranges_of(*e.call(engine::SnapshotQuery{}).snapshot); };

    for (int seq = 0; seq < kZoomSequences; ++seq) {
        // Fresh random starting ranges per sequence, applied as one batch.
        e.call(engine::BeginBatch{});
        for (std::size_t c = 0; c < nodes.size(); ++c) {
            for (int axis = 0; axis < 2; ++axis) {
                const auto& t = built.root.children[c].transforms[static_cast<std::size_t>(axis)];
                double lo;
                double hi;
                if (t.kind == AxisKind::Log) {
                    lo = std::pow(10, -6 + 10 * u(rng));
                    hi = lo * std::pow(10, 0.5 + 6 * u(rng));
                } else {
                    lo = t.range.lo + (u(rng) - 0.5) * (t.range.hi - t.range.lo);
                    hi = lo + (t.range.hi - t.range.lo) * (0.1 + 2 * u(rng));
                }
                const std::string path =
                    "plots[0].children[" + std::to_string(c) + "].transforms[" + std::to_string(axis) + "].range";
                if (!e.call(engine::SetProperty{path, Json{{"lo", lo}, {"hi", hi}}}).ok()) {
                    ++command_errors;
                }
            }
        }
        e.call(engine::EndBatch{});
        const auto start = current();

        const int steps = 1 + static_cast<int>(u(rng) * 6);
        for (int s = 0; s < steps; ++s) {
            const auto& node = nodes[static_cast<std::size_t>(u(rng) * nodes.size())];
            const auto r = geo.find(node)->content;
            if (u(rng) < 0.5) {
                const double x0 = r.x + u(rng) * r.w * 0.8;
                const double y0 = r.y + u(rng) * r.h * 0.8;
                const double x1 = x0 + 5 + u(rng) * (r.x + r.w - x0 - 5);
                const double y1 = y0 + 5 + u(rng) * (r.y + r.h - y0 - 5);
                if (!e.call(engine::ZoomRect{x0, y0, x1, y1}).ok()) {
                    ++command_errors;
                }
            } else {
                const double x = r.x + u(rng) * r.w;
                const double y = r.y + u(rng) * r.h;
                const int n = u(rng) < 0.5 ? 1 : -1;
                const auto before = current();
                const bool ok = e.call(engine::Wheel{x, y, n}).ok() && e.call(engine::Wheel{x, y, -n}).ok();
                command_errors += !ok;
                const auto after = current();
                ++wheel_pairs;
                for (std::size_t i = 0; i < before.size(); ++i) {
                    if (!close_rel(after[i].first, before[i].first, before[i].second)) {
                        ++wheel_failures;
                        break;
                    }
                }
            }
        }
        e.call(engine::ResetZoom{});
        const auto back = current();
        for (std::size_t i = 0; i < start.size(); ++i) {
            if (!(back[i].first == start[i].first)) {
                if (reset_failures++ == 0) {
                    first = "sequence " + std::to_string(seq);
                }
                break;
            }
        }
    }
    e.wait_idle();
    std::string detail = std::to_string(kZoomSequences) + " sequences: reset mismatches " +
                         std::to_string(reset_failures) + " (exact), wheel pairs " + std::to_string(wheel_pairs) +
                         " with " + std::to_string(wheel_failures) + " outside 1e-9 relative, command errors " +
                         std::to_string(command_errors);
    if (!first.empty()) {
        detail += ", first reset mismatch: " + first;
    }
    return {reset_failures == 0 && wheel_failures == 0 && command_errors == 0, detail};
}

// --- golden corpus ----------------------------------------------------------

Outcome determinism()
{
    const auto specs = golden_specs();
    int png_diff = 0;
    int eps_diff = 0;
    for (const auto& p : specs) {
        const auto a = spec::load_spec(p).scene;
        const auto b = spec::load_spec(p).scene;
        png_diff += exporter::encode_png(render::render_scene(a, kWidth, kHeight).raster) !=
                    exporter::encode_png(render::render_scene(b, kWidth, kHeight).raster);
        eps_diff += exporter::encode_eps(render::emit_drawlist(a, kWidth, kHeight), kWidth, kHeight) !=
                    exporter::encode_eps(render::emit_drawlist(b, kWidth, kHeight), kWidth, kHeight);
    }
    // Out-of-process as well: the CLI's files must match too.
    const auto dir = fs::temp_directory_path() / "plotforge_acceptance";
    fs::create_directories(dir);
    int cli_diff = 0;
    for (const auto& p : specs) {
        for (const std::string f : {"png", "eps"}) {
            const auto x = dir / ("a." + f);
            const auto y = dir / ("b." + f);
            fixtures::run_process({fixtures::cli_path(), "render", p.string(), "-o", x.string(), "--format", f});
            fixtures::run_process({fixtures::cli_path(), "render", p.string(), "-o", y.string(), "--format", f});
            std::ifstream ix(x, std::ios::binary);
            std::ifstream iy(y, std::ios::binary);
            const std::string sx((std::istreambuf_iterator<char>(ix)), {});
            const std::string sy((std::istreambuf_iterator<char>(iy)), {});
            cli_diff += sx.empty() || sx != sy;
        }
    }
    fs::remove_all(dir);
    const bool pass = specs.size() >= 12 && png_diff == 0 && eps_diff == 0 && cli_diff == 0;
    return {pass, std::to_string(specs.size()) + " specs, PNG differences " + std::to_string(png_diff) +
                      ", EPS differences " + std::to_string(eps_diff) + ", CLI file differences " +
                      std::to_string(cli_diff)};
}

// Pre-order node paths of a canonical document.
void node_paths(const Json& node, const std::string& path, std::vector<std::pair<std::string, const Json*>>& out)
{
    out.emplace_back(path, &node);
    for (std::size_t i = 0; i < node["children"].size(); ++i) {
        node_paths(node["children"][i], path + ".children[" + std::to_string(i) + "]", out);
    }
}

// Two single-property changes per spec: the first graph's appearance and the
// first transform's range.
std::vector<std::pair<std::string, Json>> probe_changes(const scene::Scene& sc)
{
    const Json doc = scene::to_json(sc);
    std::vector<std::pair<std::string, const Json*>> nodes;
    node_paths(doc["plots"][0], "plots[0]", nodes);
    std::vector<std::pair<std::string, Json>> out;
    for (const auto& [path, node] : nodes) {
        if (!(*node)["layers"].empty() && !(*node)["layers"][0]["graphs"].empty()) {
            const Json& g = (*node)["layers"][0]["graphs"][0];
            const std::string gp = path + ".layers[0].graphs[0]";
            const std::string type = g["type"];
            if (type == "grid") {
                out.emplace_back(gp + ".ramp", g["ramp"] == "gray" ? "heat" : "gray");
            } else if (type == "rgb") {
                const double lo = g["x_extent"]["lo"];
                const double hi = g["x_extent"]["hi"];
                out.emplace_back(gp + ".x_extent", Json{{"lo", lo + 0.1 * (hi - lo)}, {"hi", hi}});
            } else {
                out.emplace_back(gp + ".style.color", "#ff00ffff");
            }
            break;
        }
    }
    for (const auto& [path, node] : nodes) {
        if (!(*node)["transforms"].empty()) {
            const Json& t = (*node)["transforms"][0];
            const double lo = t["range"]["lo"];
            const double hi = t["range"]["hi"];
            Json r;
            if (t["kind"] == "log") {
                const double f = std::pow(hi / lo, 0.1);
                r = {{"lo", lo * f}, {"hi", hi / f}};
            } else {
                r = {{"lo", lo + 0.1 * (hi - lo)}, {"hi", hi - 0.1 * (hi - lo)}};
            }
            out.emplace_back(path + ".transforms[0].range", r);
            break;
        }
    }
    return out;
}

Outcome cache_correctness()
{
    int changes = 0;
    int pixel_mismatch = 0;
    int miss_mismatch = 0;
    std::size_t total_misses = 0;
    std::size_t total_components = 0;
    std::string first;
    for (const auto& p : golden_specs()) {
        const auto base = spec::load_spec(p).scene;
        const auto before_geo = layout::compute_layout(base, kWidth, kHeight);
        for (const auto& [path, value] : probe_changes(base)) {
            render::TileCache cache;
            render::render_scene(base, kWidth, kHeight, {&cache, 1});
            scene::SceneSession session(base);
            const auto pub = session.apply(scene::PropertyPath::parse(path), value);
            ++changes;
            if (!pub) {
                ++miss_mismatch;
                continue;
            }
            const scene::Scene& after = *pub->snapshot;
            scene::ChangeRecord expected = pub->change;
            layout::escalate_for_layout(expected, after, before_geo, layout::compute_layout(after, kWidth, kHeight));
            std::set<std::string> expected_present;
            const auto all = scene::scene_components(after);
            for (const auto& c : all) {
                if (expected.affected.count(c) != 0) {
                    expected_present.insert(c);
                }
            }
            const auto inc = render::render_scene(after, kWidth, kHeight, {&cache, 1});
            const auto scratch = render::render_scene(after, kWidth, kHeight);
            const std::set<std::string> missed(inc.stats.missed.begin(), inc.stats.missed.end());
            total_misses += inc.stats.misses;
            total_components += all.size();
            if (!(inc.raster == scratch.raster)) {
                ++pixel_mismatch;
                if (first.empty()) {
                    first = p.filename().string() + " " + path + ": pixels differ";
                }
            }
            if (missed != expected_present || inc.stats.misses != expected_present.size()) {
                ++miss_mismatch;
                if (first.empty()) {
                    first = p.filename().string() + " " + path + ": " + std::to_string(inc.stats.misses) +
                            " misses vs " + std::to_string(expected_present.size()) + " affected";
                }
            }
        }
    }
    std::string detail = std::to_string(changes) + " single-property changes over the golden corpus, pixel mismatches " +
                         std::to_string(pixel_mismatch) + ", miss-count mismatches " + std::to_string(miss_mismatch) +
                         ", tiles re-rendered " + std::to_string(total_misses) + " of " +
                         std::to_string(total_components);
    if (!first.empty()) {
        detail += ", first: " + first;
    }
    return {changes > 0 && pixel_mismatch == 0 && miss_mismatch == 0, detail};
}

// --- engine -----------------------------------------------------------------

Json minimal_doc()
{
    return Json::parse(R"({"version": 1, "plots": [{
        "id": "main", "title": "Minimal",
        "transforms": [{"id": "x", "kind": "linear", "range": {"lo": 0, "hi": 100}},
                       {"id": "y", "kind": "linear", "range": {"lo": 0, "hi": 10}}],
        "axes": [{"side": "bottom", "transform_ref": "x"}, {"side": "left", "transform_ref": "y"},
                 {"side": "top", "transform_ref": "x"}, {"side": "right", "transform_ref": "y"}],
        "layers": [{"id": "data", "x_transform_ref": "x", "y_transform_ref": "y",
                    "graphs": [{"type": "xy", "x": [0, 50, 100], "y": [1, 9, 4]}]}]}]})");
}

Outcome batch_contract()
{
    engine::EngineOptions eo;
    eo.width = 400;
    eo.height = 300;
    engine::Engine e(spec::load_spec_text(minimal_doc().dump(), ".").scene, eo);
    e.wait_idle();
    const auto before = e.stats().generations_scheduled;
    bool ok = e.call(engine::BeginBatch{}).ok();
    for (int i = 0; i < kBatchSize; ++i) {
        const auto r = e.call(engine::SetProperty{"plots[0].layers[0].graphs[0].y", Json{1, i % 10, 4}});
        ok = ok && r.ok() && !r.generation;
    }
    const auto end = e.call(engine::EndBatch{});
    e.wait_idle();
    const auto scheduled = e.stats().generations_scheduled - before;
    const auto shown = e.displayed();
    ok = ok && end.ok() && end.generation && shown && shown->generation == *end.generation;
    return {ok && scheduled == 1, std::to_string(kBatchSize) + " changes in one batch scheduled " +
                                      std::to_string(scheduled) + " generation(s) (expected 1)"};
}

Outcome concurrency()
{
    const auto t0 = Clock::now();
    const auto sc = spec::load_spec_text(minimal_doc().dump(), ".").scene;
    int raster_mismatch = 0;
    int order_violations = 0;
    int not_final = 0;
    std::size_t presented = 0;
    for (int trial = 0; trial < kTrials; ++trial) {
        engine::EngineOptions eo;
        eo.width = 400;
        eo.height = 300;
        engine::Engine e(sc, eo);
        {
            std::vector<std::jthread> submitters;
            for (int t = 0; t < kSubmitters; ++t) {
                submitters.emplace_back([&, t] {
                    std::mt19937 rng(static_cast<unsigned>(trial * 31 + t));
                    std::uniform_real_distribution<double> u(0, 10);
                    for (int i = 0; i < kUpdatesPerTrial / kSubmitters; ++i) {
                        e.submit(engine::SetData{"plots[0].layers[0].graphs[0]", {0, 25 * (t + 1.0), 100},
                                                 {u(rng), u(rng), u(rng)}});
                    }
                });
            }
        }
        e.wait_idle();
        const auto final_scene = e.call(engine::SnapshotQuery{}).snapshot;
        const auto shown = e.displayed();
        if (!shown || !(*shown->snapshot == *final_scene) ||
            !(*shown->raster == render::render_scene(*final_scene, 400, 300).raster)) {
            ++raster_mismatch;
        }
        const auto h = e.presented_generations();
        presented += h.size();
        if (std::adjacent_find(h.begin(), h.end(), std::greater_equal<>()) != h.end()) {
            ++order_violations;
        }
        if (h.empty() || h.back() != e.stats().generations_scheduled) {
            ++not_final;
        }
    }
    const double elapsed = seconds_since(t0);
    return {raster_mismatch == 0 && order_violations == 0 && not_final == 0 && elapsed < kConcurrencyTimeLimit,
            std::to_string(kTrials) + " trials x " + std::to_string(kUpdatesPerTrial) + " updates from " +
                std::to_string(kSubmitters) + " submitters: final-frame mismatches " + std::to_string(raster_mismatch) +
                ", non-increasing histories " + std::to_string(order_violations) + ", newest generation missing " +
                std::to_string(not_final) + ", frames presented " + std::to_string(presented) + ", " + fmt(elapsed) +
                " s (limit " + fmt(kConcurrencyTimeLimit, 0) + " s)"};
}

// --- export -----------------------------------------------------------------

Outcome export_validity()
{
    int png_bad = 0;
    int eps_invalid = 0;
    int eps_mismatch = 0;
    double worst = 0;
    std::string first;
    for (const auto& p : golden_specs()) {
        const auto sc = spec::load_spec(p).scene;
        const auto list = render::emit_drawlist(sc, kWidth, kHeight);
        const auto raster = render::render_drawlist(list).raster;
        const auto d = fixtures::decode_png(exporter::encode_png(raster));
        if (!d.ok || d.width != raster.width || d.height != raster.height || d.rgba != raster.pixels) {
            ++png_bad;
        }
        const auto res = ps::run(exporter::encode_eps(list, kWidth, kHeight), kWidth, kHeight);
        if (!res.errors.empty()) {
            ++eps_invalid;
            if (first.empty()) {
                first = p.filename().string() + ": " + res.errors.front();
            }
            continue;
        }
        const double diff = ps::differing_fraction(res.canvas, raster.pixels, kEpsChannelTolerance);
        worst = std::max(worst, diff);
        if (diff > kEpsMaxDiffering) {
            ++eps_mismatch;
            if (first.empty()) {
                first = p.filename().string() + ": " + fmt(100 * diff, 3) + "% pixels differ";
            }
        }
    }
    std::string detail = "PNG decode failures " + std::to_string(png_bad) + ", EPS validator failures " +
                         std::to_string(eps_invalid) + ", EPS raster mismatches " + std::to_string(eps_mismatch) +
                         " (worst " + fmt(100 * worst, 3) + "% of pixels off by >" +
                         std::to_string(kEpsChannelTolerance) + ", limit " + fmt(100 * kEpsMaxDiffering, 1) + "%)";
    if (!first.empty()) {
        detail += ", first: " + first;
    }
    return {png_bad == 0 && eps_invalid == 0 && eps_mismatch == 0, detail};
}

// --- cli --------------------------------------------------------------------

Outcome cli_contract()
{
    const fs::path dir = fs::path(fixtures::specs_dir()) / "invalid";
    std::ifstream in(dir / "manifest.json");
    const Json manifest = Json::parse(in);
    int files = 0;
    int failures = 0;
    std::string first;
    for (const auto& c : manifest["cases"]) {
        const std::string file = c["file"];
        files += fs::exists(dir / file);
        const auto r = fixtures::run_process({fixtures::cli_path(), "validate", (dir / file).string()});
        const bool ok = r.exit_code == c["exit_code"].get<int>() &&
                        r.out.find(c["code"].get<std::string>()) != std::string::npos &&
                        r.out.find(c["path"].get<std::string>()) != std::string::npos;
        if (!ok) {
            ++failures;
            if (first.empty()) {
                first = file + " -> exit " + std::to_string(r.exit_code) + ": " + r.out;
            }
        }
    }
    for (const auto& p : golden_specs()) {
        if (fixtures::run_process({fixtures::cli_path(), "validate", p.string()}).exit_code != 0) {
            ++failures;
            if (first.empty()) {
                first = p.filename().string() + " rejected";
            }
        }
    }
    std::string detail = std::to_string(files) + " invalid spec files + " + std::to_string(manifest["cases"].size() - files) +
                         " absent path, " + std::to_string(golden_specs().size()) + " valid specs, failures " +
                         std::to_string(failures);
    if (!first.empty()) {
        detail += ", first: " + first;
    }
    return {files >= 10 && failures == 0, detail};
}

}  // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"tick_oracle", tick_oracle},
        {"transform_bijection", transform_bijection},
        {"zoom_algebra", zoom_algebra},
        {"golden_determinism", determinism},
        {"cache_correctness", cache_correctness},
        {"batch_contract", batch_contract},
        {"concurrency_convergence", concurrency},
        {"export_validity", export_validity},
        {"cli_contract", cli_contract},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
