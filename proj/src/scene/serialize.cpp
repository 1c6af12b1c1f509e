#include "plotforge/scene/serialize.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string_view>
#include <utility>

#include "plotforge/error.hpp"
#include "plotforge/util/calendar.hpp"

namespace plotforge::scene {

namespace {

template <typename E, std::size_t N>
using EnumTable = std::array<std::pair<E, std::string_view>, N>;

constexpr EnumTable<AxisKind, 4> kAxisKinds{{{AxisKind::Linear, "linear"},
                                             {AxisKind::Log, "log"},
                                             {AxisKind::Date, "date"},
                                             {AxisKind::Sexagesimal, "sexagesimal"}}};
constexpr EnumTable<SexaMode, 2> kSexaModes{{{SexaMode::Hms, "hms"}, {SexaMode::Dms, "dms"}}};
constexpr EnumTable<Side, 4> kSides{
    {{Side::Bottom, "bottom"}, {Side::Top, "top"}, {Side::Left, "left"}, {Side::Right, "right"}}};
constexpr EnumTable<TickDirection, 2> kTickDirections{{{TickDirection::In, "in"}, {TickDirection::Out, "out"}}};
constexpr EnumTable<ChartType, 2> kChartTypes{{{ChartType::Normal, "normal"}, {ChartType::Histogram, "histogram"}}};
constexpr EnumTable<LineType, 3> kLineTypes{
    {{LineType::Solid, "solid"}, {LineType::Dashed, "dashed"}, {LineType::None, "none"}}};
constexpr EnumTable<SymbolType, 6> kSymbols{{{SymbolType::None, "none"},
                                             {SymbolType::Circle, "circle"},
                                             {SymbolType::Square, "square"},
                                             {SymbolType::Cross, "cross"},
                                             {SymbolType::Triangle, "triangle"},
                                             {SymbolType::Dot, "dot"}}};
constexpr EnumTable<RampName, 2> kRamps{{{RampName::Gray, "gray"}, {RampName::Heat, "heat"}}};
constexpr EnumTable<GridNorm::Mode, 2> kNormModes{
    {{GridNorm::Mode::LinearMinMax, "linear_minmax"}, {GridNorm::Mode::Explicit, "explicit"}}};
constexpr EnumTable<TextAnn::Frame, 2> kFrames{{{TextAnn::Frame::Data, "data"}, {TextAnn::Frame::Box, "box"}}};

template <typename E, std::size_t N>
std::string enum_name(const EnumTable<E, N>& table, E value)
{
    for (const auto& [e, name] : table) {
        if (e == value) {
            return std::string(name);
        }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// writing

Json number_or_null(double v)
{
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

Json numbers(const std::vector<double>& values)
{
    Json arr = Json::array();
    for (double v : values) {
        arr.push_back(number_or_null(v));
    }
    return arr;
}

Json optional_numbers(const std::optional<std::vector<double>>& values)
{
    return values ? numbers(*values) : Json(nullptr);
}

Json matrix(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols; ++c) {
            row.push_back(number_or_null(m.at(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string color_text(const Rgba& c)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x%02x", c.r, c.g, c.b, c.a);
    return buf;
}

Json range_json(const Range& r)
{
    return Json{{"lo", r.lo}, {"hi", r.hi}};
}

Json style_json(const Style& s)
{
    return Json{{"chart_type", enum_name(kChartTypes, s.chart_type)},
                {"line", enum_name(kLineTypes, s.line)},
                {"dash_pattern", numbers(s.dash_pattern)},
                {"symbol", enum_name(kSymbols, s.symbol)},
                {"symbol_size", s.symbol_size},
                {"color", color_text(s.color)},
                {"stroke_width", s.stroke_width}};
}

Json graph_json(const Graph& g)
{
    return std::visit(
        [](const auto& graph) -> Json {
            using T = std::decay_t<decltype(graph)>;
            if constexpr (std::is_same_v<T, XYGraph>) {
                return Json{{"type", "xy"}, {"x", numbers(graph.x)}, {"y", numbers(graph.y)},
                            {"style", style_json(graph.style)}};
            } else if constexpr (std::is_same_v<T, XYErrorGraph>) {
                return Json{{"type", "xy_error"},
                            {"x", numbers(graph.x)},
                            {"y", numbers(graph.y)},
                            {"x_err_lo", optional_numbers(graph.x_err_lo)},
                            {"x_err_hi", optional_numbers(graph.x_err_hi)},
                            {"y_err_lo", optional_numbers(graph.y_err_lo)},
                            {"y_err_hi", optional_numbers(graph.y_err_hi)},
                            {"style", style_json(graph.style)}};
            } else if constexpr (std::is_same_v<T, GridGraph>) {
                return Json{{"type", "grid"},
                            {"values", matrix(graph.values)},
                            {"x_extent", range_json(graph.x_extent)},
                            {"y_extent", range_json(graph.y_extent)},
                            {"ramp", enum_name(kRamps, graph.ramp)},
                            {"norm", Json{{"mode", enum_name(kNormModes, graph.norm.mode)},
                                          {"lo", graph.norm.lo},
                                          {"hi", graph.norm.hi}}}};
            } else {
                return Json{{"type", "rgb"},
                            {"r", matrix(graph.r)},
                            {"g", matrix(graph.g)},
                            {"b", matrix(graph.b)},
                            {"x_extent", range_json(graph.x_extent)},
                            {"y_extent", range_json(graph.y_extent)}};
            }
        },
        g);
}

Json annotation_json(const Annotation& a)
{
    return std::visit(
        [](const auto& ann) -> Json {
            using T = std::decay_t<decltype(ann)>;
            if constexpr (std::is_same_v<T, TextAnn>) {
                return Json{{"type", "text"},
                            {"frame", enum_name(kFrames, ann.frame)},
                            {"x", ann.x},
                            {"y", ann.y},
                            {"text", ann.text},
                            {"color", color_text(ann.color)},
                            {"font_size", ann.font_size},
                            {"x_transform_ref", ann.x_transform_ref},
                            {"y_transform_ref", ann.y_transform_ref}};
            } else if constexpr (std::is_same_v<T, HLineAnn>) {
                return Json{{"type", "hline"},
                            {"y", ann.y},
                            {"y_transform_ref", ann.y_transform_ref},
                            {"style", style_json(ann.style)}};
            } else if constexpr (std::is_same_v<T, VLineAnn>) {
                return Json{{"type", "vline"},
                            {"x", ann.x},
                            {"x_transform_ref", ann.x_transform_ref},
                            {"style", style_json(ann.style)}};
            } else {
                return Json{{"type", "rect"},
                            {"x0", ann.x0},
                            {"x1", ann.x1},
                            {"y0", ann.y0},
                            {"y1", ann.y1},
                            {"x_transform_ref", ann.x_transform_ref},
                            {"y_transform_ref", ann.y_transform_ref},
                            {"fill", color_text(ann.fill)},
                            {"outline", ann.outline ? Json(color_text(*ann.outline)) : Json(nullptr)}};
            }
        },
        a);
}

Json tick_config_json(const TickConfig& tc)
{
    Json major;
    if (const int* count = std::get_if<int>(&tc.major)) {
        major = Json{{"target_count", *count}};
    } else {
        major = Json{{"explicit_positions", numbers(std::get<std::vector<double>>(tc.major))}};
    }
    return Json{{"major", major},
                {"minor_count", tc.minor_count ? Json(*tc.minor_count) : Json(nullptr)},
                {"label_format", tc.label_format ? Json(*tc.label_format) : Json(nullptr)},
                {"labels_visible", tc.labels_visible},
                {"explicit_labels", tc.explicit_labels ? Json(*tc.explicit_labels) : Json(nullptr)}};
}

// ---------------------------------------------------------------------------
// reading

std::string join(const std::string& path, std::string_view key)
{
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index(const std::string& path, std::size_t i)
{
    return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void schema_error(const std::string& path, const std::string& message)
{
    throw Error(ErrorCode::SchemaError, path, message);
}

void expect_object(const Json& j, const std::string& path, std::initializer_list<std::string_view> allowed)
{
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (std::string_view a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            schema_error(join(path, key), "unknown field '" + key + "'");
        }
    }
}

const Json* find(const Json& obj, std::string_view key)
{
    auto it = obj.find(std::string(key));
    return it == obj.end() ? nullptr : &*it;
}

const Json& require(const Json& obj, std::string_view key, const std::string& path)
{
    const Json* v = find(obj, key);
    if (v == nullptr) {
        schema_error(join(path, key), "missing required field '" + std::string(key) + "'");
    }
    return *v;
}

double read_number(const Json& j, const std::string& path)
{
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidValue, path, "number must be finite");
    }
    return v;
}

int read_int(const Json& j, const std::string& path)
{
    if (j.is_number_integer()) {
        const auto v = j.get<std::int64_t>();
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
            throw Error(ErrorCode::InvalidValue, path, "integer out of range");
        }
        return static_cast<int>(v);
    }
    if (j.is_number_float()) {
        const double d = j.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e9) {
            return static_cast<int>(d);
        }
    }
    schema_error(path, "expected an integer");
}

bool read_bool(const Json& j, const std::string& path)
{
    if (!j.is_boolean()) {
        schema_error(path, "expected a boolean");
    }
    return j.get<bool>();
}

std::string read_string(const Json& j, const std::string& path)
{
    if (!j.is_string()) {
        schema_error(path, "expected a string");
    }
    return j.get<std::string>();
}

template <typename E, std::size_t N>
E read_enum(const Json& j, const std::string& path, const EnumTable<E, N>& table)
{
    const std::string s = read_string(j, path);
    for (const auto& [e, name] : table) {
        if (s == name) {
            return e;
        }
    }
    std::string options;
    for (const auto& entry : table) {
        options += options.empty() ? "" : ", ";
        options += entry.second;
    }
    throw Error(ErrorCode::InvalidValue, path, "unknown value '" + s + "' (expected one of: " + options + ")");
}

template <typename T, typename Fn>
T read_or(const Json& obj, std::string_view key, const std::string& path, T fallback, Fn&& fn)
{
    const Json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    return fn(*v, join(path, key));
}

std::vector<double> read_numbers(const Json& j, const std::string& path)
{
    if (!j.is_array()) {
        schema_error(path, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const Json& v = j[i];
        if (v.is_null()) {
            out.push_back(std::numeric_limits<double>::quiet_NaN());
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            schema_error(index(path, i), "expected a number or null");
        }
    }
    return out;
}

std::optional<std::vector<double>> read_optional_numbers(const Json& obj, std::string_view key,
                                                         const std::string& path)
{
    const Json* v = find(obj, key);
    if (v == nullptr || v->is_null()) {
        return std::nullopt;
    }
    return read_numbers(*v, join(path, key));
}

Matrix read_matrix(const Json& j, const std::string& path)
{
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a non-empty array of rows");
    }
    Matrix m;
    m.rows = j.size();
    for (std::size_t r = 0; r < j.size(); ++r) {
        const auto row = read_numbers(j[r], index(path, r));
        if (r == 0) {
            m.cols = row.size();
            if (m.cols == 0) {
                schema_error(index(path, r), "rows must not be empty");
            }
        } else if (row.size() != m.cols) {
            throw Error(ErrorCode::ArrayMismatch, index(path, r),
                        "row has " + std::to_string(row.size()) + " values, row 0 has " + std::to_string(m.cols));
        }
        m.values.insert(m.values.end(), row.begin(), row.end());
    }
    return m;
}

Rgba read_color(const Json& j, const std::string& path)
{
    const std::string s = read_string(j, path);
    auto hex = [&](std::size_t pos) -> int {
        int v = 0;
        for (std::size_t i = pos; i < pos + 2; ++i) {
            const char c = s[i];
            int d;
            if (c >= '0' && c <= '9') {
                d = c - '0';
            } else if (c >= 'a' && c <= 'f') {
                d = c - 'a' + 10;
            } else if (c >= 'A' && c <= 'F') {
                d = c - 'A' + 10;
            } else {
                return -1;
            }
            v = v * 16 + d;
        }
        return v;
    };
    if (s.size() != 7 && s.size() != 9) {
        throw Error(ErrorCode::InvalidValue, path, "colour must be #rrggbb or #rrggbbaa");
    }
    if (s[0] != '#') {
        throw Error(ErrorCode::InvalidValue, path, "colour must start with '#'");
    }
    const int r = hex(1), g = hex(3), b = hex(5), a = s.size() == 9 ? hex(7) : 255;
    if (r < 0 || g < 0 || b < 0 || a < 0) {
        throw Error(ErrorCode::InvalidValue, path, "bad hex digit in colour '" + s + "'");
    }
    return Rgba{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g), static_cast<std::uint8_t>(b),
                static_cast<std::uint8_t>(a)};
}

double read_range_bound(const Json& j, const std::string& path, bool allow_dates)
{
    if (allow_dates && j.is_string()) {
        const auto t = util::parse_iso8601_utc(j.get<std::string>());
        if (!t) {
            throw Error(ErrorCode::InvalidValue, path, "not an ISO-8601 UTC timestamp: '" + j.get<std::string>() + "'");
        }
        return *t;
    }
    return read_number(j, path);
}

Range read_range(const Json& j, const std::string& path, bool allow_dates = false)
{
    Range r;
    if (j.is_array()) {
        if (j.size() != 2) {
            schema_error(path, "range must have exactly two bounds");
        }
        r.lo = read_range_bound(j[0], index(path, 0), allow_dates);
        r.hi = read_range_bound(j[1], index(path, 1), allow_dates);
    } else {
        expect_object(j, path, {"lo", "hi"});
        r.lo = read_range_bound(require(j, "lo", path), join(path, "lo"), allow_dates);
        r.hi = read_range_bound(require(j, "hi", path), join(path, "hi"), allow_dates);
    }
    return r;
}

Style read_style(const Json& j, const std::string& path)
{
    expect_object(j, path, {"chart_type", "line", "dash_pattern", "symbol", "symbol_size", "color", "stroke_width"});
    Style s;
    s.chart_type = read_or(j, "chart_type", path, s.chart_type,
                           [](const Json& v, const std::string& p) { return read_enum(v, p, kChartTypes); });
    s.line = read_or(j, "line", path, s.line,
                     [](const Json& v, const std::string& p) { return read_enum(v, p, kLineTypes); });
    s.dash_pattern = read_or(j, "dash_pattern", path, s.dash_pattern, read_numbers);
    s.symbol = read_or(j, "symbol", path, s.symbol,
                       [](const Json& v, const std::string& p) { return read_enum(v, p, kSymbols); });
    s.symbol_size = read_or(j, "symbol_size", path, s.symbol_size, read_number);
    s.color = read_or(j, "color", path, s.color, read_color);
    s.stroke_width = read_or(j, "stroke_width", path, s.stroke_width, read_number);
    return s;
}

Graph read_graph(const Json& j, const std::string& path)
{
    if (!j.is_object()) {
        schema_error(path, "expected a graph object");
    }
    const std::string type = read_string(require(j, "type", path), join(path, "type"));
    if (type == "xy") {
        expect_object(j, path, {"type", "x", "y", "style"});
        XYGraph g;
        g.x = read_numbers(require(j, "x", path), join(path, "x"));
        g.y = read_numbers(require(j, "y", path), join(path, "y"));
        g.style = read_or(j, "style", path, Style{}, read_style);
        return g;
    }
    if (type == "xy_error") {
        expect_object(j, path, {"type", "x", "y", "x_err_lo", "x_err_hi", "y_err_lo", "y_err_hi", "style"});
        XYErrorGraph g;
        g.x = read_numbers(require(j, "x", path), join(path, "x"));
        g.y = read_numbers(require(j, "y", path), join(path, "y"));
        g.x_err_lo = read_optional_numbers(j, "x_err_lo", path);
        g.x_err_hi = read_optional_numbers(j, "x_err_hi", path);
        g.y_err_lo = read_optional_numbers(j, "y_err_lo", path);
        g.y_err_hi = read_optional_numbers(j, "y_err_hi", path);
        g.style = read_or(j, "style", path, Style{}, read_style);
        return g;
    }
    if (type == "grid") {
        expect_object(j, path, {"type", "values", "x_extent", "y_extent", "ramp", "norm"});
        GridGraph g;
        g.values = read_matrix(require(j, "values", path), join(path, "values"));
        g.x_extent = read_range(require(j, "x_extent", path), join(path, "x_extent"));
        g.y_extent = read_range(require(j, "y_extent", path), join(path, "y_extent"));
        g.ramp = read_or(j, "ramp", path, g.ramp,
                         [](const Json& v, const std::string& p) { return read_enum(v, p, kRamps); });
        if (const Json* norm = find(j, "norm")) {
            const std::string np = join(path, "norm");
            expect_object(*norm, np, {"mode", "lo", "hi"});
            g.norm.mode = read_enum(require(*norm, "mode", np), join(np, "mode"), kNormModes);
            g.norm.lo = read_or(*norm, "lo", np, g.norm.lo, read_number);
            g.norm.hi = read_or(*norm, "hi", np, g.norm.hi, read_number);
        }
        return g;
    }
    if (type == "rgb") {
        expect_object(j, path, {"type", "r", "g", "b", "x_extent", "y_extent"});
        RgbGraph g;
        g.r = read_matrix(require(j, "r", path), join(path, "r"));
        g.g = read_matrix(require(j, "g", path), join(path, "g"));
        g.b = read_matrix(require(j, "b", path), join(path, "b"));
        g.x_extent = read_range(require(j, "x_extent", path), join(path, "x_extent"));
        g.y_extent = read_range(require(j, "y_extent", path), join(path, "y_extent"));
        return g;
    }
    throw Error(ErrorCode::InvalidValue, join(path, "type"), "unknown graph type '" + type + "'");
}

Annotation read_annotation(const Json& j, const std::string& path)
{
    if (!j.is_object()) {
        schema_error(path, "expected an annotation object");
    }
    const std::string type = read_string(require(j, "type", path), join(path, "type"));
    auto ref = [&](std::string_view key) { return read_or(j, key, path, std::string{}, read_string); };
    if (type == "text") {
        expect_object(j, path,
                      {"type", "frame", "x", "y", "text", "color", "font_size", "x_transform_ref", "y_transform_ref"});
        TextAnn a;
        a.frame = read_or(j, "frame", path, a.frame,
                          [](const Json& v, const std::string& p) { return read_enum(v, p, kFrames); });
        a.x = read_number(require(j, "x", path), join(path, "x"));
        a.y = read_number(require(j, "y", path), join(path, "y"));
        a.text = read_string(require(j, "text", path), join(path, "text"));
        a.color = read_or(j, "color", path, a.color, read_color);
        a.font_size = read_or(j, "font_size", path, a.font_size, read_number);
        a.x_transform_ref = ref("x_transform_ref");
        a.y_transform_ref = ref("y_transform_ref");
        return a;
    }
    if (type == "hline") {
        expect_object(j, path, {"type", "y", "y_transform_ref", "style"});
        HLineAnn a;
        a.y = read_number(require(j, "y", path), join(path, "y"));
        a.y_transform_ref = ref("y_transform_ref");
        a.style = read_or(j, "style", path, Style{}, read_style);
        return a;
    }
    if (type == "vline") {
        expect_object(j, path, {"type", "x", "x_transform_ref", "style"});
        VLineAnn a;
        a.x = read_number(require(j, "x", path), join(path, "x"));
        a.x_transform_ref = ref("x_transform_ref");
        a.style = read_or(j, "style", path, Style{}, read_style);
        return a;
    }
    if (type == "rect") {
        expect_object(j, path, {"type", "x0", "x1", "y0", "y1", "x_transform_ref", "y_transform_ref", "fill", "outline"});
        RectAnn a;
        a.x0 = read_number(require(j, "x0", path), join(path, "x0"));
        a.x1 = read_number(require(j, "x1", path), join(path, "x1"));
        a.y0 = read_number(require(j, "y0", path), join(path, "y0"));
        a.y1 = read_number(require(j, "y1", path), join(path, "y1"));
        a.x_transform_ref = ref("x_transform_ref");
        a.y_transform_ref = ref("y_transform_ref");
        a.fill = read_or(j, "fill", path, a.fill, read_color);
        if (const Json* o = find(j, "outline"); o != nullptr && !o->is_null()) {
            a.outline = read_color(*o, join(path, "outline"));
        }
        return a;
    }
    throw Error(ErrorCode::InvalidValue, join(path, "type"), "unknown annotation type '" + type + "'");
}

TickConfig read_tick_config(const Json& j, const std::string& path)
{
    expect_object(j, path, {"major", "minor_count", "label_format", "labels_visible", "explicit_labels"});
    TickConfig tc;
    if (const Json* major = find(j, "major")) {
        const std::string mp = join(path, "major");
        expect_object(*major, mp, {"target_count", "explicit_positions"});
        const Json* count = find(*major, "target_count");
        const Json* positions = find(*major, "explicit_positions");
        if ((count != nullptr) == (positions != nullptr)) {
            schema_error(mp, "exactly one of target_count or explicit_positions is required");
        }
        if (count != nullptr) {
            tc.major = read_int(*count, join(mp, "target_count"));
        } else {
            tc.major = read_numbers(*positions, join(mp, "explicit_positions"));
        }
    }
    if (const Json* v = find(j, "minor_count"); v != nullptr && !v->is_null()) {
        tc.minor_count = read_int(*v, join(path, "minor_count"));
    }
    if (const Json* v = find(j, "label_format"); v != nullptr && !v->is_null()) {
        tc.label_format = read_string(*v, join(path, "label_format"));
    }
    tc.labels_visible = read_or(j, "labels_visible", path, tc.labels_visible, read_bool);
    if (const Json* v = find(j, "explicit_labels"); v != nullptr && !v->is_null()) {
        const std::string lp = join(path, "explicit_labels");
        if (!v->is_array()) {
            schema_error(lp, "expected an array of strings");
        }
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < v->size(); ++i) {
            labels.push_back(read_string((*v)[i], index(lp, i)));
        }
        tc.explicit_labels = std::move(labels);
    }
    return tc;
}

AxisTransformDef read_transform(const Json& j, const std::string& path)
{
    expect_object(j, path, {"id", "kind", "range", "inverted", "sexa_mode"});
    AxisTransformDef t;
    t.id = read_string(require(j, "id", path), join(path, "id"));
    t.kind = read_or(j, "kind", path, t.kind,
                     [](const Json& v, const std::string& p) { return read_enum(v, p, kAxisKinds); });
    t.range = read_range(require(j, "range", path), join(path, "range"), t.kind == AxisKind::Date);
    t.inverted = read_or(j, "inverted", path, t.inverted, read_bool);
    t.sexa_mode = read_or(j, "sexa_mode", path, t.sexa_mode,
                          [](const Json& v, const std::string& p) { return read_enum(v, p, kSexaModes); });
    return t;
}

AxisDef read_axis(const Json& j, const std::string& path)
{
    expect_object(j, path,
                  {"side", "transform_ref", "visible", "tick_config", "axis_label", "grid_lines", "tick_direction"});
    AxisDef a;
    a.side = read_enum(require(j, "side", path), join(path, "side"), kSides);
    a.transform_ref = read_string(require(j, "transform_ref", path), join(path, "transform_ref"));
    a.visible = read_or(j, "visible", path, a.visible, read_bool);
    a.tick_config = read_or(j, "tick_config", path, a.tick_config, read_tick_config);
    a.axis_label = read_or(j, "axis_label", path, a.axis_label, read_string);
    a.grid_lines = read_or(j, "grid_lines", path, a.grid_lines, read_bool);
    a.tick_direction = read_or(j, "tick_direction", path, a.tick_direction,
                               [](const Json& v, const std::string& p) { return read_enum(v, p, kTickDirections); });
    return a;
}

Layer read_layer(const Json& j, const std::string& path)
{
    expect_object(j, path, {"id", "x_transform_ref", "y_transform_ref", "graphs", "visible", "z_order"});
    Layer l;
    l.id = read_string(require(j, "id", path), join(path, "id"));
    l.x_transform_ref = read_string(require(j, "x_transform_ref", path), join(path, "x_transform_ref"));
    l.y_transform_ref = read_string(require(j, "y_transform_ref", path), join(path, "y_transform_ref"));
    if (const Json* graphs = find(j, "graphs")) {
        const std::string gp = join(path, "graphs");
        if (!graphs->is_array()) {
            schema_error(gp, "expected an array");
        }
        for (std::size_t i = 0; i < graphs->size(); ++i) {
            l.graphs.push_back(read_graph((*graphs)[i], index(gp, i)));
        }
    }
    l.visible = read_or(j, "visible", path, l.visible, read_bool);
    l.z_order = read_or(j, "z_order", path, l.z_order, read_int);
    return l;
}

template <typename T, typename Fn>
std::vector<T> read_list(const Json& obj, std::string_view key, const std::string& path, Fn&& fn)
{
    std::vector<T> out;
    const Json* list = find(obj, key);
    if (list == nullptr) {
        return out;
    }
    const std::string lp = join(path, key);
    if (!list->is_array()) {
        schema_error(lp, "expected an array");
    }
    for (std::size_t i = 0; i < list->size(); ++i) {
        out.push_back(fn((*list)[i], index(lp, i)));
    }
    return out;
}

PlotNode read_node(const Json& j, const std::string& path)
{
    expect_object(j, path,
                  {"id", "title", "transforms", "axes", "layers", "annotations", "children", "layout_hints", "margins"});
    PlotNode n;
    n.id = read_string(require(j, "id", path), join(path, "id"));
    n.title = read_or(j, "title", path, std::string{}, [](const Json& v, const std::string& p) {
        return v.is_null() ? std::string{} : read_string(v, p);
    });
    n.transforms = read_list<AxisTransformDef>(j, "transforms", path, read_transform);
    n.axes = read_list<AxisDef>(j, "axes", path, read_axis);
    n.layers = read_list<Layer>(j, "layers", path, read_layer);
    n.annotations = read_list<Annotation>(j, "annotations", path, read_annotation);
    n.children = read_list<PlotNode>(j, "children", path, read_node);
    if (const Json* hints = find(j, "layout_hints")) {
        const std::string hp = join(path, "layout_hints");
        expect_object(*hints, hp, {"row", "col", "weight"});
        n.layout_hints.row = read_or(*hints, "row", hp, 0, read_int);
        n.layout_hints.col = read_or(*hints, "col", hp, 0, read_int);
        n.layout_hints.weight = read_or(*hints, "weight", hp, 1.0, read_number);
    }
    if (const Json* m = find(j, "margins"); m != nullptr && !m->is_null()) {
        const std::string mp = join(path, "margins");
        expect_object(*m, mp, {"left", "right", "top", "bottom"});
        Margins margins;
        margins.left = read_or(*m, "left", mp, 0.0, read_number);
        margins.right = read_or(*m, "right", mp, 0.0, read_number);
        margins.top = read_or(*m, "top", mp, 0.0, read_number);
        margins.bottom = read_or(*m, "bottom", mp, 0.0, read_number);
        n.margins = margins;
    }
    return n;
}

}  // namespace

std::string to_string(AxisKind kind)
{
    return enum_name(kAxisKinds, kind);
}

std::string to_string(Side side)
{
    return enum_name(kSides, side);
}

Json to_json(const PlotNode& node)
{
    Json transforms = Json::array();
    for (const auto& t : node.transforms) {
        transforms.push_back(Json{{"id", t.id},
                                  {"kind", enum_name(kAxisKinds, t.kind)},
                                  {"range", range_json(t.range)},
                                  {"inverted", t.inverted},
                                  {"sexa_mode", enum_name(kSexaModes, t.sexa_mode)}});
    }
    Json axes = Json::array();
    for (const auto& a : node.axes) {
        axes.push_back(Json{{"side", enum_name(kSides, a.side)},
                            {"transform_ref", a.transform_ref},
                            {"visible", a.visible},
                            {"tick_config", tick_config_json(a.tick_config)},
                            {"axis_label", a.axis_label},
                            {"grid_lines", a.grid_lines},
                            {"tick_direction", enum_name(kTickDirections, a.tick_direction)}});
    }
    Json layers = Json::array();
    for (const auto& l : node.layers) {
        Json graphs = Json::array();
        for (const auto& g : l.graphs) {
            graphs.push_back(graph_json(g));
        }
        layers.push_back(Json{{"id", l.id},
                              {"x_transform_ref", l.x_transform_ref},
                              {"y_transform_ref", l.y_transform_ref},
                              {"graphs", std::move(graphs)},
                              {"visible", l.visible},
                              {"z_order", l.z_order}});
    }
    Json annotations = Json::array();
    for (const auto& a : node.annotations) {
        annotations.push_back(annotation_json(a));
    }
    Json children = Json::array();
    for (const auto& c : node.children) {
        children.push_back(to_json(c));
    }
    Json margins = nullptr;
    if (node.margins) {
        margins = Json{{"left", node.margins->left},
                       {"right", node.margins->right},
                       {"top", node.margins->top},
                       {"bottom", node.margins->bottom}};
    }
    return Json{{"id", node.id},
                {"title", node.title},
                {"transforms", std::move(transforms)},
                {"axes", std::move(axes)},
                {"layers", std::move(layers)},
                {"annotations", std::move(annotations)},
                {"children", std::move(children)},
                {"layout_hints", Json{{"row", node.layout_hints.row},
                                      {"col", node.layout_hints.col},
                                      {"weight", node.layout_hints.weight}}},
                {"margins", std::move(margins)}};
}

Json to_json(const Scene& scene)
{
    return Json{{"version", kSpecVersion}, {"plots", Json::array({to_json(scene.root)})}};
}

std::string canonical_text(const Scene& scene)
{
    return to_json(scene).dump();
}

Scene scene_from_json(const Json& doc)
{
    if (!doc.is_object()) {
        schema_error("", "document must be an object");
    }
    for (const auto& [key, value] : doc.items()) {
        if (key != "version" && key != "plots") {
            schema_error(key, "unknown field '" + key + "'");
        }
    }
    const Json& version = require(doc, "version", "");
    if (!version.is_number_integer() || version.get<int>() != kSpecVersion) {
        schema_error("version", "unsupported version (expected 1)");
    }
    const Json& plots = require(doc, "plots", "");
    if (!plots.is_array() || plots.size() != 1) {
        schema_error("plots", "plots must hold exactly one root plot; nest subplots under 'children'");
    }
    Scene scene;
    scene.root = read_node(plots[0], "plots[0]");
    return scene;
}

}  // namespace plotforge::scene
