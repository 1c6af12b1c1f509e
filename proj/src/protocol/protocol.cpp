#include "plotforge/protocol/protocol.hpp"

#include "plotforge/export/png.hpp"

namespace plotforge::protocol {

namespace {

[[noreturn]] void bad(const std::string& msg)
{
    throw Error(ErrorCode::ProtocolError, "", msg);
}

double number(const scene::Json& h, const char* key)
{
    const auto it = h.find(key);
    if (it == h.end() || !it->is_number()) {
        bad(std::string("field '") + key + "' must be a number");
    }
    return it->get<double>();
}

int integer(const scene::Json& h, const char* key)
{
    const auto it = h.find(key);
    if (it == h.end() || !it->is_number_integer()) {
        bad(std::string("field '") + key + "' must be an integer");
    }
    return it->get<int>();
}

std::int64_t message_id(const scene::Json& h)
{
    const auto it = h.find("id");
    if (it == h.end() || !it->is_number_integer()) {
        bad("field 'id' must be an integer");
    }
    return it->get<std::int64_t>();
}

}  // namespace

std::vector<std::uint8_t> encode(const Message& msg)
{
    const std::string head = msg.header.dump();
    const auto n = static_cast<std::uint32_t>(head.size());
    std::vector<std::uint8_t> out;
    out.reserve(4 + head.size() + msg.payload.size());
    out.push_back(static_cast<std::uint8_t>(n >> 24));
    out.push_back(static_cast<std::uint8_t>(n >> 16));
    out.push_back(static_cast<std::uint8_t>(n >> 8));
    out.push_back(static_cast<std::uint8_t>(n));
    out.insert(out.end(), head.begin(), head.end());
    out.insert(out.end(), msg.payload.begin(), msg.payload.end());
    return out;
}

Message decode(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 4) {
        bad("message shorter than its length prefix");
    }
    const std::size_t n = (std::size_t{bytes[0]} << 24) | (std::size_t{bytes[1]} << 16) |
                          (std::size_t{bytes[2]} << 8) | std::size_t{bytes[3]};
    if (n > bytes.size() - 4) {
        bad("header length exceeds message size");
    }
    Message m;
    try {
        m.header = scene::Json::parse(bytes.begin() + 4, bytes.begin() + 4 + static_cast<std::ptrdiff_t>(n));
    } catch (const scene::Json::exception&) {
        bad("header is not valid JSON");
    }
    if (!m.header.is_object() || !m.header.contains("type") || !m.header["type"].is_string()) {
        bad("header must be an object with a string 'type'");
    }
    m.payload.assign(bytes.begin() + 4 + static_cast<std::ptrdiff_t>(n), bytes.end());
    return m;
}

engine::Command to_command(const scene::Json& h)
{
    const std::string type = h.value("type", std::string());
    if (type == "resize") {
        return engine::Resize{integer(h, "width"), integer(h, "height")};
    }
    if (type == "zoom_rect") {
        return engine::ZoomRect{number(h, "x0"), number(h, "y0"), number(h, "x1"), number(h, "y1")};
    }
    if (type == "wheel") {
        return engine::Wheel{number(h, "x"), number(h, "y"), integer(h, "notches")};
    }
    if (type == "click") {
        return engine::ClickQuery{number(h, "x"), number(h, "y")};
    }
    if (type == "set_property") {
        if (!h.contains("path") || !h["path"].is_string() || !h.contains("value")) {
            bad("set_property needs a string 'path' and a 'value'");
        }
        return engine::SetProperty{h["path"].get<std::string>(), h["value"]};
    }
    if (type == "batch") {
        const std::string mode = h.value("mode", std::string());
        if (mode == "begin") {
            return engine::BeginBatch{};
        }
        if (mode == "end") {
            return engine::EndBatch{};
        }
        bad("batch 'mode' must be \"begin\" or \"end\"");
    }
    if (type == "reset_zoom") {
        return engine::ResetZoom{};
    }
    if (type == "get_tree") {
        return engine::TreeQuery{};
    }
    bad("unknown message type '" + type + "'");
}

Message ack_message(std::int64_t id, std::optional<std::uint64_t> generation)
{
    Message m;
    m.header = {{"type", "ack"}, {"id", id}};
    if (generation) {
        m.header["generation"] = *generation;
    }
    return m;
}

Message error_message(std::optional<std::int64_t> id, const ErrorInfo& error)
{
    Message m;
    m.header = {{"type", "error"},
                {"id", id ? scene::Json(*id) : scene::Json(nullptr)},
                {"code", std::string(to_string(error.code))},
                {"path", error.path},
                {"message", error.message}};
    return m;
}

Message frame_message(const engine::Frame& frame)
{
    Message m;
    m.header = {{"type", "frame"}, {"generation", frame.generation}, {"width", frame.width}, {"height", frame.height}};
    m.payload = exporter::encode_png(*frame.raster);
    return m;
}

Message coords_message(std::int64_t id, const std::vector<engine::ClickEntry>& coords)
{
    Message m;
    scene::Json list = scene::Json::array();
    for (const auto& c : coords) {
        list.push_back(
            {{"node", c.node}, {"x_transform", c.x_transform}, {"y_transform", c.y_transform}, {"x", c.x}, {"y", c.y}});
    }
    m.header = {{"type", "coords"}, {"id", id}, {"coords", list}};
    return m;
}

Message tree_message(std::int64_t id, const scene::Json& tree)
{
    Message m;
    m.header = {{"type", "tree"}, {"id", id}, {"tree", tree}};
    return m;
}

// --- session ----------------------------------------------------------------

ProtocolSession::ProtocolSession(scene::Scene initial, Sink sink, SessionOptions options)
    : initial_(std::move(initial)), sink_(std::move(sink)), options_(options)
{
}

ProtocolSession::~ProtocolSession()
{
    close();
}

void ProtocolSession::close()
{
    if (engine_) {
        engine_->close();
    }
}

void ProtocolSession::send(const Message& msg)
{
    std::lock_guard lock(send_mu_);
    sink_(msg);
}

void ProtocolSession::handle_bytes(std::span<const std::uint8_t> bytes)
{
    Message m;
    try {
        m = decode(bytes);
    } catch (const Error& e) {
        send(error_message(std::nullopt, e.info()));
        return;
    }
    handle(m);
}

void ProtocolSession::hello(std::int64_t id, const scene::Json& header)
{
    if (engine_) {
        bad("hello was already received");
    }
    engine::EngineOptions eo;
    eo.width = integer(header, "width");
    eo.height = integer(header, "height");
    eo.workers = options_.workers;
    eo.on_frame = [this](const engine::Frame& f) {
        try {
            send(frame_message(f));
        } catch (...) {
            // transport gone; the connection owner tears the session down
        }
    };
    // Holding the send lock orders the ack before frame 1.
    std::lock_guard lock(send_mu_);
    engine_ = std::make_unique<engine::Engine>(initial_, eo);
    sink_(ack_message(id, 1));
}

void ProtocolSession::handle(const Message& msg)
{
    std::optional<std::int64_t> id;
    try {
        id = message_id(msg.header);
        const std::string type = msg.type();
        if (type == "hello") {
            hello(*id, msg.header);
            return;
        }
        if (!engine_) {
            bad("expected hello first");
        }
        const engine::Reply r = engine_->call(to_command(msg.header));
        if (!r.ok()) {
            send(error_message(id, *r.error));
            return;
        }
        if (type == "click") {
            send(coords_message(*id, r.coords));
        } else if (type == "get_tree") {
            send(tree_message(*id, r.tree));
        }
        send(ack_message(*id, r.generation));
    } catch (const Error& e) {
        send(error_message(id, e.info()));
    }
}

}  // namespace plotforge::protocol
