#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "plotforge/engine/engine.hpp"

// Viewer wire protocol. One message = [u32 big-endian header length]
// [UTF-8 JSON header][binary payload]. Only frame messages carry a payload
// (a PNG). docs/protocol.md lists every message.
namespace plotforge::protocol {

struct Message {
    scene::Json header;
    std::vector<std::uint8_t> payload;

    std::string type() const { return header.value("type", std::string()); }
};

std::vector<std::uint8_t> encode(const Message& msg);
/// Throws Error(PROTOCOL_ERROR) on truncation or a header that is not a
/// JSON object with a string "type".
Message decode(std::span<const std::uint8_t> bytes);

/// Translates a client header (other than hello) into an engine command.
/// Throws Error(PROTOCOL_ERROR) for unknown types or missing fields.
engine::Command to_command(const scene::Json& header);

Message ack_message(std::int64_t id, std::optional<std::uint64_t> generation);
Message error_message(std::optional<std::int64_t> id, const ErrorInfo& error);
Message frame_message(const engine::Frame& frame);
Message coords_message(std::int64_t id, const std::vector<engine::ClickEntry>& coords);
Message tree_message(std::int64_t id, const scene::Json& tree);

struct SessionOptions {
    unsigned workers = 0;
};

/// Server side of one connection, independent of the transport. The sink
/// receives every outgoing message, already ordered; it is never called
/// concurrently. Frames are forwarded in presentation order.
class ProtocolSession {
public:
    using Sink = std::function<void(const Message&)>;

    ProtocolSession(scene::Scene initial, Sink sink, SessionOptions options = {});
    ~ProtocolSession();

    /// Decodes and handles one message; decode failures are answered with
    /// an error message.
    void handle_bytes(std::span<const std::uint8_t> bytes);
    void handle(const Message& msg);

    /// Null until hello.
    engine::Engine* engine() { return engine_.get(); }
    void close();

private:
    void send(const Message& msg);
    void hello(std::int64_t id, const scene::Json& header);

    scene::Scene initial_;
    Sink sink_;
    SessionOptions options_;
    std::mutex send_mu_;
    std::unique_ptr<engine::Engine> engine_;
};

}  // namespace plotforge::protocol
