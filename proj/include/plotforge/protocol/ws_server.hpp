#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "plotforge/protocol/protocol.hpp"

namespace plotforge::protocol {

struct ServerOptions {
    std::string bind = "127.0.0.1";
    unsigned short port = 0;  // 0: ephemeral, see WsServer::port()
    unsigned threads = 0;     // 0: hardware concurrency + 1
    SessionOptions session;
};

/// WebSocket endpoint: every binary message is one protocol message; each
/// connection gets its own ProtocolSession over a fresh copy of the scene.
class WsServer {
public:
    using SceneFactory = std::function<scene::Scene()>;

    /// Binds and listens; throws Error(IO_FAILURE) if the port is taken.
    WsServer(SceneFactory factory, ServerOptions options);
    ~WsServer();

    unsigned short port() const noexcept;
    /// Serves on background threads until stop().
    void start();
    /// Blocks the caller until stop() is called from elsewhere.
    void wait();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace plotforge::protocol
