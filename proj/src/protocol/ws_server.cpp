#include "plotforge/protocol/ws_server.hpp"

#include <condition_variable>
#include <deque>
#include <mutex>

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/post.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

namespace plotforge::protocol {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

// All handlers of one connection run on its strand; engine workers only
// post encoded messages onto it.
class Connection : public std::enable_shared_from_this<Connection> {
public:
    Connection(tcp::socket socket, scene::Scene scene, SessionOptions options)
        : ws_(std::move(socket)), scene_(std::move(scene)), options_(options)
    {
    }

    ~Connection()
    {
        if (session_) {
            session_->close();
        }
    }

    // Only once the io threads are stopped.
    void close_session()
    {
        closed_ = true;
        if (session_) {
            session_->close();
        }
    }

    void start()
    {
        net::dispatch(ws_.get_executor(), [self = shared_from_this()] { self->accept(); });
    }

private:
    void accept()
    {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
            if (ec) {
                return;
            }
            self->ws_.binary(true);
            std::weak_ptr<Connection> weak = self;
            auto executor = self->ws_.get_executor();
            self->session_ = std::make_unique<ProtocolSession>(
                std::move(self->scene_),
                [weak, executor](const Message& m) {
                    auto bytes = std::make_shared<std::vector<std::uint8_t>>(encode(m));
                    net::post(executor, [weak, bytes] {
                        if (auto c = weak.lock()) {
                            c->enqueue(bytes);
                        }
                    });
                },
                self->options_);
            self->read();
        });
    }

    void read()
    {
        ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->shutdown();
                return;
            }
            const auto data = self->buffer_.cdata();
            self->session_->handle_bytes(
                std::span<const std::uint8_t>(static_cast<const std::uint8_t*>(data.data()), data.size()));
            self->buffer_.consume(self->buffer_.size());
            self->read();
        });
    }

    void enqueue(std::shared_ptr<std::vector<std::uint8_t>> bytes)
    {
        if (closed_) {
            return;
        }
        outbox_.push_back(std::move(bytes));
        if (outbox_.size() == 1) {
            write();
        }
    }

    void write()
    {
        ws_.async_write(net::buffer(*outbox_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
            if (ec) {
                self->shutdown();
                return;
            }
            self->outbox_.pop_front();
            if (!self->outbox_.empty()) {
                self->write();
            }
        });
    }

    // Joins the engine threads here, on the strand, so no worker can end up
    // holding the last reference.
    void shutdown()
    {
        closed_ = true;
        outbox_.clear();
        if (session_) {
            session_->close();
        }
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    scene::Scene scene_;
    SessionOptions options_;
    std::unique_ptr<ProtocolSession> session_;
    std::deque<std::shared_ptr<std::vector<std::uint8_t>>> outbox_;
    bool closed_ = false;
};

}  // namespace

struct WsServer::Impl {
    SceneFactory factory;
    ServerOptions options;
    net::io_context ioc;
    tcp::acceptor acceptor{ioc};
    std::vector<std::thread> threads;
    std::mutex mu;
    std::condition_variable cv;
    bool stopped = false;
    std::vector<std::weak_ptr<Connection>> connections;

    void do_accept()
    {
        acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
            if (ec) {
                if (ec != net::error::operation_aborted) {
                    do_accept();
                }
                return;
            }
            auto c = std::make_shared<Connection>(std::move(socket), factory(), options.session);
            {
                std::lock_guard lock(mu);
                std::erase_if(connections, [](const auto& w) { return w.expired(); });
                connections.push_back(c);
            }
            c->start();
            do_accept();
        });
    }
};

WsServer::WsServer(SceneFactory factory, ServerOptions options) : impl_(std::make_unique<Impl>())
{
    impl_->factory = std::move(factory);
    impl_->options = options;
    const std::string where = options.bind + ":" + std::to_string(options.port);
    try {
        const tcp::endpoint ep(net::ip::make_address(options.bind), options.port);
        impl_->acceptor.open(ep.protocol());
        impl_->acceptor.set_option(net::socket_base::reuse_address(true));
        impl_->acceptor.bind(ep);
        impl_->acceptor.listen(net::socket_base::max_listen_connections);
    } catch (const boost::system::system_error& e) {
        throw Error(ErrorCode::IoFailure, where, std::string("cannot listen: ") + e.what());
    }
}

WsServer::~WsServer()
{
    stop();
}

unsigned short WsServer::port() const noexcept
{
    beast::error_code ec;
    return impl_->acceptor.local_endpoint(ec).port();
}

void WsServer::start()
{
    impl_->do_accept();
    unsigned n = impl_->options.threads != 0 ? impl_->options.threads : std::thread::hardware_concurrency() + 1;
    n = std::max(2u, n);
    for (unsigned i = 0; i < n; ++i) {
        impl_->threads.emplace_back([this] { impl_->ioc.run(); });
    }
}

void WsServer::wait()
{
    std::unique_lock lock(impl_->mu);
    impl_->cv.wait(lock, [&] { return impl_->stopped; });
}

void WsServer::stop()
{
    {
        std::lock_guard lock(impl_->mu);
        if (impl_->stopped) {
            return;
        }
        impl_->stopped = true;
    }
    net::post(impl_->ioc, [this] {
        beast::error_code ec;
        impl_->acceptor.close(ec);
    });
    impl_->ioc.stop();
    for (auto& t : impl_->threads) {
        if (t.joinable()) {
            t.join();
        }
    }
    impl_->threads.clear();
    // Join every engine before the io_context (and its queued handlers) goes away.
    for (auto& w : impl_->connections) {
        if (auto c = w.lock()) {
            c->close_session();
        }
    }
    impl_->cv.notify_all();
}

}  // namespace plotforge::protocol
