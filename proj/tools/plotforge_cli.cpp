// plotforge command line: render, validate, serve.
//
// Exit codes: 0 success, 1 usage error, 2 invalid spec, 3 I/O failure.

#include <csignal>
#include <iostream>

#include <CLI11.hpp>

#include "plotforge/error.hpp"
#include "plotforge/export/eps.hpp"
#include "plotforge/export/png.hpp"
#include "plotforge/protocol/ws_server.hpp"
#include "plotforge/render/render.hpp"
#include "plotforge/spec/spec.hpp"

using namespace plotforge;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;

int exit_code(const Error& e)
{
    return e.code() == ErrorCode::IoFailure ? kExitIo : kExitInvalid;
}

void report(const Error& e)
{
    std::cerr << "error: " << e.info().describe() << "\n";
}

int cmd_render(const std::string& spec_path, const std::string& out, int width, int height, const std::string& format)
{
    try {
        const auto spec = spec::load_spec(spec_path);
        const auto list = render::emit_drawlist(spec.scene, width, height);
        if (format == "png") {
            exporter::write_png(render::render_drawlist(list).raster, out);
        } else {
            exporter::write_eps(list, width, height, out);
        }
        return 0;
    } catch (const Error& e) {
        report(e);
        return exit_code(e);
    }
}

int cmd_validate(const std::string& spec_path)
{
    try {
        spec::load_spec(spec_path);
        return 0;
    } catch (const Error& e) {
        std::cout << e.info().describe() << "\n";
        return exit_code(e);
    }
}

int cmd_serve(const std::string& spec_path, const std::string& bind, unsigned short port)
{
    spec::LoadedSpec spec;
    try {
        spec = spec::load_spec(spec_path);
    } catch (const Error& e) {
        report(e);
        return exit_code(e);
    }
    // Signals are taken synchronously by this thread only.
    sigset_t set;
    sigemptyset(&set);
    sigaddset(&set, SIGINT);
    sigaddset(&set, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &set, nullptr);
    try {
        protocol::ServerOptions opts;
        opts.bind = bind;
        opts.port = port;
        const scene::Scene scene = spec.scene;
        protocol::WsServer server([scene] { return scene; }, opts);
        server.start();
        std::cout << "listening on ws://" << bind << ":" << server.port() << "/" << std::endl;
        int sig = 0;
        sigwait(&set, &sig);
        server.stop();
        return 0;
    } catch (const Error& e) {
        report(e);
        return exit_code(e);
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"plotforge: 2D scientific plots from declarative specs"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out;
    int width = 800;
    int height = 600;
    std::string format = "png";
    auto* render_cmd = app.add_subcommand("render", "Render a spec to PNG or EPS");
    render_cmd->add_option("spec", spec_path, "Spec file")->required();
    render_cmd->add_option("--out,-o", out, "Output file")->required();
    render_cmd->add_option("--width", width, "Width in pixels (points for EPS)")->check(CLI::PositiveNumber);
    render_cmd->add_option("--height", height, "Height in pixels (points for EPS)")->check(CLI::PositiveNumber);
    render_cmd->add_option("--format", format, "png or eps")->check(CLI::IsMember({"png", "eps"}));

    auto* validate_cmd = app.add_subcommand("validate", "Check a spec without rendering");
    validate_cmd->add_option("spec", spec_path, "Spec file")->required();

    std::string bind = "127.0.0.1";
    unsigned short port = 8765;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the viewer protocol over WebSocket");
    serve_cmd->add_option("spec", spec_path, "Spec file")->required();
    serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)");
    serve_cmd->add_option("--bind", bind, "Listen address");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitUsage;
    }

    if (*render_cmd) {
        return cmd_render(spec_path, out, width, height, format);
    }
    if (*validate_cmd) {
        return cmd_validate(spec_path);
    }
    return cmd_serve(spec_path, bind, port);
}
