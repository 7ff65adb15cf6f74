#include "planebreaker/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "planebreaker/expr/eval.hpp"
#include "planebreaker/expr/parser.hpp"
#include "planebreaker/mesh/kernels.hpp"
#include "planebreaker/mesh/obj.hpp"
#include "planebreaker/mesh/surface.hpp"

namespace planebreaker::cli {

namespace {

// Throws std::runtime_error when the file cannot be read and
// std::invalid_argument when its contents are not a valid table.
mesh::ColorMap load_colormap(const std::optional<std::filesystem::path>& path)
{
    if (!path) {
        return mesh::ColorMap::viridis();
    }
    std::ifstream in(*path);
    if (!in) {
        throw std::runtime_error("cannot read colormap " + path->string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return mesh::ColorMap::parse_table(text.str());
}

std::optional<expr::Expression> parse_or_report(const std::string& source, std::ostream& err)
{
    try {
        return expr::parse(source);
    } catch (const expr::ParseError& e) {
        print_parse_error(err, source, e.position(), e.reason());
        return std::nullopt;
    }
}

} // namespace

void print_parse_error(std::ostream& err, std::string_view source, std::size_t position, std::string_view reason)
{
    err << "error: " << reason << '\n';
    err << "  " << source << '\n';
    err << "  " << std::string(position, ' ') << "^\n";
}

int run_plot(const PlotOptions& options, std::ostream& out, std::ostream& err)
{
    mesh::ColorMap cmap = mesh::ColorMap::viridis();
    try {
        options.domain.validate();
        options.z_limits.validate();
        options.resolution.validate();
        cmap = load_colormap(options.colormap);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInvalidArguments;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kIoError;
    }

    const std::optional<expr::Expression> e = parse_or_report(options.expression, err);
    if (!e) {
        return exit_code::kParseError;
    }

    const mesh::HeightField field = mesh::sample_grid(*e, options.domain, options.resolution);
    const mesh::SurfaceMesh surface = mesh::build_mesh(*e, field, options.z_limits, cmap);
    if (surface.empty()) {
        err << "error: no surface in range: " << surface.label << " has no triangles within z in ["
            << options.z_limits.z_min << ", " << options.z_limits.z_max << "]\n";
        return exit_code::kEmptyMesh;
    }

    std::ostream* summary = &out;
    if (options.output.empty()) {
        mesh::write_obj(out, surface);
        out.flush();
        summary = &err;
    } else {
        std::ofstream file(options.output, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open " << options.output.string() << " for writing\n";
            return exit_code::kIoError;
        }
        mesh::write_obj(file, surface);
        file.close();
        if (!file) {
            err << "error: failed writing " << options.output.string() << '\n';
            return exit_code::kIoError;
        }
    }

    *summary << "vertices: " << surface.positions.size() << '\n'
             << "triangles: " << surface.indices.size() << '\n'
             << "label: " << surface.label << '\n';
    return exit_code::kOk;
}

int run_eval(const EvalOptions& options, std::ostream& out, std::ostream& err)
{
    const std::optional<expr::Expression> e = parse_or_report(options.expression, err);
    if (!e) {
        return exit_code::kParseError;
    }
    const expr::EvalResult r = expr::evaluate(*e, options.x, options.y);
    if (!r.is_defined()) {
        out << "undefined\n";
    } else {
        char buf[400];
        std::snprintf(buf, sizeof buf, "%.6f", r.value());
        out << buf << '\n';
    }
    return exit_code::kOk;
}

int run_serve(const ServeOptions& options, std::ostream& err)
{
    relay::ServerOptions server_options;
    server_options.listen = options.listen;
    server_options.web_root = options.web_root;
    try {
        server_options.session.initial_state = graph::GraphState(options.domain, options.z_limits, options.resolution);
        server_options.session.colormap = load_colormap(options.colormap);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kInvalidArguments;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kIoError;
    }
    server_options.session.on_receive = [](relay::ConnectionId id, std::string_view type) {
        spdlog::info("connection {}: received {}", id, type);
    };

    std::optional<relay::Server> server;
    try {
        server.emplace(std::move(server_options));
    } catch (const relay::BindError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::kBindError;
    }

    server->stop_on_signals();
    spdlog::info("listening on {}:{}", server->host(), server->port());
    server->run();
    spdlog::info("server stopped");
    return exit_code::kOk;
}

} // namespace planebreaker::cli
