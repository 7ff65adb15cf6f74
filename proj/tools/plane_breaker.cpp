#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "planebreaker/cli/commands.hpp"

namespace cli = planebreaker::cli;

namespace {

void add_view_flags(CLI::App* cmd, planebreaker::mesh::Domain& d, planebreaker::mesh::ZLimits& z,
                    planebreaker::mesh::Resolution& r)
{
    cmd->add_option("--xmin", d.x_min, "Lower x bound")->capture_default_str();
    cmd->add_option("--xmax", d.x_max, "Upper x bound")->capture_default_str();
    cmd->add_option("--ymin", d.y_min, "Lower y bound")->capture_default_str();
    cmd->add_option("--ymax", d.y_max, "Upper y bound")->capture_default_str();
    cmd->add_option("--zmin", z.z_min, "Lowest visible height")->capture_default_str();
    cmd->add_option("--zmax", z.z_max, "Highest visible height")->capture_default_str();
    cmd->add_option("--segments", r.segments, "Grid cells per axis (1-1024)")->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    spdlog::set_default_logger(spdlog::stderr_color_mt("plane-breaker"));

    CLI::App app{"Real-time z = f(x, y) surface plotter and wizard relay"};
    app.require_subcommand(1);

    cli::PlotOptions plot;
    std::string colormap_path;
    auto* plot_cmd = app.add_subcommand("plot", "Mesh an equation and write a Wavefront OBJ");
    plot_cmd->add_option("expression", plot.expression, "Equation, e.g. \"z = sin(x) + cos(y)\"")->required();
    add_view_flags(plot_cmd, plot.domain, plot.z_limits, plot.resolution);
    plot_cmd->add_option("-o,--output", plot.output, "OBJ output path (stdout when omitted)");
    plot_cmd->add_option("--colormap", colormap_path, "Colormap table with `t r g b` rows");

    cli::EvalOptions eval;
    std::string at;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate an equation at one point");
    eval_cmd->add_option("expression", eval.expression, "Equation")->required();
    eval_cmd->add_option("--at", at, "Point as x,y")->required();

    cli::ServeOptions serve;
    std::string addr = "127.0.0.1:8080";
    std::string serve_colormap;
    auto* serve_cmd = app.add_subcommand("serve", "Run the WebSocket relay and viewer host");
    serve_cmd->add_option("--addr", addr, "Listen address host:port")
        ->envname("PLANE_BREAKER_ADDR")
        ->capture_default_str();
    serve.web_root = PLANEBREAKER_DEFAULT_WEB_ROOT;
    serve_cmd->add_option("--web-root", serve.web_root, "Directory served at /")->capture_default_str();
    add_view_flags(serve_cmd, serve.domain, serve.z_limits, serve.resolution);
    serve_cmd->add_option("--colormap", serve_colormap, "Colormap table with `t r g b` rows");

    CLI11_PARSE(app, argc, argv);

    if (*plot_cmd) {
        if (!colormap_path.empty()) {
            plot.colormap = colormap_path;
        }
        return cli::run_plot(plot, std::cout, std::cerr);
    }
    if (*eval_cmd) {
        const auto comma = at.find(',');
        try {
            if (comma == std::string::npos) {
                throw std::invalid_argument("expected x,y");
            }
            std::size_t used = 0;
            eval.x = std::stod(at.substr(0, comma), &used);
            const std::string ys = at.substr(comma + 1);
            eval.y = std::stod(ys, &used);
            if (used != ys.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception&) {
            std::cerr << "error: --at must be x,y with numeric coordinates, got '" << at << "'\n";
            return cli::exit_code::kInvalidArguments;
        }
        return cli::run_eval(eval, std::cout, std::cerr);
    }

    try {
        serve.listen = planebreaker::relay::parse_endpoint(addr);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code::kInvalidArguments;
    }
    if (!serve_colormap.empty()) {
        serve.colormap = serve_colormap;
    }
    return cli::run_serve(serve, std::cerr);
}
