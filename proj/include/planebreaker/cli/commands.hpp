#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "planebreaker/mesh/grid.hpp"
#include "planebreaker/relay/server.hpp"

namespace planebreaker::cli {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kInvalidArguments = 1;
inline constexpr int kParseError = 2;
inline constexpr int kEmptyMesh = 3;
inline constexpr int kIoError = 4;
inline constexpr int kBindError = 5;
} // namespace exit_code

struct PlotOptions {
    std::string expression;
    mesh::Domain domain = mesh::kDefaultDomain;
    mesh::ZLimits z_limits = mesh::kDefaultZLimits;
    mesh::Resolution resolution = mesh::kWireResolution;
    /// OBJ destination; when empty the OBJ goes to `out` and the summary to `err`.
    std::filesystem::path output;
    std::optional<std::filesystem::path> colormap;
};

struct EvalOptions {
    std::string expression;
    double x = 0.0;
    double y = 0.0;
};

struct ServeOptions {
    relay::Endpoint listen{"127.0.0.1", 8080};
    std::filesystem::path web_root;
    mesh::Domain domain = mesh::kDefaultDomain;
    mesh::ZLimits z_limits = mesh::kDefaultZLimits;
    mesh::Resolution resolution = mesh::kWireResolution;
    std::optional<std::filesystem::path> colormap;
};

/// Parse, sample, mesh and write an OBJ. Returns an exit code.
int run_plot(const PlotOptions& options, std::ostream& out, std::ostream& err);

/// Prints f(x, y) with six decimals, or "undefined".
int run_eval(const EvalOptions& options, std::ostream& out, std::ostream& err);

/// Runs the relay until SIGINT or SIGTERM.
int run_serve(const ServeOptions& options, std::ostream& err);

/// Writes "error: <reason>", the source line and a caret under position.
void print_parse_error(std::ostream& err, std::string_view source, std::size_t position, std::string_view reason);

} // namespace planebreaker::cli
