#include <CLI11.hpp>
#include <cstdint>
#include <exception>
#include <iostream>

#include "vorwave/commands.hpp"

namespace {

vorwave::RunConfig make_config(const std::string& config_path, const std::string& out_dir) {
    vorwave::RunConfig cfg;
    if (!config_path.empty()) cfg = vorwave::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vorwave: spectral solver and continuation engine for steady periodic\n"
                 "gravity water waves with constant vorticity on a conformal strip"};
    app.require_subcommand(1);

    std::string config_path, out_dir, snapshot_path, grid_spec;
    std::uint64_t seed = 20240101ULL;
    app.add_option("--config", config_path, "configuration file (key = value sections)");
    app.add_option("--out", out_dir, "output directory (overrides config)");
    app.add_option("--seed", seed, "seed for randomized diagnostics");

    CLI::App* bif = app.add_subcommand("bifurcation-points", "table of laminar bifurcation points");
    CLI::App* cont = app.add_subcommand("continue", "trace one global bifurcation branch");
    CLI::App* field = app.add_subcommand("flowfield", "reconstruct the flow from a snapshot");
    field->add_option("--snapshot", snapshot_path, "solution snapshot file")->required();
    field->add_option("--grid", grid_spec, "field grid as NX,NY");
    CLI::App* lam = app.add_subcommand("laminar", "critical-point criterion for laminar flows");
    CLI::App* check = app.add_subcommand("check", "run the cross-module diagnostic suite");

    CLI11_PARSE(app, argc, argv);

    try {
        const vorwave::RunConfig cfg = make_config(config_path, out_dir);
        if (bif->parsed()) return vorwave::cmd_bifurcation_points(cfg, std::cout);
        if (cont->parsed()) return vorwave::cmd_continue(cfg, std::cout);
        if (field->parsed()) {
            int nx = -1, ny = -1;
            if (!grid_spec.empty()) {
                const auto comma = grid_spec.find(',');
                if (comma == std::string::npos) throw std::invalid_argument("--grid expects NX,NY");
                nx = std::stoi(grid_spec.substr(0, comma));
                ny = std::stoi(grid_spec.substr(comma + 1));
            }
            return vorwave::cmd_flowfield(cfg, snapshot_path, nx, ny, std::cout);
        }
        if (lam->parsed()) return vorwave::cmd_laminar(cfg, std::cout);
        if (check->parsed()) return vorwave::cmd_check(cfg, seed, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
