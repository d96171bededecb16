// tmbec: command-line front end: evolve, cat, husimi, decohere, purify

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tmbec/runner/app.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Two-mode condensate dynamics, generalized coherent states and cat decompositions"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::string out_dir;
    long seed = 0;
    app.add_option("--out", out_dir, "Output directory (default: $OUT_DIR or .)");
    app.add_option("--seed", seed, "Reserved; no command draws random numbers");

    const std::pair<const char*, const char*> commands[] = {
        {"evolve", "Observable time series of mode b (CSV)"},
        {"cat", "Purification time, rational phase and cat decomposition (JSON)"},
        {"husimi", "Husimi Q function on a grid (CSV) with packet count"},
        {"decohere", "Purity under phase damping (CSV)"},
        {"purify", "Purification times and required initial amplitudes (JSON)"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("config", config_path, "INI configuration file")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : tmbec::runner::kExitUsage;
    }

    if (out_dir.empty()) {
        const char* env = std::getenv("OUT_DIR");
        out_dir = env ? env : ".";
    }
    const std::string command = app.get_subcommands().front()->get_name();
    return tmbec::runner::run_command(command, config_path, out_dir, std::cerr);
}
