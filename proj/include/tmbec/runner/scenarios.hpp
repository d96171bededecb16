// scenarios.hpp: the runner's subcommands as pure functions returning tables and metadata

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tmbec/analytic.hpp"
#include "tmbec/gcs.hpp"
#include "tmbec/runner/config.hpp"

namespace tmbec::runner {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

struct Output {
    std::string name;                 // file stem
    std::optional<Table> table;       // written as <name>.csv when present
    nlohmann::ordered_json meta;      // <name>.meta.json, or <name>.json for report-only commands
};

// Everything the cat, husimi and acceptance paths share about one
// purification run at a quarter time.
struct CatRun {
    CoherentPair pair;
    DerivedParams derived;
    double t_e{0.0};
    AnalyticAmplitudes amplitudes;
    TwoModeState state;
    std::vector<complex> gcs; // mode b with mode a projected on vacuum
    complex beta{0.0, 0.0};   // beta(t_e) e^{-i w0 t_e}
    double mode_a_residual{0.0};
};

// alpha_b solves the purification condition for alpha_a at the
// quarter time; the mean number used in w1 is iterated to self-consistency.
CatRun run_cat_pipeline(const ModelParams& p, const CatOptions& opts, double tail_tol);

Output cmd_evolve(const RunConfig& config);
Output cmd_cat(const RunConfig& config);
Output cmd_husimi(const RunConfig& config);
Output cmd_decohere(const RunConfig& config);
Output cmd_purify(const RunConfig& config);

// 17 significant digits, "nan" for NaN.
std::string format_double(double v);
std::string to_csv(const Table& table);
std::string sha256_hex(const std::string& bytes);

// Writes <dir>/<name>.csv (+ .meta.json) or <dir>/<name>.json.
void write_output(const std::filesystem::path& dir, const Output& out);

} // namespace tmbec::runner
