#include "tmbec/runner/scenarios.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "tmbec/decoherence.hpp"
#include "tmbec/errors.hpp"
#include "tmbec/evolution.hpp"
#include "tmbec/observables.hpp"
#include "tmbec/phase_space.hpp"

namespace tmbec::runner {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

nlohmann::ordered_json complex_json(complex z) { return nlohmann::ordered_json::array({z.real(), z.imag()}); }

nlohmann::ordered_json model_json(const ModelParams& p) {
    return {{"omega_a", p.omega_a}, {"omega_b", p.omega_b}, {"u_aa", p.u_aa},
            {"u_bb", p.u_bb},       {"u_ab", p.u_ab},       {"lambda", p.lambda}};
}

const CoherentPair& require_state(const RunConfig& c) {
    if (!c.state) throw ConfigError("[state] section is required for this command");
    return *c.state;
}

std::string percent_label(double v) { return fmt::format("{:g}", v); }

} // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    return fmt::format("{:.17g}", v);
}

std::string to_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
    return hex;
}

void write_output(const std::filesystem::path& dir, const Output& out) {
    std::filesystem::create_directories(dir);
    auto write = [](const std::filesystem::path& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + path.string());
        f << body;
    };
    if (out.table) {
        write(dir / (out.name + ".csv"), to_csv(*out.table));
        write(dir / (out.name + ".meta.json"), out.meta.dump(2) + "\n");
    } else {
        write(dir / (out.name + ".json"), out.meta.dump(2) + "\n");
    }
}

CatRun run_cat_pipeline(const ModelParams& p, const CatOptions& opts, double tail_tol) {
    if (!p.analytic_valid()) throw std::invalid_argument("cat construction needs U_aa + U_bb = 2 U_ab");
    const complex alpha_a = opts.alpha_a.value_or(std::sqrt(opts.n_total) * complex{1.0, 1.0} / 2.0);

    CatRun run;
    double n_mean = opts.n_total;
    for (int iter = 0; iter < 100; ++iter) {
        run.derived = derive_params(p, n_mean);
        const auto times = purification_times(run.derived, PurificationKind::quarter, opts.quarter_index + 1);
        run.t_e = times.back();
        const complex alpha_b = purification_initial_condition(alpha_a, Mode::a, run.derived, p, run.t_e);
        run.pair = CoherentPair(alpha_a, alpha_b);
        const double next = run.pair.n_mean();
        if (std::abs(next - n_mean) <= 1e-14 * std::max(1.0, n_mean)) break;
        n_mean = next;
    }
    run.derived = derive_params(p, run.pair.n_mean());
    run.amplitudes = amplitudes_at(run.pair, run.derived, p, run.t_e);
    run.state = evolved_state_analytic(run.pair, p, run.t_e, tail_tol);
    run.gcs = project_on_vacuum(run.state, Mode::a);
    run.beta = run.amplitudes.beta_t * std::polar(1.0, -run.derived.omega_0 * run.t_e);
    const auto rho_a = reduce_mode_a(run.state);
    run.mode_a_residual = diagnostics(rho_a, run.pair.n_mean()).nb_mean;
    return run;
}

Output cmd_evolve(const RunConfig& config) {
    const CoherentPair& pair = require_state(config);
    const auto state0 = coherent_product(pair, config.tail_tol);
    const double to_seconds = config.time.seconds_per_unit(config.model);
    const auto grid = config.time.points();

    std::vector<std::pair<std::string, ModelParams>> series;
    if (config.u_ab_percent.empty()) {
        series.emplace_back("model", config.model);
    } else {
        for (double pct : config.u_ab_percent) {
            ModelParams p = config.model;
            p.u_ab = pct / 100.0 * config.model.u_aa;
            series.emplace_back(percent_label(pct), p);
        }
    }

    Output out;
    out.name = "evolve";
    out.table = Table{{"series", "t", "nb_frac", "var_nb", "var_b", "mandel_q", "linear_entropy"}, {}};
    out.meta["command"] = "evolve";
    out.meta["model"] = model_json(config.model);
    out.meta["alpha_a"] = complex_json(pair.alpha_a());
    out.meta["alpha_b"] = complex_json(pair.alpha_b());
    out.meta["n_mean"] = pair.n_mean();
    out.meta["truncation_n_max"] = state0.cutoff();
    out.meta["achieved_norm"] = std::sqrt(state0.norm_squared());
    out.meta["series_column"] = config.u_ab_percent.empty() ? "model u_ab" : "u_ab as percent of u_aa";
    auto& series_meta = out.meta["series"] = nlohmann::ordered_json::array();

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& [label, p] = series[s];
        Engine engine = config.engine;
        if (engine == Engine::automatic) engine = p.analytic_valid() ? Engine::analytic : Engine::numeric;
        if (engine == Engine::analytic && !p.analytic_valid())
            throw std::invalid_argument("engine=analytic requested for parameters outside U_aa + U_bb = 2 U_ab");

        std::vector<std::vector<double>> rows(grid.size());
        const long count = static_cast<long>(grid.size());
        const double series_id = config.u_ab_percent.empty() ? kNaN : config.u_ab_percent[s];
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i) {
            const double t = grid[i] * to_seconds;
            const TwoModeState st = engine == Engine::analytic ? evolved_state_analytic(pair, p, t, config.tail_tol)
                                                               : evolve(state0, p, t);
            const auto rec = diagnostics(reduce_mode_b(st), pair.n_mean(), t);
            rows[i] = {series_id, grid[i], rec.nb_frac, rec.var_nb, rec.var_b, rec.mandel_q.value_or(kNaN),
                       rec.linear_entropy};
        }
        for (auto& r : rows) out.table->rows.push_back(std::move(r));
        series_meta.push_back({{"label", label}, {"u_ab", p.u_ab}, {"engine", engine_name(engine)},
                               {"analytic_valid", p.analytic_valid()}});
    }
    out.meta["time_unit_seconds"] = to_seconds;
    out.meta["points_per_series"] = grid.size();
    return out;
}

Output cmd_cat(const RunConfig& config) {
    const auto run = run_cat_pipeline(config.model, config.cat, config.tail_tol);
    Output out;
    out.name = "cat";
    auto& m = out.meta;
    m["command"] = "cat";
    m["model"] = model_json(config.model);
    m["alpha_a"] = complex_json(run.pair.alpha_a());
    m["alpha_b"] = complex_json(run.pair.alpha_b());
    m["n_mean"] = run.pair.n_mean();
    m["omega_0"] = run.derived.omega_0;
    m["omega_1"] = run.derived.omega_1;
    m["lambda_1"] = run.derived.lambda_1;
    m["t_e"] = run.t_e;
    m["truncation_n_max"] = run.state.cutoff();
    m["achieved_norm"] = std::sqrt(run.state.norm_squared());
    m["mode_a_residual_population"] = run.mode_a_residual;
    m["beta"] = complex_json(run.beta);
    m["kerr_phase_over_pi"] = config.model.u_ab * run.t_e / kPi;

    const auto rp = detect_rational_phase(config.model.u_ab, run.t_e, config.cat.rational_tol,
                                          config.cat.max_denominator);
    if (!rp) {
        m["status"] = "no rational phase within tolerance: the GCS is not a finite cat superposition";
        return out;
    }
    const GcsState gcs{run.beta, config.model.u_ab * run.t_e, run.gcs};
    const auto dec = decompose(gcs, *rp);
    const auto rebuilt = cat_reconstruct(dec, gcs.cutoff());
    m["status"] = "ok";
    m["r"] = rp->r;
    m["s"] = rp->s;
    m["l"] = dec.l;
    auto& coeffs = m["coefficients"] = nlohmann::ordered_json::array();
    for (const auto& a : dec.coeffs) coeffs.push_back(complex_json(a));
    m["reconstruction_fidelity"] = fidelity(run.gcs, rebuilt);
    return out;
}

Output cmd_husimi(const RunConfig& config) {
    const auto& h = config.husimi;
    std::vector<complex> amplitudes;
    nlohmann::ordered_json source_meta;
    if (h.source == "cat") {
        const auto run = run_cat_pipeline(config.model, config.cat, config.tail_tol);
        amplitudes = run.gcs;
        source_meta = {{"t_e", run.t_e}, {"n_mean", run.pair.n_mean()}, {"beta", complex_json(run.beta)}};
    } else if (h.source == "coherent") {
        amplitudes = make_gcs(h.amplitude, 0.0, config.tail_tol).amplitudes;
        source_meta = {{"amplitude", complex_json(h.amplitude)}};
    } else if (h.source == "vacuum") {
        amplitudes = {complex{1.0, 0.0}};
    } else {
        const auto d = derive_params(config.model, h.n_total);
        const auto g = gcs_from_vacuum_start(h.n_total, d, config.model, h.k, config.tail_tol);
        amplitudes = g.amplitudes;
        source_meta = {{"n_total", h.n_total}, {"k", h.k}, {"gamma", complex_json(g.gamma)}, {"kerr", g.kerr}};
    }
    const int need = required_cutoff(h.grid);
    const auto rho = SingleModeDensity::pure(amplitudes);
    const auto padded = rho.padded(std::max(need, rho.cutoff()));
    const auto grid = husimi(padded, h.grid);

    Output out;
    out.name = "husimi";
    out.table = Table{{"re", "im", "q"}, {}};
    out.table->rows.reserve(grid.values.size());
    for (int j = 0; j < h.grid.resolution; ++j)
        for (int i = 0; i < h.grid.resolution; ++i) out.table->rows.push_back({grid.re_at(i), grid.im_at(j), grid.at(i, j)});
    auto& m = out.meta;
    m["command"] = "husimi";
    m["source"] = h.source;
    m["source_details"] = source_meta;
    m["state_cutoff"] = rho.cutoff();
    m["achieved_norm"] = std::sqrt(rho.trace());
    m["evaluation_cutoff"] = padded.cutoff();
    m["window"] = {h.grid.re_min, h.grid.re_max, h.grid.im_min, h.grid.im_max};
    m["resolution"] = h.grid.resolution;
    m["max_q"] = grid.max_value();
    m["threshold"] = h.threshold;
    m["packet_count"] = count_packets(grid, h.threshold);
    m["riemann_integral"] = grid.integral();
    return out;
}

Output cmd_decohere(const RunConfig& config) {
    const auto& dc = config.decohere;
    if (dc.kappa_over_u.empty()) throw ConfigError("decohere.kappa_over_u: at least one rate is required");
    if (dc.n_total.empty()) throw ConfigError("decohere.n_total: at least one N is required");
    if (!(config.model.u_aa > 0.0)) throw ConfigError("model.u_aa must be > 0: the time axis is U_aa t");
    const std::size_t count = std::max(dc.kappa_over_u.size(), dc.n_total.size());
    const auto ut = config.time.points(); // U_aa t, whatever the configured unit

    Output out;
    out.name = "decohere";
    out.table = Table{{"u_aa_t"}, std::vector<std::vector<double>>(ut.size())};
    for (std::size_t i = 0; i < ut.size(); ++i) out.table->rows[i].push_back(ut[i]);
    out.meta["command"] = "decohere";
    out.meta["model"] = model_json(config.model);
    out.meta["initial"] = dc.initial;
    auto& cols = out.meta["columns"] = nlohmann::ordered_json::array();

    std::vector<double> seconds(ut.size());
    for (std::size_t i = 0; i < ut.size(); ++i) seconds[i] = ut[i] / config.model.u_aa;
    for (std::size_t c = 0; c < count; ++c) {
        const double kou = dc.kappa_over_u[dc.kappa_over_u.size() == 1 ? 0 : c];
        const double n = dc.n_total[dc.n_total.size() == 1 ? 0 : c];
        std::vector<complex> amps;
        if (dc.initial == "gcs") {
            const auto d = derive_params(config.model, n);
            amps = gcs_from_vacuum_start(n, d, config.model, 1, config.tail_tol).amplitudes;
        } else {
            amps = make_gcs(complex{std::sqrt(n), 0.0}, 0.0, config.tail_tol).amplitudes;
        }
        const auto rho0 = SingleModeDensity::pure(amps).normalized();
        const DampingParams dp{config.model.omega_a, config.model.u_aa, kou * config.model.u_aa};
        const auto series = purity_series(rho0, dp, seconds);
        const std::string name = fmt::format("purity_kappa{:g}_N{:g}", kou, n);
        out.table->columns.push_back(name);
        for (std::size_t i = 0; i < series.size(); ++i) out.table->rows[i].push_back(series[i].second);
        cols.push_back({{"column", name}, {"kappa_over_u_aa", kou}, {"n_total", n}, {"kappa", dp.kappa},
                        {"truncation_n_max", rho0.cutoff()}});
    }
    return out;
}

Output cmd_purify(const RunConfig& config) {
    const auto& po = config.purify;
    const auto& p = config.model;
    Output out;
    out.name = "purify";
    auto& m = out.meta;
    m["command"] = "purify";
    m["model"] = model_json(p);
    m["vanishing_mode"] = po.vanishing == Mode::a ? "a" : "b";
    m["alpha_known"] = complex_json(po.alpha_known);

    // Mean number depends on the partner amplitude through w1; iterate.
    double n_mean = std::norm(po.alpha_known);
    DerivedParams d = derive_params(p, n_mean);
    if (!(d.lambda_1 > 0.0) || !(p.lambda > 0.0)) {
        m["status"] = "no solution: lambda_1 = 0 or lambda = 0 (modes decoupled)";
        return out;
    }
    for (int iter = 0; iter < 100; ++iter) {
        d = derive_params(p, n_mean);
        const double t0 = purification_times(d, PurificationKind::quarter, 1).front();
        const complex partner = purification_initial_condition(po.alpha_known, po.vanishing, d, p, t0);
        const double next = std::norm(po.alpha_known) + std::norm(partner);
        if (std::abs(next - n_mean) <= 1e-14 * std::max(1.0, n_mean)) break;
        n_mean = next;
    }
    d = derive_params(p, n_mean);
    m["status"] = "ok";
    m["n_mean"] = n_mean;
    m["omega_0"] = d.omega_0;
    m["omega_1"] = d.omega_1;
    m["lambda_1"] = d.lambda_1;
    m["quarter_times"] = purification_times(d, PurificationKind::quarter, po.count);
    m["full_times"] = purification_times(d, PurificationKind::full, po.count);
    auto& partners = m["partners"] = nlohmann::ordered_json::array();
    for (double t : purification_times(d, PurificationKind::quarter, po.count)) {
        const complex partner = purification_initial_condition(po.alpha_known, po.vanishing, d, p, t);
        partners.push_back({{"t", t}, {"alpha_partner", complex_json(partner)}});
    }
    if (p.u_ab > 0.0) m["kerr_period"] = kPi / p.u_ab;
    if (config.formation) {
        const auto& f = *config.formation;
        m["formation"] = {{"trap_omega", f.trap_omega},
                          {"mass", f.mass},
                          {"rabi_frequency", f.rabi_frequency},
                          {"lambda", 0.5 * f.rabi_frequency},
                          {"t_estimate", estimate_formation_time(f.trap_omega, f.mass, f.rabi_frequency)}};
    }
    return out;
}

} // namespace tmbec::runner
