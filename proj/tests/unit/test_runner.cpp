#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "tmbec/runner/app.hpp"
#include "tmbec/runner/config.hpp"
#include "tmbec/runner/scenarios.hpp"

using namespace tmbec;
using namespace tmbec::runner;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("tmbec_runner_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& body) {
    std::ofstream out(p, std::ios::binary);
    out << body;
}

int run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " \"" TMBEC_CLI_PATH "\" " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string config_error(const std::string& text) {
    try {
        parse_config(text, "t.ini");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

const char* kEqualScattering = R"(
[model]
u_aa = 2
u_bb = 2
u_ab = 2
lambda = 1

[state]
n_total = 8
delta_phi = 0.5pi

[time]
start = 0
stop = 3
steps = 7
unit = inverse_lambda
)";

} // namespace

TEST_CASE("config parsing") {
    const auto c = parse_config(kEqualScattering);
    CHECK(c.model.u_ab == 2.0);
    REQUIRE(c.state.has_value());
    CHECK(std::abs(c.state->alpha_a() - std::polar(2.0, std::numbers::pi / 2)) < 1e-15);
    CHECK(c.state->alpha_b() == complex(2.0, 0.0));
    CHECK(c.time.points().size() == 7);
    CHECK(c.time.points().back() == 3.0);
    CHECK(c.time.seconds_per_unit(c.model) == 1.0);
    CHECK(c.engine == Engine::automatic);
    CHECK(c.tail_tol == kDefaultTailTol);
    CHECK(c.cat.rational_tol == 1e-9);
    CHECK(c.cat.max_denominator == 64);

    const auto explicit_amps = parse_config("[state]\nalpha_a_re = 1\nalpha_a_im = -2\nalpha_b_im = 3\n");
    CHECK(explicit_amps.state->alpha_a() == complex(1, -2));
    CHECK(explicit_amps.state->alpha_b() == complex(0, 3));
    CHECK_FALSE(parse_config("").state.has_value());
    CHECK(parse_config("[time]\nstart = 2\n").time.points() == std::vector<double>{2.0});
    const auto lists = parse_config("[evolve]\nu_ab_percent = 100, 90 ,0\nengine = numeric\n");
    CHECK(lists.u_ab_percent == std::vector<double>{100, 90, 0});
    CHECK(lists.engine == Engine::numeric);
}

TEST_CASE("config errors name the line or key") {
    CHECK(config_error("[model\nlambda = 1\n").find("t.ini:1") != std::string::npos);
    CHECK(config_error("[model]\nlambda = one\n").find("model.lambda") != std::string::npos);
    CHECK(config_error("[model]\nlambda = -1\n").find("lambda") != std::string::npos);
    CHECK(config_error("[time]\nsteps = 0\n").find("time.steps") != std::string::npos);
    CHECK(config_error("[time]\nstart = 2\nstop = 1\n").find("time.stop") != std::string::npos);
    CHECK(config_error("[time]\nsteps = 2.5\n").find("time.steps") != std::string::npos);
    CHECK(config_error("[time]\nunit = hours\n").find("time.unit") != std::string::npos);
    CHECK(config_error("[evolve]\nu_ab_percent = 120\n").find("u_ab_percent") != std::string::npos);
    CHECK(config_error("[evolve]\nengine = fast\n").find("evolve.engine") != std::string::npos);
    CHECK(config_error("[truncation]\ntail_tol = 0\n").find("tail_tol") != std::string::npos);
    CHECK(config_error("[husimi]\nthreshold = 1.5\n").find("husimi.threshold") != std::string::npos);
    CHECK(config_error("[husimi]\nre_min = 2\nre_max = 1\n").find("husimi.re_max") != std::string::npos);
    CHECK(config_error("[decohere]\nkappa_over_u = -1\n").find("kappa_over_u") != std::string::npos);
    CHECK(config_error("[purify]\nvanishing = c\n").find("purify.vanishing") != std::string::npos);
    CHECK(config_error("[formation]\ntrap_omega = 1\n").find("formation.mass") != std::string::npos);
    CHECK(config_error("[state]\nn_total = -3\n").find("state.n_total") != std::string::npos);
}

TEST_CASE("formatting and hashing") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(format_double(-2.0) == "-2");
    CHECK(to_csv({{"a", "b"}, {{1.0, 0.5}, {2.0, std::nan("")}}}) == "a,b\n1,0.5\n2,nan\n");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("evolve scenario") {
    auto c = parse_config(kEqualScattering);
    const auto out = cmd_evolve(c);
    REQUIRE(out.table.has_value());
    CHECK(out.table->columns ==
          std::vector<std::string>{"series", "t", "nb_frac", "var_nb", "var_b", "mandel_q", "linear_entropy"});
    CHECK(out.table->rows.size() == 7);
    CHECK(out.meta["series"][0]["engine"] == "analytic");
    CHECK(out.meta["truncation_n_max"].get<int>() > 8);

    // numeric override reproduces the closed form
    c.engine = Engine::numeric;
    const auto num = cmd_evolve(c);
    CHECK(num.meta["series"][0]["engine"] == "numeric");
    for (std::size_t i = 0; i < 7; ++i)
        for (std::size_t k = 2; k < 7; ++k) CHECK(std::abs(num.table->rows[i][k] - out.table->rows[i][k]) < 1e-8);
    for (const auto& row : out.table->rows) {
        const double t = row[1];
        CHECK(row[2] * 8.0 == Approx(4.0 * (1 - std::sin(2 * t))).epsilon(1e-8));
    }

    // percent series switch to numeric when U_ab < U
    c.engine = Engine::automatic;
    c.u_ab_percent = {100, 50};
    const auto two = cmd_evolve(c);
    CHECK(two.table->rows.size() == 14);
    CHECK(two.meta["series"][0]["engine"] == "analytic");
    CHECK(two.meta["series"][1]["engine"] == "numeric");
    CHECK(two.meta["series"][1]["u_ab"].get<double>() == 1.0);
    CHECK(two.table->rows[7][0] == 50.0);

    c.engine = Engine::analytic;
    CHECK_THROWS_AS(cmd_evolve(c), std::invalid_argument);
    c.state.reset();
    CHECK_THROWS_AS(cmd_evolve(c), ConfigError);
}

TEST_CASE("zero coupling gives constant series") {
    auto c = parse_config("[state]\nalpha_a_re = 1\nalpha_b_re = 2\n[time]\nstop = 5\nsteps = 4\n");
    const auto out = cmd_evolve(c);
    for (const auto& row : out.table->rows) {
        CHECK(row[2] == out.table->rows[0][2]);
        CHECK(row[6] == out.table->rows[0][6]);
    }
}

TEST_CASE("cat scenario") {
    const std::string base = "[model]\nu_aa = {0}\nu_bb = {0}\nu_ab = {0}\nlambda = 1\n";
    auto make = [&](const std::string& u) {
        std::string s = base;
        for (std::size_t pos; (pos = s.find("{0}")) != std::string::npos;) s.replace(pos, 3, u);
        return parse_config(s);
    };
    const auto fig = cmd_cat(make("2.6666666666666667"));
    CHECK(fig.meta["status"] == "ok");
    CHECK(fig.meta["l"] == 3);
    CHECK(fig.meta["r"] == 2);
    CHECK(fig.meta["s"] == 3);
    CHECK(fig.meta["reconstruction_fidelity"].get<double>() >= 1 - 1e-10);
    CHECK(fig.meta["mode_a_residual_population"].get<double>() <= 1e-10);
    CHECK(fig.meta["coefficients"].size() == 3);

    const auto trivial = cmd_cat(make("0"));
    CHECK(trivial.meta["l"] == 1);

    const auto nine = cmd_cat(make("0.88888888888888889"));
    CHECK(nine.meta["l"] == 9);

    const auto irrational = cmd_cat(make("1.4142135623730951"));
    CHECK(irrational.meta.contains("status"));
    CHECK(irrational.meta["status"] != "ok");
    CHECK_FALSE(irrational.meta.contains("l"));

    CHECK_THROWS_AS(cmd_cat(parse_config("[model]\nu_aa = 1\nu_bb = 1\nu_ab = 0.5\nlambda = 1\n")), std::invalid_argument);
}

TEST_CASE("husimi scenario") {
    const auto coh = cmd_husimi(parse_config("[husimi]\nsource = coherent\namplitude_re = 2\nresolution = 81\n"));
    CHECK(coh.meta["packet_count"] == 1);
    CHECK(coh.table->columns == std::vector<std::string>{"re", "im", "q"});
    CHECK(coh.table->rows.size() == 81 * 81);
    const auto vac = cmd_husimi(parse_config("[husimi]\nsource = vacuum\nresolution = 41\n"));
    CHECK(vac.meta["packet_count"] == 1);
    CHECK(vac.meta["max_q"].get<double>() == Approx(1.0 / std::numbers::pi));
    const auto gvs = cmd_husimi(parse_config(
        "[model]\nu_aa = 0.5\nu_bb = 0.5\nu_ab = 0.5\nlambda = 1\n[husimi]\nsource = gcs_vacuum_start\nn_total = 16\nresolution = 81\n"));
    CHECK(gvs.meta["riemann_integral"].get<double>() == Approx(1.0).epsilon(1e-3));
}

TEST_CASE("decohere scenario") {
    const std::string model = "[model]\nu_aa = 1\nu_bb = 1\nu_ab = 1\nlambda = 1\n";
    const auto flat = cmd_decohere(parse_config(model + "[time]\nstop = 1\nsteps = 5\n[decohere]\nkappa_over_u = 0\nn_total = 20\n"));
    for (const auto& row : flat.table->rows) CHECK(row[1] == flat.table->rows[0][1]);
    CHECK(std::abs(flat.table->rows[0][1] - 1.0) <= 1e-12);
    const auto single = cmd_decohere(parse_config(model + "[decohere]\nkappa_over_u = 0.01, 0.1\nn_total = 50\n"));
    CHECK(single.table->rows.size() == 1);
    CHECK(single.table->columns.size() == 3);
    for (std::size_t k = 1; k < 3; ++k) CHECK(single.table->rows[0][k] == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(cmd_decohere(parse_config(model)), ConfigError);
    CHECK_THROWS_AS(cmd_decohere(parse_config("[decohere]\nkappa_over_u = 0.1\nn_total = 5\n")), ConfigError);
}

TEST_CASE("purify scenario") {
    const auto w1zero = cmd_purify(parse_config("[model]\nlambda = 2\n[purify]\nalpha_re = 1\nalpha_im = 0.5\n"));
    CHECK(w1zero.meta["status"] == "ok");
    const auto partner = w1zero.meta["partners"][0]["alpha_partner"];
    CHECK(partner[0].get<double>() == Approx(-0.5));
    CHECK(partner[1].get<double>() == Approx(1.0));

    const auto pi_rate = cmd_purify(parse_config("[model]\nlambda = 3.141592653589793\n[purify]\ncount = 2\n"));
    CHECK(pi_rate.meta["quarter_times"][0].get<double>() == Approx(0.25));
    CHECK(pi_rate.meta["quarter_times"][1].get<double>() == Approx(0.75));

    const auto none = cmd_purify(parse_config("[model]\nlambda = 0\n"));
    CHECK(none.meta["status"] != "ok");
    CHECK_FALSE(none.meta.contains("quarter_times"));
}

TEST_CASE("cli: determinism, metadata and exit codes") {
    const auto dir = scratch("cli");
    const auto cfg = dir / "run.ini";
    spit(cfg, kEqualScattering);
    REQUIRE(run_cli("evolve \"" + cfg.string() + "\" --out \"" + (dir / "a").string() + "\"") == kExitOk);
    REQUIRE(run_cli("evolve \"" + cfg.string() + "\" --out \"" + (dir / "b").string() + "\"") == kExitOk);
    const auto a = slurp(dir / "a" / "evolve.csv");
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(dir / "b" / "evolve.csv"));
    CHECK(slurp(dir / "a" / "evolve.meta.json") == slurp(dir / "b" / "evolve.meta.json"));
    CHECK(a.find('\r') == std::string::npos);
    const auto meta = nlohmann::json::parse(slurp(dir / "a" / "evolve.meta.json"));
    CHECK(meta["config_sha256"] == sha256_hex(kEqualScattering));
    for (const char* key : {"truncation_n_max", "achieved_norm", "series"}) CHECK(meta.contains(key));

    // OUT_DIR fallback
    REQUIRE(run_cli("purify \"" + cfg.string() + "\"", "OUT_DIR=\"" + (dir / "env").string() + "\"") == kExitOk);
    CHECK(fs::exists(dir / "env" / "purify.json"));

    // exit codes
    spit(dir / "bad.ini", "[model]\nlambda = x\n");
    CHECK(run_cli("evolve \"" + (dir / "bad.ini").string() + "\" --out \"" + dir.string() + "\"") == kExitConfig);
    CHECK(run_cli("evolve \"" + (dir / "missing.ini").string() + "\"") == kExitConfig);
    spit(dir / "huge.ini", "[state]\nn_total = 5000\n");
    CHECK(run_cli("evolve \"" + (dir / "huge.ini").string() + "\" --out \"" + dir.string() + "\"") == kExitNumerical);
    CHECK(run_cli("") == kExitUsage);
    CHECK(run_cli("frobnicate x.ini") == kExitUsage);
    CHECK(run_cli("evolve") == kExitUsage);
    fs::remove_all(dir);
}

TEST_CASE("shipped configs parse") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(TMBEC_CONFIG_DIR)) {
        if (entry.path().extension() != ".ini") continue;
        CHECK_NOTHROW(load_config(entry.path()));
        ++count;
    }
    CHECK(count >= 8);
}
