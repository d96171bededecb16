#include "tmbec/runner/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace tmbec::runner {

namespace pt = boost::property_tree;

namespace {

class Reader {
public:
    Reader(const pt::ptree& tree, std::string origin) : tree_(tree), origin_(std::move(origin)) {}

    bool has_section(const std::string& s) const { return tree_.get_child_optional(s).has_value(); }
    bool has(const std::string& key) const { return tree_.get_optional<std::string>(key).has_value(); }

    [[noreturn]] void fail(const std::string& key, const std::string& what) const {
        throw ConfigError(origin_ + ": " + key + ": " + what);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        auto v = tree_.get_optional<std::string>(key);
        return v ? boost::trim_copy(*v) : fallback;
    }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) return fallback;
        return parse_number(key, text(key, ""));
    }

    double required_number(const std::string& key) const {
        if (!has(key)) fail(key, "missing required value");
        return parse_number(key, text(key, ""));
    }

    long integer(const std::string& key, long fallback) const {
        if (!has(key)) return fallback;
        const double v = parse_number(key, text(key, ""));
        if (v != std::floor(v)) fail(key, "expected an integer");
        return static_cast<long>(v);
    }

    std::vector<double> list(const std::string& key) const {
        std::vector<double> out;
        if (!has(key)) return out;
        std::vector<std::string> parts;
        const std::string raw = text(key, "");
        boost::split(parts, raw, boost::is_any_of(","));
        for (auto& part : parts) out.push_back(parse_number(key, boost::trim_copy(part)));
        return out;
    }

private:
    double parse_number(const std::string& key, const std::string& raw) const {
        std::istringstream in(raw);
        in.imbue(std::locale::classic());
        double v = 0.0;
        in >> v;
        if (in.fail() || !in.eof()) {
            // allow "pi" multiples such as 2pi or 0.5*pi for angles
            if (auto p = parse_pi_multiple(raw)) return *p;
            fail(key, "cannot parse number '" + raw + "'");
        }
        if (!std::isfinite(v)) fail(key, "value must be finite");
        return v;
    }

    static std::optional<double> parse_pi_multiple(std::string raw) {
        boost::erase_all(raw, " ");
        boost::erase_all(raw, "*");
        if (!boost::ends_with(raw, "pi")) return std::nullopt;
        raw.resize(raw.size() - 2);
        if (raw.empty()) return std::numbers::pi;
        std::istringstream in(raw);
        in.imbue(std::locale::classic());
        double c = 0.0;
        in >> c;
        if (in.fail() || !in.eof()) return std::nullopt;
        return c * std::numbers::pi;
    }

    const pt::ptree& tree_;
    std::string origin_;
};

complex read_complex(const Reader& r, const std::string& prefix, complex fallback) {
    return {r.number(prefix + "_re", fallback.real()), r.number(prefix + "_im", fallback.imag())};
}

Mode read_mode(const Reader& r, const std::string& key) {
    const auto v = boost::to_lower_copy(r.text(key, "a"));
    if (v == "a") return Mode::a;
    if (v == "b") return Mode::b;
    r.fail(key, "expected 'a' or 'b'");
}

} // namespace

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) out[i] = steps == 1 ? start : start + (stop - start) * i / (steps - 1);
    return out;
}

double TimeGrid::seconds_per_unit(const ModelParams& p) const {
    switch (unit) {
    case TimeUnit::seconds: return 1.0;
    case TimeUnit::inverse_lambda:
        if (!(p.lambda > 0.0)) throw ConfigError("time.unit = inverse_lambda needs lambda > 0");
        return 1.0 / p.lambda;
    case TimeUnit::inverse_u_aa:
        if (!(p.u_aa > 0.0)) throw ConfigError("time.unit = inverse_u_aa needs u_aa > 0");
        return 1.0 / p.u_aa;
    }
    return 1.0;
}

std::string engine_name(Engine e) {
    switch (e) {
    case Engine::automatic: return "auto";
    case Engine::numeric: return "numeric";
    case Engine::analytic: return "analytic";
    }
    return "auto";
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    pt::ptree tree;
    try {
        std::istringstream in(text);
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(origin + ":" + std::to_string(e.line()) + ": " + e.message());
    }
    const Reader r(tree, origin);
    RunConfig c;

    c.model.omega_a = r.number("model.omega_a", 0.0);
    c.model.omega_b = r.number("model.omega_b", 0.0);
    c.model.u_aa = r.number("model.u_aa", 0.0);
    c.model.u_bb = r.number("model.u_bb", 0.0);
    c.model.u_ab = r.number("model.u_ab", 0.0);
    c.model.lambda = r.number("model.lambda", 0.0);
    try {
        c.model.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": model: " + e.what());
    }

    if (r.has_section("state")) {
        if (r.has("state.n_total")) {
            const double n = r.required_number("state.n_total");
            if (n < 0.0) r.fail("state.n_total", "must be >= 0");
            const double phi = r.number("state.delta_phi", 0.0);
            const double amp = std::sqrt(0.5 * n);
            c.state = CoherentPair(std::polar(amp, phi), complex{amp, 0.0});
        } else {
            c.state = CoherentPair(read_complex(r, "state.alpha_a", {}), read_complex(r, "state.alpha_b", {}));
        }
    }

    c.time.start = r.number("time.start", 0.0);
    c.time.stop = r.number("time.stop", c.time.start);
    c.time.steps = static_cast<int>(r.integer("time.steps", 1));
    if (c.time.steps < 1) r.fail("time.steps", "must be >= 1");
    if (c.time.stop < c.time.start) r.fail("time.stop", "must be >= time.start");
    const auto unit = r.text("time.unit", "seconds");
    if (unit == "seconds") c.time.unit = TimeUnit::seconds;
    else if (unit == "inverse_lambda") c.time.unit = TimeUnit::inverse_lambda;
    else if (unit == "inverse_u_aa") c.time.unit = TimeUnit::inverse_u_aa;
    else r.fail("time.unit", "expected seconds, inverse_lambda or inverse_u_aa");

    c.tail_tol = r.number("truncation.tail_tol", kDefaultTailTol);
    if (!(c.tail_tol > 0.0 && c.tail_tol < 1.0)) r.fail("truncation.tail_tol", "must lie in (0, 1)");

    const auto engine = r.text("evolve.engine", "auto");
    if (engine == "auto") c.engine = Engine::automatic;
    else if (engine == "numeric") c.engine = Engine::numeric;
    else if (engine == "analytic") c.engine = Engine::analytic;
    else r.fail("evolve.engine", "expected auto, numeric or analytic");
    c.u_ab_percent = r.list("evolve.u_ab_percent");
    for (double v : c.u_ab_percent)
        if (v < 0.0 || v > 100.0) r.fail("evolve.u_ab_percent", "percentages must lie in [0, 100]");

    c.cat.n_total = r.number("cat.n_total", c.cat.n_total);
    if (c.cat.n_total < 0.0) r.fail("cat.n_total", "must be >= 0");
    if (r.has("cat.alpha_a_re") || r.has("cat.alpha_a_im")) c.cat.alpha_a = read_complex(r, "cat.alpha_a", {});
    c.cat.quarter_index = static_cast<int>(r.integer("cat.quarter_index", 0));
    if (c.cat.quarter_index < 0) r.fail("cat.quarter_index", "must be >= 0");
    c.cat.rational_tol = r.number("cat.rational_tol", c.cat.rational_tol);
    if (c.cat.rational_tol < 0.0) r.fail("cat.rational_tol", "must be >= 0");
    c.cat.max_denominator = r.integer("cat.max_denominator", c.cat.max_denominator);
    if (c.cat.max_denominator < 1) r.fail("cat.max_denominator", "must be >= 1");

    c.husimi.source = r.text("husimi.source", c.husimi.source);
    if (c.husimi.source != "cat" && c.husimi.source != "coherent" && c.husimi.source != "vacuum" &&
        c.husimi.source != "gcs_vacuum_start")
        r.fail("husimi.source", "expected cat, coherent, vacuum or gcs_vacuum_start");
    c.husimi.grid.re_min = r.number("husimi.re_min", c.husimi.grid.re_min);
    c.husimi.grid.re_max = r.number("husimi.re_max", c.husimi.grid.re_max);
    c.husimi.grid.im_min = r.number("husimi.im_min", c.husimi.grid.im_min);
    c.husimi.grid.im_max = r.number("husimi.im_max", c.husimi.grid.im_max);
    c.husimi.grid.resolution = static_cast<int>(r.integer("husimi.resolution", c.husimi.grid.resolution));
    if (c.husimi.grid.resolution < 2) r.fail("husimi.resolution", "must be >= 2");
    if (!(c.husimi.grid.re_max > c.husimi.grid.re_min)) r.fail("husimi.re_max", "must exceed re_min");
    if (!(c.husimi.grid.im_max > c.husimi.grid.im_min)) r.fail("husimi.im_max", "must exceed im_min");
    c.husimi.threshold = r.number("husimi.threshold", c.husimi.threshold);
    if (!(c.husimi.threshold > 0.0 && c.husimi.threshold < 1.0)) r.fail("husimi.threshold", "must lie in (0, 1)");
    c.husimi.amplitude = read_complex(r, "husimi.amplitude", c.husimi.amplitude);
    c.husimi.n_total = r.number("husimi.n_total", c.husimi.n_total);
    c.husimi.k = static_cast<int>(r.integer("husimi.k", c.husimi.k));
    if (c.husimi.k < 1) r.fail("husimi.k", "must be >= 1");

    c.decohere.kappa_over_u = r.list("decohere.kappa_over_u");
    c.decohere.n_total = r.list("decohere.n_total");
    c.decohere.initial = r.text("decohere.initial", c.decohere.initial);
    if (c.decohere.initial != "gcs" && c.decohere.initial != "coherent")
        r.fail("decohere.initial", "expected gcs or coherent");
    for (double k : c.decohere.kappa_over_u)
        if (k < 0.0) r.fail("decohere.kappa_over_u", "rates must be >= 0");
    for (double n : c.decohere.n_total)
        if (n < 0.0) r.fail("decohere.n_total", "must be >= 0");
    if (c.decohere.n_total.size() > 1 && c.decohere.kappa_over_u.size() > 1 &&
        c.decohere.n_total.size() != c.decohere.kappa_over_u.size())
        r.fail("decohere.n_total", "list length must be 1 or match kappa_over_u");

    c.purify.alpha_known = read_complex(r, "purify.alpha", c.purify.alpha_known);
    c.purify.vanishing = read_mode(r, "purify.vanishing");
    c.purify.count = static_cast<int>(r.integer("purify.count", c.purify.count));
    if (c.purify.count < 1) r.fail("purify.count", "must be >= 1");

    if (r.has_section("formation")) {
        FormationOptions f;
        f.trap_omega = r.required_number("formation.trap_omega");
        f.mass = r.required_number("formation.mass");
        f.rabi_frequency = r.required_number("formation.rabi_frequency");
        if (!(f.trap_omega > 0.0 && f.mass > 0.0 && f.rabi_frequency > 0.0))
            r.fail("formation", "trap_omega, mass and rabi_frequency must be positive");
        c.formation = f;
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string() + ": cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

} // namespace tmbec::runner
