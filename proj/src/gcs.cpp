#include "tmbec/gcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "tmbec/errors.hpp"
#include "tmbec/log_factorial.hpp"

namespace tmbec {

namespace {

constexpr double kPi = std::numbers::pi;

struct Fraction {
    long num;
    long den;
};

// Fraction with the smallest denominator in [lo, hi], 0 < lo <= hi, found by
// expanding both ends as continued fractions until they split.
std::optional<Fraction> simplest_between(double lo, double hi, long max_den, int depth = 0) {
    if (depth > 64) return std::nullopt;
    const double fl = std::floor(lo);
    if (lo == fl) return Fraction{static_cast<long>(fl), 1};
    if (fl + 1.0 <= hi) return Fraction{static_cast<long>(fl) + 1, 1};
    // fl < lo <= hi < fl + 1: recurse on the reciprocals of the fractional parts.
    const auto inner = simplest_between(1.0 / (hi - fl), 1.0 / (lo - fl), max_den, depth + 1);
    if (!inner) return std::nullopt;
    if (inner->num > max_den) return std::nullopt;
    const long a = static_cast<long>(fl);
    return Fraction{a * inner->num + inner->den, inner->num};
}

} // namespace

RationalPhase RationalPhase::make(long r, long s) {
    if (s < 1) throw std::invalid_argument("denominator must be >= 1");
    if (std::gcd(r, s) != 1) throw std::invalid_argument("r and s must be coprime");
    return RationalPhase{r, s};
}

GcsState make_gcs_with_cutoff(complex gamma, double kerr, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    GcsState g{gamma, kerr, std::vector<complex>(static_cast<std::size_t>(cutoff) + 1)};
    for (int n = 0; n <= cutoff; ++n) {
        const double nn = static_cast<double>(n);
        g.amplitudes[n] = coherent_amplitude(gamma, n) * std::polar(1.0, -kerr * nn * nn);
    }
    return g;
}

GcsState make_gcs(complex gamma, double kerr, double tail_tol, int cap) {
    return make_gcs_with_cutoff(gamma, kerr, poisson_cutoff(std::norm(gamma), tail_tol, cap));
}

complex purification_initial_condition(complex alpha_known, Mode vanishing, const DerivedParams& d,
                                       const ModelParams& p, double t_e) {
    if (!(p.lambda > 0.0)) throw std::invalid_argument("lambda = 0: the modes are decoupled");
    const double phase = d.lambda_1 * t_e;
    const double sn = std::sin(phase);
    if (std::abs(sn) < 1e-12)
        throw NumericalError("sin(lambda_1 t_e) = 0: no finite initial amplitude empties the mode");
    const double cot = std::cos(phase) / sn;
    const complex i1{0.0, 1.0};
    if (vanishing == Mode::a) return alpha_known * (d.omega_1 + i1 * d.lambda_1 * cot) / p.lambda;
    return alpha_known * (-d.omega_1 + i1 * d.lambda_1 * cot) / p.lambda;
}

std::vector<double> purification_times(const DerivedParams& d, PurificationKind kind, int count) {
    if (!(d.lambda_1 > 0.0)) throw std::invalid_argument("lambda_1 = 0: no purification times");
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        if (kind == PurificationKind::quarter)
            out.push_back((2.0 * i + 1.0) * kPi / (4.0 * d.lambda_1));
        else
            out.push_back((i + 1.0) * kPi / d.lambda_1);
    }
    return out;
}

GcsState gcs_from_vacuum_start(double n_total, const DerivedParams& d, const ModelParams& p, int k,
                               double tail_tol) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(d.lambda_1 > 0.0)) throw std::invalid_argument("lambda_1 = 0: the population never returns");
    if (!(n_total >= 0.0)) throw std::invalid_argument("N must be >= 0");
    // alpha(t_k) = cos(k pi) sqrt(N); the Kerr factor contributes the w0 phase.
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const complex gamma = sign * std::sqrt(n_total) * std::polar(1.0, -k * kPi * d.omega_0 / d.lambda_1);
    const double kerr = k * kPi * p.u_ab / d.lambda_1;
    return make_gcs(gamma, kerr, tail_tol);
}

std::optional<RationalPhase> detect_rational_phase(double u_ab, double t_e, double tol, long max_denominator) {
    if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
    if (!(tol >= 0.0)) throw std::invalid_argument("tol must be >= 0");
    const double x = u_ab * t_e / kPi;
    if (!std::isfinite(x)) return std::nullopt;
    double lo = x - tol;
    double hi = x + tol;
    if (lo <= 0.0 && hi >= 0.0) return RationalPhase{0, 1};
    const bool negative = hi < 0.0;
    if (negative) {
        lo = -lo;
        hi = -hi;
        std::swap(lo, hi);
    }
    const auto f = simplest_between(lo, hi, max_denominator);
    if (!f || f->den > max_denominator) return std::nullopt;
    const long r = negative ? -f->num : f->num;
    const long g = std::gcd(r, f->den);
    return RationalPhase{r / g, f->den / g};
}

int cat_size(const RationalPhase& rp) {
    const bool r_odd = (rp.r % 2) != 0;
    const bool s_odd = (rp.s % 2) != 0;
    return static_cast<int>((r_odd && s_odd) ? 2 * rp.s : rp.s);
}

std::vector<complex> cat_coefficients(const RationalPhase& rp) {
    const int l = cat_size(rp);
    std::vector<complex> a(static_cast<std::size_t>(l));
    for (int m = 0; m < l; ++m) {
        complex sum{0.0, 0.0};
        for (int k = 0; k < l; ++k) {
            // Reduce the quadratic phase mod 2 pi exactly: pi r k^2 / s.
            const long num = (rp.r * static_cast<long>(k) * k) % (2 * rp.s);
            const double phase = -kPi * static_cast<double>(num) / static_cast<double>(rp.s) +
                                 2.0 * kPi * static_cast<double>((static_cast<long>(m) * k) % l) / l;
            sum += std::polar(1.0, phase);
        }
        a[m] = sum / static_cast<double>(l);
    }
    return a;
}

CatDecomposition decompose(const GcsState& gcs, const RationalPhase& rp) {
    return CatDecomposition{cat_size(rp), cat_coefficients(rp), gcs.gamma};
}

std::vector<complex> cat_reconstruct(const CatDecomposition& dec, int cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    if (static_cast<int>(dec.coeffs.size()) != dec.l) throw std::invalid_argument("coefficient count != l");
    const double mean = std::norm(dec.beta);
    if (const double tail = poisson_tail(mean, cutoff); tail > 1e-12)
        throw InsufficientCutoffError("cutoff " + std::to_string(cutoff) + " leaves packet tail " +
                                      std::to_string(tail));
    std::vector<complex> out(static_cast<std::size_t>(cutoff) + 1, complex{0.0, 0.0});
    for (int m = 0; m < dec.l; ++m) {
        const complex center = dec.beta * std::polar(1.0, -2.0 * kPi * m / dec.l);
        for (int n = 0; n <= cutoff; ++n) out[n] += dec.coeffs[m] * coherent_amplitude(center, n);
    }
    return out;
}

std::vector<complex> project_on_vacuum(const TwoModeState& state, Mode vacuum_mode) {
    std::vector<complex> out(static_cast<std::size_t>(state.cutoff()) + 1);
    for (int n = 0; n <= state.cutoff(); ++n)
        out[n] = vacuum_mode == Mode::a ? state.amplitude(0, n) : state.amplitude(n, 0);
    return out;
}

complex inner_product(std::span<const complex> a, std::span<const complex> b) {
    const std::size_t n = std::min(a.size(), b.size());
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double fidelity(std::span<const complex> a, std::span<const complex> b) { return std::norm(inner_product(a, b)); }

} // namespace tmbec
