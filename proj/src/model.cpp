#include "tmbec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "tmbec/errors.hpp"
#include "tmbec/log_factorial.hpp"

namespace tmbec {

namespace {

double closed_form_tolerance(const ModelParams& p) {
    return 1e-12 * std::max({std::abs(p.u_aa), std::abs(p.u_bb), std::abs(p.u_ab), 1.0});
}

} // namespace

void ModelParams::validate() const {
    const std::pair<const char*, double> fields[] = {
        {"omega_a", omega_a}, {"omega_b", omega_b}, {"u_aa", u_aa},
        {"u_bb", u_bb},       {"u_ab", u_ab},       {"lambda", lambda}};
    for (const auto& [name, value] : fields) {
        if (!std::isfinite(value))
            throw std::invalid_argument(std::string("model parameter ") + name + " is not finite");
    }
    if (lambda < 0.0)
        throw std::invalid_argument("lambda must be >= 0 (absorb the sign into the phase convention)");
}

bool ModelParams::analytic_valid() const {
    return std::abs(u_aa + u_bb - 2.0 * u_ab) <= closed_form_tolerance(*this);
}

bool ModelParams::equal_scattering() const {
    const double tol = closed_form_tolerance(*this);
    return std::abs(u_aa - u_ab) <= tol && std::abs(u_bb - u_ab) <= tol;
}

ModelParams ModelParams::scaled(double c) const {
    return {c * omega_a, c * omega_b, c * u_aa, c * u_bb, c * u_ab, c * lambda};
}

DerivedParams derive_params(const ModelParams& p, double n_mean) {
    if (!(n_mean >= 0.0)) throw std::invalid_argument("n_mean must be >= 0");
    DerivedParams d;
    d.n_mean = n_mean;
    d.omega_0 = 0.5 * (p.omega_a + p.omega_b - 2.0 * p.u_ab);
    d.omega_1 = 0.5 * (p.omega_a - p.omega_b + (p.u_aa - p.u_bb) * (n_mean - 1.0));
    d.lambda_1 = std::hypot(p.lambda, d.omega_1);
    return d;
}

complex normalize_phase(complex z) {
    // std::arg lands in [-pi, pi]; fold the -pi edge (including -0.0 and
    // tiny negative imaginary parts that round onto it).
    if (std::arg(z) <= -std::numbers::pi) return std::polar(std::abs(z), std::numbers::pi);
    return z;
}

CoherentPair::CoherentPair(complex alpha_a, complex alpha_b)
    : alpha_a_(normalize_phase(alpha_a)), alpha_b_(normalize_phase(alpha_b)) {
    if (!std::isfinite(alpha_a.real()) || !std::isfinite(alpha_a.imag()) ||
        !std::isfinite(alpha_b.real()) || !std::isfinite(alpha_b.imag()))
        throw std::invalid_argument("coherent amplitudes must be finite");
}

TwoModeState::TwoModeState(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
    amps_.assign(block_offset(cutoff + 1), complex{0.0, 0.0});
}

std::span<complex> TwoModeState::block(int n_total) {
    return std::span<complex>(amps_).subspan(block_offset(n_total), static_cast<std::size_t>(n_total) + 1);
}

std::span<const complex> TwoModeState::block(int n_total) const {
    return std::span<const complex>(amps_).subspan(block_offset(n_total),
                                                   static_cast<std::size_t>(n_total) + 1);
}

complex TwoModeState::amplitude(int n_a, int n_b) const {
    if (n_a < 0 || n_b < 0 || n_a + n_b > cutoff_) return {0.0, 0.0};
    return amps_[block_offset(n_a + n_b) + static_cast<std::size_t>(n_b)];
}

complex& TwoModeState::at(int n_a, int n_b) {
    if (n_a < 0 || n_b < 0 || n_a + n_b > cutoff_) throw std::out_of_range("Fock index outside truncation");
    return amps_[block_offset(n_a + n_b) + static_cast<std::size_t>(n_b)];
}

double TwoModeState::norm_squared() const {
    double s = 0.0;
    for (const auto& c : amps_) s += std::norm(c);
    return s;
}

double TwoModeState::block_weight(int n_total) const {
    double s = 0.0;
    for (const auto& c : block(n_total)) s += std::norm(c);
    return s;
}

double TwoModeState::mean_total() const {
    double s = 0.0;
    for (int n = 0; n <= cutoff_; ++n) s += n * block_weight(n);
    return s;
}

TwoModeState TwoModeState::padded(int cutoff) const {
    if (cutoff < cutoff_) throw std::invalid_argument("padded cutoff must not shrink the state");
    TwoModeState out(cutoff);
    std::copy(amps_.begin(), amps_.end(), out.amps_.begin());
    return out;
}

complex inner_product(const TwoModeState& a, const TwoModeState& b) {
    const std::size_t n = std::min(a.size(), b.size());
    complex s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a.data()[i]) * b.data()[i];
    return s;
}

double fidelity(const TwoModeState& a, const TwoModeState& b) {
    return std::norm(inner_product(a, b));
}

double poisson_tail(double mean, int n_max) {
    if (mean < 0.0) throw std::invalid_argument("Poisson mean must be >= 0");
    if (n_max < 0) return 1.0;
    if (mean == 0.0) return 0.0;
    // Sum from well past the mode back to n_max+1 so small terms are added first.
    const double spread = 40.0 * std::sqrt(mean) + 60.0;
    const int far = std::max(n_max + 1, static_cast<int>(mean + spread));
    double tail = 0.0;
    const double log_mean = std::log(mean);
    for (int n = far; n > n_max; --n) tail += std::exp(-mean + n * log_mean - log_factorial(n));
    return tail;
}

int poisson_cutoff(double mean, double tail_tol, int cap) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) throw std::invalid_argument("tail_tol must lie in (0, 1)");
    if (!(mean >= 0.0) || !std::isfinite(mean)) throw std::invalid_argument("Poisson mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    // Tail is monotone in n_max; bisect over [0, cap].
    if (poisson_tail(mean, cap) >= tail_tol)
        throw ResourceLimitError("mean excitation " + std::to_string(mean) + " needs a cutoff above " +
                                 std::to_string(cap));
    int lo = -1, hi = cap; // tail(lo) >= tol, tail(hi) < tol
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (poisson_tail(mean, mid) < tail_tol)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

TwoModeState coherent_product(const CoherentPair& pair, double tail_tol, int cap) {
    const int n_max = poisson_cutoff(pair.n_mean(), tail_tol, cap);
    TwoModeState state(n_max);
    // Product of the single-mode Fock amplitudes; each factor carries half of
    // the e^{-n_mean/2} normalization.
    std::vector<complex> fa(n_max + 1), fb(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        fa[n] = coherent_amplitude(pair.alpha_a(), n);
        fb[n] = coherent_amplitude(pair.alpha_b(), n);
    }
    for (int total = 0; total <= n_max; ++total) {
        auto blk = state.block(total);
        for (int k = 0; k <= total; ++k) blk[k] = fa[total - k] * fb[k];
    }
    return state;
}

double estimate_formation_time(double trap_omega, double mass, double rabi_frequency) {
    if (!(trap_omega > 0.0) || !(mass > 0.0) || !(rabi_frequency > 0.0))
        throw std::invalid_argument("formation-time inputs must all be positive");
    const double lambda = 0.5 * rabi_frequency;
    return std::numbers::pi / lambda;
}

} // namespace tmbec
