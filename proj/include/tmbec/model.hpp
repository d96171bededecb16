// model.hpp: couplings, derived frequencies and product-coherent initial states
//
// Units: all couplings are angular frequencies (rad/s) with hbar = 1, times
// are seconds.  The Fock space of the two modes is truncated at a total
// excitation N_max and stored block-major: block N holds the N+1 amplitudes
// of |N-k, k>, k = n_b = 0..N.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tmbec {

using complex = std::complex<double>;

inline constexpr double kDefaultTailTol = 1e-12;
inline constexpr int kMaxCutoff = 512;

struct ModelParams {
    double omega_a{0.0};
    double omega_b{0.0};
    double u_aa{0.0};
    double u_bb{0.0};
    double u_ab{0.0};
    double lambda{0.0}; // Josephson coupling, >= 0

    // Throws std::invalid_argument on non-finite fields or lambda < 0.
    void validate() const;

    // U_aa + U_bb == 2 U_ab within 1e-12 relative: the closed-form regime.
    bool analytic_valid() const;

    // U_aa == U_bb == U_ab within the same tolerance.
    bool equal_scattering() const;

    ModelParams scaled(double c) const;
};

struct DerivedParams {
    double omega_0{0.0};
    double omega_1{0.0};
    double lambda_1{0.0}; // effective Rabi frequency sqrt(lambda^2 + omega_1^2)
    double n_mean{0.0};
};

DerivedParams derive_params(const ModelParams& p, double n_mean);

// Two complex coherent amplitudes; phases are normalized into (-pi, pi].
class CoherentPair {
public:
    CoherentPair() = default;
    CoherentPair(complex alpha_a, complex alpha_b);

    complex alpha_a() const { return alpha_a_; }
    complex alpha_b() const { return alpha_b_; }
    double n_mean() const { return std::norm(alpha_a_) + std::norm(alpha_b_); }

private:
    complex alpha_a_{0.0, 0.0};
    complex alpha_b_{0.0, 0.0};
};

complex normalize_phase(complex z);

// Amplitude table over the truncated two-mode Fock space.
class TwoModeState {
public:
    TwoModeState() : TwoModeState(0) {}
    explicit TwoModeState(int cutoff);

    int cutoff() const { return cutoff_; }
    std::size_t size() const { return amps_.size(); }

    static constexpr std::size_t block_offset(int n_total) {
        return static_cast<std::size_t>(n_total) * static_cast<std::size_t>(n_total + 1) / 2;
    }

    std::span<complex> block(int n_total);
    std::span<const complex> block(int n_total) const;

    // Amplitude of |n_a, n_b>; zero outside the truncation.
    complex amplitude(int n_a, int n_b) const;
    complex& at(int n_a, int n_b);

    std::span<const complex> data() const { return amps_; }
    std::span<complex> data() { return amps_; }

    double norm_squared() const;
    double block_weight(int n_total) const;
    double mean_total() const;

    // Copy with a larger cutoff; new blocks are zero.
    TwoModeState padded(int cutoff) const;

private:
    int cutoff_;
    std::vector<complex> amps_;
};

// <a|b> over the common truncation.
complex inner_product(const TwoModeState& a, const TwoModeState& b);
// |<a|b>|^2 (no renormalization).
double fidelity(const TwoModeState& a, const TwoModeState& b);

// Smallest n_max with Poisson(mean) tail sum_{n > n_max} p_n < tail_tol.
// Throws ResourceLimitError when n_max would exceed cap.
int poisson_cutoff(double mean, double tail_tol, int cap = kMaxCutoff);
// sum_{n > n_max} e^{-mean} mean^n / n!, summed from the far tail inward.
double poisson_tail(double mean, int n_max);

TwoModeState coherent_product(const CoherentPair& pair, double tail_tol = kDefaultTailTol,
                              int cap = kMaxCutoff);

// pi / lambda_1 for identical unit-normalized Gaussian modes (lambda =
// rabi/2, omega_1 = 0).  Trap frequency and mass only enter through the
// overlap integral, which is one here; they are validated but unused.
double estimate_formation_time(double trap_omega, double mass, double rabi_frequency);

} // namespace tmbec
