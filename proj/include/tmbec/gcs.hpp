// gcs.hpp: generalized coherent states and their cat-state decomposition
//
// A GCS here carries a quadratic Kerr phase,
//   g_n = e^{-|gamma|^2/2} gamma^n e^{-i kerr n^2} / sqrt(n!),
// which is what the two-mode dynamics leaves in one mode when the other is
// emptied.  When kerr = pi r/s the phase sequence is periodic in n and the
// state is a finite superposition of l coherent states on a circle.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tmbec/model.hpp"

namespace tmbec {

enum class Mode { a, b };
enum class PurificationKind { quarter, full };

struct RationalPhase {
    long r{0}; // numerator, any sign; gcd(|r|, s) == 1
    long s{1}; // denominator >= 1

    static RationalPhase make(long r, long s); // validates coprimality
    double value() const { return static_cast<double>(r) / static_cast<double>(s); }
    bool operator==(const RationalPhase&) const = default;
};

struct GcsState {
    complex gamma;
    double kerr{0.0};
    std::vector<complex> amplitudes; // g_0 .. g_cutoff

    int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
};

struct CatDecomposition {
    int l{1};
    std::vector<complex> coeffs; // a_0 .. a_{l-1}
    complex beta;                // packet m sits at beta e^{-2 pi i m / l}
};

GcsState make_gcs(complex gamma, double kerr, double tail_tol = kDefaultTailTol, int cap = kMaxCutoff);
// Same state on an explicit Fock cutoff.
GcsState make_gcs_with_cutoff(complex gamma, double kerr, int cutoff);

// Initial amplitude of the partner mode that makes mode `vanishing` empty at
// t_e.  `alpha_known` is the initial amplitude of the vanishing mode itself.
// Throws std::invalid_argument for lambda == 0 and NumericalError when
// sin(lambda_1 t_e) == 0 (no finite partner exists).
complex purification_initial_condition(complex alpha_known, Mode vanishing, const DerivedParams& d,
                                       const ModelParams& p, double t_e);

// quarter: (2p+1) pi / (4 lambda_1), p = 0..count-1;  full: k pi / lambda_1, k = 1..count.
std::vector<double> purification_times(const DerivedParams& d, PurificationKind kind, int count);

// State of mode a at lambda_1 t_k = k pi for the start |sqrt(N)> (x) |0>.
GcsState gcs_from_vacuum_start(double n_total, const DerivedParams& d, const ModelParams& p, int k,
                               double tail_tol = kDefaultTailTol);

inline constexpr double kDefaultRationalTol = 1e-9;
inline constexpr long kDefaultMaxDenominator = 64;

// Simplest fraction r/s (smallest s) within tol of U_ab t_e / pi, if s <= max_denominator.
std::optional<RationalPhase> detect_rational_phase(double u_ab, double t_e, double tol = kDefaultRationalTol,
                                                   long max_denominator = kDefaultMaxDenominator);

int cat_size(const RationalPhase& rp);
std::vector<complex> cat_coefficients(const RationalPhase& rp);
CatDecomposition decompose(const GcsState& gcs, const RationalPhase& rp);

// sum_m a_m |beta e^{-2 pi i m/l}> on Fock states 0..cutoff.  Throws
// InsufficientCutoffError when a packet's tail beyond cutoff exceeds 1e-12.
std::vector<complex> cat_reconstruct(const CatDecomposition& dec, int cutoff);

// Amplitudes of the other mode with `vacuum_mode` projected on |0>.
std::vector<complex> project_on_vacuum(const TwoModeState& state, Mode vacuum_mode);

complex inner_product(std::span<const complex> a, std::span<const complex> b);
double fidelity(std::span<const complex> a, std::span<const complex> b);

} // namespace tmbec
