// observables.hpp: reduced single-mode states and the scalar diagnostics

#pragma once

#include <optional>
#include <span>

#include <Eigen/Dense>

#include "tmbec/model.hpp"

namespace tmbec {

// Density matrix over single-mode Fock states 0..cutoff.
class SingleModeDensity {
public:
    SingleModeDensity() = default;
    explicit SingleModeDensity(Eigen::MatrixXcd rho);

    static SingleModeDensity pure(std::span<const complex> amplitudes);

    const Eigen::MatrixXcd& matrix() const { return rho_; }
    int cutoff() const { return static_cast<int>(rho_.rows()) - 1; }
    int dimension() const { return static_cast<int>(rho_.rows()); }
    complex operator()(int n, int m) const { return rho_(n, m); }

    double trace() const;
    // sum |rho_nm|^2 (Tr rho^2 for Hermitian rho)
    double purity() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;

    // rho / Tr rho.
    SingleModeDensity normalized() const;

    // Zero-padded copy on a larger Fock space.
    SingleModeDensity padded(int cutoff) const;

private:
    Eigen::MatrixXcd rho_;
};

SingleModeDensity reduce_mode_b(const TwoModeState& state);
SingleModeDensity reduce_mode_a(const TwoModeState& state);

struct ObservableRecord {
    double t{0.0};
    double nb_mean{0.0};
    double nb_frac{0.0};
    double var_nb{0.0};
    double var_b{0.0};
    std::optional<double> mandel_q; // empty when <n_b> == 0
    double linear_entropy{0.0};
    double purity{1.0};
};

// Moments of rho; nb_frac = <n> / n_total (0 when n_total == 0).
ObservableRecord diagnostics(const SingleModeDensity& rho, double n_total, double t = 0.0);

// Equal-scattering closed forms (U_aa = U_bb = U_ab = U):
//   <n_b> = var_nb = |beta(t)|^2,  var_b = |beta|^2 {1 - exp(-2N[1 - cos 2Ut])},  Q = 0.
// The linear entropy is the Poisson-weighted lag sum
//   Tr rho_b^2 = sum_{m,m'} P_beta(m) P_beta(m') exp(-2|alpha|^2 [1 - cos 2Ut(m - m')]).
// Throws std::invalid_argument outside the equal-scattering regime.
ObservableRecord closed_form_record(const CoherentPair& pair, const ModelParams& p, double t);

} // namespace tmbec
