// decoherence.hpp: single-mode phase damping with Kerr drift
//
// The master equation drho/dt = -i[H_a, rho] + kappa({n^2, rho} - 2 n rho n),
// H_a = w_a n + U_aa n(n-1), is solved elementwise in the Fock basis:
//
//   rho_nm(t) = exp(-i w_a (n-m) t) exp(-i U_aa [n(n-1) - m(m-1)] t)
//               exp(-kappa t (n-m)^2) rho_nm(0).

#pragma once

#include <utility>
#include <vector>

#include "tmbec/gcs.hpp"
#include "tmbec/observables.hpp"

namespace tmbec {

struct DampingParams {
    double omega_a{0.0};
    double u_aa{0.0};
    double kappa{0.0}; // 1/s, >= 0
};

// Throws std::invalid_argument for t < 0 or kappa < 0.
SingleModeDensity phase_damp(const SingleModeDensity& rho0, const DampingParams& dp, double t);

// GCS of mode a at time t after formation at lambda_1 t = pi, evolving
// under H_a alone: amplitude -sqrt(N) exp{-i[pi w0/lambda_1 + (w_a - U_aa) t]}
// and Kerr coefficient pi U_ab/lambda_1 + U_aa t.
GcsState kerr_drifted_gcs(double n_total, const DerivedParams& d, const ModelParams& p, double t,
                          double tail_tol = kDefaultTailTol);

// (t, Tr rho^2) at each time; times must be >= 0 and ascending.  Points
// are evaluated as an OpenMP parallel map.
std::vector<std::pair<double, double>> purity_series(const SingleModeDensity& rho0, const DampingParams& dp,
                                                     const std::vector<double>& times);
std::vector<std::pair<double, double>> purity_series_serial(const SingleModeDensity& rho0, const DampingParams& dp,
                                                            const std::vector<double>& times);

} // namespace tmbec
