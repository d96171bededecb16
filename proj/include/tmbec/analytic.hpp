// analytic.hpp: closed-form propagator for U_aa + U_bb = 2 U_ab
//
// In that regime H = w0 N + w1 dn + U_ab N^2 - lambda (a^+ b + a b^+), with
// N = n_a + n_b and dn = n_a - n_b.  A product of coherent states evolves
// into a Kerr-dressed product of rotated coherent amplitudes:
//
//   c_{n,m}(t) = e^{-N/2} alpha(t)^n beta(t)^m / sqrt(n! m!)
//                * exp(-i t [U_ab (n+m)^2 + w0 (n+m)])
//
// with alpha(t), beta(t) the linear two-mode rotation at rate lambda_1.
// w1 is evaluated at the scalar mean number, so the closed form is exact
// only when U_aa == U_bb; otherwise w1 depends on the block.

#pragma once

#include <Eigen/Dense>

#include "tmbec/model.hpp"

namespace tmbec {

struct AnalyticAmplitudes {
    complex alpha_t;
    complex beta_t;
    double valid_at{0.0};
};

AnalyticAmplitudes amplitudes_at(const CoherentPair& pair, const DerivedParams& d, const ModelParams& p, double t);

// Throws std::invalid_argument unless p.analytic_valid().
TwoModeState evolved_state_analytic(const CoherentPair& pair, const ModelParams& p, double t,
                                    double tail_tol = kDefaultTailTol, int cap = kMaxCutoff);

// Matrix of V(gamma) = exp[(gamma/2)(a^+ b - a b^+)] on block N (basis
// index k = n_b).  Built from the exact transformation of the creation
// operators, V a^+ V^+ = c a^+ - s b^+, V b^+ V^+ = s a^+ + c b^+ with
// c = cos(gamma/2), s = sin(gamma/2).
Eigen::MatrixXd rotation_block(double gamma, int n_total);

// Conjugates block N_block of H by V(gamma), gamma = arccos(w1/lambda_1),
// and returns max |V^T H V - diag(w0 N + U_ab N^2 + lambda_1 dn)|, with
// w1 evaluated at N_block.  Throws unless p.analytic_valid().
double transformed_hamiltonian_check(const ModelParams& p, int n_block);

} // namespace tmbec
