#include "tmbec/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "tmbec/evolution.hpp"
#include "tmbec/log_factorial.hpp"

namespace tmbec {

namespace {

// sin(x t)/x with the x -> 0 limit t.
double sinc_time(double x, double t) {
    const double xt = x * t;
    if (std::abs(xt) < 1e-8) return t * (1.0 - xt * xt / 6.0);
    return std::sin(xt) / x;
}

void require_closed_form(const ModelParams& p) {
    if (!p.analytic_valid())
        throw std::invalid_argument("closed form requires U_aa + U_bb = 2 U_ab");
}

double log_binomial(int n, int k) { return log_factorial(n) - log_factorial(k) - log_factorial(n - k); }

// Coefficients of (x a^+ + y b^+)^n, indexed by the power of b^+.
std::vector<double> binomial_powers(double x, double y, int n) {
    std::vector<double> out(n + 1);
    for (int q = 0; q <= n; ++q)
        out[q] = std::exp(log_binomial(n, q)) * std::pow(x, n - q) * std::pow(y, q);
    return out;
}

} // namespace

AnalyticAmplitudes amplitudes_at(const CoherentPair& pair, const DerivedParams& d, const ModelParams& p, double t) {
    const complex i1{0.0, 1.0};
    const double c = std::cos(d.lambda_1 * t);
    const double st = sinc_time(d.lambda_1, t);
    const complex aa = pair.alpha_a();
    const complex ab = pair.alpha_b();
    AnalyticAmplitudes out;
    out.alpha_t = aa * c + i1 * st * (p.lambda * ab - d.omega_1 * aa);
    out.beta_t = ab * c + i1 * st * (p.lambda * aa + d.omega_1 * ab);
    out.valid_at = t;
    return out;
}

TwoModeState evolved_state_analytic(const CoherentPair& pair, const ModelParams& p, double t, double tail_tol,
                                    int cap) {
    require_closed_form(p);
    const double n_mean = pair.n_mean();
    const auto d = derive_params(p, n_mean);
    const auto amp = amplitudes_at(pair, d, p, t);
    const int n_max = poisson_cutoff(n_mean, tail_tol, cap);

    std::vector<complex> fa(n_max + 1), fb(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        fa[n] = coherent_amplitude(amp.alpha_t, n);
        fb[n] = coherent_amplitude(amp.beta_t, n);
    }
    // |alpha(t)|^2 + |beta(t)|^2 = n_mean, so the product of the two
    // coherent factors already carries e^{-n_mean/2}.
    TwoModeState out(n_max);
    for (int total = 0; total <= n_max; ++total) {
        const double nt = total;
        const complex kerr = std::polar(1.0, -t * (p.u_ab * nt * nt + d.omega_0 * nt));
        auto blk = out.block(total);
        for (int k = 0; k <= total; ++k) blk[k] = fa[total - k] * fb[k] * kerr;
    }
    return out;
}

Eigen::MatrixXd rotation_block(double gamma, int n_total) {
    if (n_total < 0) throw std::invalid_argument("block index must be >= 0");
    const double c = std::cos(0.5 * gamma);
    const double s = std::sin(0.5 * gamma);
    const int dim = n_total + 1;
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        const int na = n_total - j;
        const int nb = j;
        // V|na, nb> = (c a^+ - s b^+)^na (s a^+ + c b^+)^nb |0> / sqrt(na! nb!)
        const auto pa = binomial_powers(c, -s, na);
        const auto pb = binomial_powers(s, c, nb);
        for (int p = 0; p <= na; ++p) {
            for (int q = 0; q <= nb; ++q) {
                const int i = p + q; // power of b^+ in the product
                const double norm = std::exp(0.5 * (log_factorial(n_total - i) + log_factorial(i) -
                                                    log_factorial(na) - log_factorial(nb)));
                v(i, j) += pa[p] * pb[q] * norm;
            }
        }
    }
    return v;
}

double transformed_hamiltonian_check(const ModelParams& p, int n_block) {
    require_closed_form(p);
    const auto d = derive_params(p, static_cast<double>(n_block));
    const double gamma = d.lambda_1 > 0.0 ? std::acos(std::clamp(d.omega_1 / d.lambda_1, -1.0, 1.0)) : 0.0;
    const Eigen::MatrixXd v = rotation_block(gamma, n_block);
    const Eigen::MatrixXd h = build_block(p, n_block).dense();
    Eigen::MatrixXd hv = v.transpose() * h * v;
    const double nt = n_block;
    for (int k = 0; k <= n_block; ++k) hv(k, k) -= d.omega_0 * nt + p.u_ab * nt * nt + d.lambda_1 * (nt - 2.0 * k);
    return hv.cwiseAbs().maxCoeff();
}

} // namespace tmbec
