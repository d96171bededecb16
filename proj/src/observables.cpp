#include "tmbec/observables.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tmbec/analytic.hpp"
#include "tmbec/log_factorial.hpp"

namespace tmbec {

namespace {

// Dense amplitude table C(n_a, n_b).
Eigen::MatrixXcd amplitude_table(const TwoModeState& state) {
    const int dim = state.cutoff() + 1;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(dim, dim);
    for (int total = 0; total <= state.cutoff(); ++total) {
        const auto blk = state.block(total);
        for (int k = 0; k <= total; ++k) c(total - k, k) = blk[k];
    }
    return c;
}

std::vector<double> poisson_weights(double mean, int n_max) {
    std::vector<double> w(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (mean == 0.0) {
        w[0] = 1.0;
        return w;
    }
    const double lm = std::log(mean);
    for (int n = 0; n <= n_max; ++n) w[n] = std::exp(-mean + n * lm - log_factorial(n));
    return w;
}

} // namespace

SingleModeDensity::SingleModeDensity(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) throw std::invalid_argument("density must be square");
}

SingleModeDensity SingleModeDensity::pure(std::span<const complex> amplitudes) {
    Eigen::Map<const Eigen::VectorXcd> v(amplitudes.data(), static_cast<Eigen::Index>(amplitudes.size()));
    return SingleModeDensity(v * v.adjoint());
}

double SingleModeDensity::trace() const { return rho_.trace().real(); }

double SingleModeDensity::purity() const { return rho_.cwiseAbs2().sum(); }

double SingleModeDensity::hermiticity_error() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

double SingleModeDensity::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

SingleModeDensity SingleModeDensity::normalized() const {
    const double tr = trace();
    if (!(tr > 0.0)) throw std::invalid_argument("cannot normalize a density with zero trace");
    return SingleModeDensity(rho_ / tr);
}

SingleModeDensity SingleModeDensity::padded(int cutoff) const {
    if (cutoff < this->cutoff()) throw std::invalid_argument("padded cutoff must not shrink the density");
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
    out.topLeftCorner(rho_.rows(), rho_.cols()) = rho_;
    return SingleModeDensity(std::move(out));
}

SingleModeDensity reduce_mode_b(const TwoModeState& state) {
    // rho_b[m][m'] = sum_n c_{n,m} conj(c_{n,m'})
    const Eigen::MatrixXcd c = amplitude_table(state);
    return SingleModeDensity(c.transpose() * c.conjugate());
}

SingleModeDensity reduce_mode_a(const TwoModeState& state) {
    const Eigen::MatrixXcd c = amplitude_table(state);
    return SingleModeDensity(c * c.adjoint());
}

ObservableRecord diagnostics(const SingleModeDensity& rho, double n_total, double t) {
    const auto& m = rho.matrix();
    const int dim = rho.dimension();
    double n1 = 0.0, n2 = 0.0;
    complex b_mean{0.0, 0.0};
    for (int n = 0; n < dim; ++n) {
        const double p = m(n, n).real();
        n1 += n * p;
        n2 += static_cast<double>(n) * n * p;
        // Tr(rho b) = sum_n rho_{n,n-1} sqrt(n)
        if (n > 0) b_mean += m(n, n - 1) * std::sqrt(static_cast<double>(n));
    }
    ObservableRecord r;
    r.t = t;
    r.nb_mean = n1;
    r.nb_frac = n_total > 0.0 ? n1 / n_total : 0.0;
    r.var_nb = n2 - n1 * n1;
    r.var_b = n1 - std::norm(b_mean);
    if (n1 > 0.0) r.mandel_q = (r.var_nb - n1) / n1;
    r.purity = rho.purity();
    r.linear_entropy = 1.0 - r.purity;
    return r;
}

ObservableRecord closed_form_record(const CoherentPair& pair, const ModelParams& p, double t) {
    if (!p.equal_scattering()) throw std::invalid_argument("closed-form observables need U_aa = U_bb = U_ab");
    const double n_mean = pair.n_mean();
    const auto d = derive_params(p, n_mean);
    const auto amp = amplitudes_at(pair, d, p, t);
    const double pop_b = std::norm(amp.beta_t);
    const double pop_a = std::norm(amp.alpha_t);
    const double u = p.u_ab;

    ObservableRecord r;
    r.t = t;
    r.nb_mean = pop_b;
    r.nb_frac = n_mean > 0.0 ? pop_b / n_mean : 0.0;
    r.var_nb = pop_b;
    r.var_b = pop_b * (1.0 - std::exp(-2.0 * n_mean * (1.0 - std::cos(2.0 * u * t))));
    if (pop_b > 0.0) r.mandel_q = 0.0;

    // Lag sum over d = m - m'; weights truncated where Poisson(|beta|^2) < 1e-18.
    const int n_max = pop_b > 0.0 ? poisson_cutoff(pop_b, 1e-18, 4 * kMaxCutoff) : 0;
    const auto w = poisson_weights(pop_b, n_max);
    double purity = 0.0;
    for (int lag = -n_max; lag <= n_max; ++lag) {
        double overlap = 0.0;
        for (int m = std::max(0, lag); m <= n_max && m - lag <= n_max; ++m) overlap += w[m] * w[m - lag];
        purity += overlap * std::exp(-2.0 * pop_a * (1.0 - std::cos(2.0 * u * t * lag)));
    }
    r.purity = purity;
    r.linear_entropy = 1.0 - purity;
    return r;
}

} // namespace tmbec
