#include "tmbec/evolution.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>

#include "tmbec/tridiagonal.hpp"

namespace tmbec {

namespace {

void propagate_block(const BlockSpectrum& spec, std::span<const complex> in, std::span<complex> out, double t) {
    const Eigen::Index dim = spec.eigenvalues.size();
    Eigen::Map<const Eigen::VectorXcd> c0(in.data(), dim);
    Eigen::VectorXcd modal = spec.eigenvectors.transpose().cast<complex>() * c0;
    for (Eigen::Index i = 0; i < dim; ++i) modal[i] *= std::polar(1.0, -spec.eigenvalues[i] * t);
    Eigen::Map<Eigen::VectorXcd>(out.data(), dim) = spec.eigenvectors.cast<complex>() * modal;
}

} // namespace

Eigen::MatrixXd BlockHamiltonian::dense() const {
    const Eigen::Index dim = static_cast<Eigen::Index>(diag.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) h(k, k) = diag[k];
    for (Eigen::Index k = 0; k + 1 < dim; ++k) h(k, k + 1) = h(k + 1, k) = offdiag[k];
    return h;
}

BlockHamiltonian build_block(const ModelParams& p, int n_total) {
    if (n_total < 0) throw std::invalid_argument("block index must be >= 0");
    BlockHamiltonian h;
    h.n_total = n_total;
    h.diag.resize(n_total + 1);
    h.offdiag.resize(n_total);
    for (int k = 0; k <= n_total; ++k) {
        const double na = n_total - k;
        const double nb = k;
        h.diag[k] = p.omega_a * na + p.omega_b * nb + p.u_aa * na * (na - 1.0) + p.u_bb * nb * (nb - 1.0) +
                    2.0 * p.u_ab * na * nb;
    }
    for (int k = 0; k < n_total; ++k)
        h.offdiag[k] = -p.lambda * std::sqrt(static_cast<double>(n_total - k) * static_cast<double>(k + 1));
    return h;
}

BlockSpectrum diagonalize_block(const BlockHamiltonian& h) {
    auto eig = solve_symmetric_tridiagonal(h.diag, h.offdiag);
    return {std::move(eig.values), std::move(eig.vectors)};
}

std::shared_ptr<const BlockSpectrum> SpectrumCache::get(const ModelParams& p, int n_total) {
    const Key key{{p.omega_a, p.omega_b, p.u_aa, p.u_bb, p.u_ab, p.lambda}, n_total};
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto spec = std::make_shared<const BlockSpectrum>(diagonalize_block(build_block(p, n_total)));
    std::unique_lock lock(mutex_);
    return entries_.emplace(key, std::move(spec)).first->second;
}

std::size_t SpectrumCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

void SpectrumCache::clear() {
    std::unique_lock lock(mutex_);
    entries_.clear();
}

SpectrumCache& default_spectrum_cache() {
    static SpectrumCache cache;
    return cache;
}

TwoModeState evolve(const TwoModeState& state, const ModelParams& p, double t, SpectrumCache& cache) {
    if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
    TwoModeState out(state.cutoff());
    const int cutoff = state.cutoff();
    // Larger blocks first keeps the dynamic schedule balanced.
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i <= cutoff; ++i) {
        const int n_total = cutoff - i;
        const auto spec = cache.get(p, n_total);
        propagate_block(*spec, state.block(n_total), out.block(n_total), t);
    }
    return out;
}

TwoModeState evolve_serial(const TwoModeState& state, const ModelParams& p, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("evolution time must be finite");
    TwoModeState out(state.cutoff());
    for (int n_total = 0; n_total <= state.cutoff(); ++n_total) {
        const auto spec = diagonalize_block(build_block(p, n_total));
        propagate_block(spec, state.block(n_total), out.block(n_total), t);
    }
    return out;
}

double energy(const TwoModeState& state, const ModelParams& p) {
    double e = 0.0;
    for (int n_total = 0; n_total <= state.cutoff(); ++n_total) {
        const auto h = build_block(p, n_total);
        const auto c = state.block(n_total);
        for (int k = 0; k <= n_total; ++k) {
            complex hc = h.diag[k] * c[k];
            if (k > 0) hc += h.offdiag[k - 1] * c[k - 1];
            if (k < n_total) hc += h.offdiag[k] * c[k + 1];
            e += std::real(std::conj(c[k]) * hc);
        }
    }
    return e;
}

} // namespace tmbec
