// evolution.hpp: exact propagation by per-block diagonalization
//
// The Hamiltonian conserves the total number N, so each block |N-k, k> is
// an independent (N+1)-dimensional symmetric tridiagonal problem.  A block
// is propagated as c(t) = V exp(-iEt) V^T c(0).
//
// evolve() runs the blocks as an OpenMP parallel loop and shares spectra
// through a SpectrumCache; evolve_serial() is the plain reference loop
// (fresh diagonalization, no cache, no threads) that tests compare against.

#pragma once

#include <array>
#include <map>
#include <memory>
#include <shared_mutex>
#include <vector>

#include <Eigen/Dense>

#include "tmbec/model.hpp"

namespace tmbec {

struct BlockHamiltonian {
    int n_total{0};
    std::vector<double> diag;    // n_total + 1 entries, rad/s
    std::vector<double> offdiag; // n_total entries, -lambda sqrt((N-k)(k+1))

    Eigen::MatrixXd dense() const;
};

struct BlockSpectrum {
    Eigen::VectorXd eigenvalues;  // ascending, rad/s
    Eigen::MatrixXd eigenvectors; // orthonormal columns
};

BlockHamiltonian build_block(const ModelParams& p, int n_total);
BlockSpectrum diagonalize_block(const BlockHamiltonian& h);

// Thread-safe map (couplings, N) -> immutable spectrum.
class SpectrumCache {
public:
    std::shared_ptr<const BlockSpectrum> get(const ModelParams& p, int n_total);
    std::size_t size() const;
    void clear();

private:
    using Key = std::pair<std::array<double, 6>, int>;
    mutable std::shared_mutex mutex_;
    std::map<Key, std::shared_ptr<const BlockSpectrum>> entries_;
};

SpectrumCache& default_spectrum_cache();

TwoModeState evolve(const TwoModeState& state, const ModelParams& p, double t,
                    SpectrumCache& cache = default_spectrum_cache());
TwoModeState evolve_serial(const TwoModeState& state, const ModelParams& p, double t);

// <H> in rad/s, evaluated block by block.
double energy(const TwoModeState& state, const ModelParams& p);

} // namespace tmbec
