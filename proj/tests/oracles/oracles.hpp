// oracles.hpp: independent reference computations used only by tests.
// Nothing here calls into the library's numerical paths.

#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

// Cyclic Jacobi rotations for a dense real symmetric matrix; eigenvalues ascending.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a, int sweeps = 100) {
    const int n = static_cast<int>(a.rows());
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::abs(a(p, q)) < 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    Eigen::VectorXd ev = a.diagonal();
    std::sort(ev.data(), ev.data() + ev.size());
    return ev;
}

// exp(A) by scaling and squaring with a 30-term Taylor series.
template <typename Matrix>
Matrix expm(const Matrix& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Matrix scaled = a / std::pow(2.0, squarings);
    Matrix result = Matrix::Identity(a.rows(), a.cols());
    Matrix term = Matrix::Identity(a.rows(), a.cols());
    for (int k = 1; k <= 30; ++k) {
        term = term * scaled / static_cast<double>(k);
        result += term;
    }
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

// Poisson pmf by forward recurrence p_{n+1} = p_n * mean / (n+1) in long double.
inline std::vector<long double> poisson_pmf(double mean, int n_max) {
    std::vector<long double> p(n_max + 1);
    p[0] = std::exp(-static_cast<long double>(mean));
    for (int n = 0; n < n_max; ++n) p[n + 1] = p[n] * mean / (n + 1);
    return p;
}

// sum_{n > n_max} by brute force out to n_far.
inline long double poisson_tail_direct(double mean, int n_max, int n_far = 2000) {
    const auto p = poisson_pmf(mean, n_far);
    long double s = 0.0L;
    for (int n = n_far; n > n_max; --n) s += p[n];
    return s;
}

// Coherent amplitude via direct product e^{-|z|^2/2} prod_{j<=n} z / sqrt(j).
inline cplx coherent_amp_direct(cplx z, int n) {
    cplx v = std::exp(-0.5 * std::norm(z));
    for (int j = 1; j <= n; ++j) v *= z / std::sqrt(static_cast<double>(j));
    return v;
}

// Dense two-mode operators on the product basis |n_a, n_b>, n_a, n_b < dim,
// index n_a * dim + n_b.
struct ProductSpace {
    int dim;
    int index(int na, int nb) const { return na * dim + nb; }
    int size() const { return dim * dim; }

    Eigen::MatrixXd annihilate_a() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
        for (int na = 1; na < dim; ++na)
            for (int nb = 0; nb < dim; ++nb) m(index(na - 1, nb), index(na, nb)) = std::sqrt(double(na));
        return m;
    }
    Eigen::MatrixXd annihilate_b() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
        for (int na = 0; na < dim; ++na)
            for (int nb = 1; nb < dim; ++nb) m(index(na, nb - 1), index(na, nb)) = std::sqrt(double(nb));
        return m;
    }
};

// Partial trace over mode a of a pure state psi[n_a][n_b] by explicit double sum.
inline Eigen::MatrixXcd partial_trace_a(const std::vector<std::vector<cplx>>& psi) {
    const int dim_a = static_cast<int>(psi.size());
    const int dim_b = static_cast<int>(psi[0].size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_b, dim_b);
    for (int m = 0; m < dim_b; ++m)
        for (int mp = 0; mp < dim_b; ++mp)
            for (int n = 0; n < dim_a; ++n) rho(m, mp) += psi[n][m] * std::conj(psi[n][mp]);
    return rho;
}

} // namespace oracle
