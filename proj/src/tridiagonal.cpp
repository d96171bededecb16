#include "tmbec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "tmbec/errors.hpp"

namespace tmbec {

namespace {

// QL with implicit Wilkinson-type shifts (Bowdler/Martin/Reinsch/Wilkinson
// tql2), accumulating the plane rotations into z.
void implicit_ql(std::vector<double>& d, std::vector<double>& e, Eigen::MatrixXd& z, int max_iterations) {
    const int n = static_cast<int>(d.size());
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m = l;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) + dd == dd) break;
            }
            if (m == l) break;
            if (iter++ == max_iterations)
                throw NumericalError("tridiagonal QL: no convergence for eigenvalue " + std::to_string(l));

            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            int i = m - 1;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    // Underflow: deflate and restart this eigenvalue.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for (int k = 0; k < n; ++k) {
                    f = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * f;
                    z(k, i) = c * z(k, i) - s * f;
                }
            }
            if (r == 0.0 && i >= l) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        } while (m != l);
    }
}

} // namespace

TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diag, std::span<const double> offdiag,
                                             int max_iterations) {
    const std::size_t n = diag.size();
    if (n == 0) throw std::invalid_argument("empty tridiagonal matrix");
    if (offdiag.size() + 1 != n) throw std::invalid_argument("offdiag must have n-1 entries");

    std::vector<double> d(diag.begin(), diag.end());
    std::vector<double> e(n, 0.0);
    std::copy(offdiag.begin(), offdiag.end(), e.begin());
    Eigen::MatrixXd z = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

    implicit_ql(d, e, z, max_iterations);

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return d[a] < d[b]; });

    TridiagonalEigen out;
    out.values.resize(static_cast<Eigen::Index>(n));
    out.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(n); ++j) {
        out.values[j] = d[order[j]];
        Eigen::VectorXd v = z.col(order[j]);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            if (std::abs(v[k]) > 1e-12) {
                if (v[k] < 0.0) v = -v;
                break;
            }
        }
        out.vectors.col(j) = v;
    }
    return out;
}

} // namespace tmbec
