// tridiagonal.hpp: implicit-shift QL eigensolver for real symmetric tridiagonal matrices

#pragma once

#include <span>

#include <Eigen/Dense>

namespace tmbec {

struct TridiagonalEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // column i belongs to values[i]; orthonormal
};

// diag has n entries, offdiag n-1 (offdiag[i] couples rows i and i+1).
// Each eigenvector is signed so that its first component with magnitude
// above 1e-12 is positive.  Throws NumericalError if an eigenvalue does not
// converge within max_iterations QL sweeps.
TridiagonalEigen solve_symmetric_tridiagonal(std::span<const double> diag,
                                             std::span<const double> offdiag,
                                             int max_iterations = 60);

} // namespace tmbec
