#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace qsearch {

// Full eigensystem of a real symmetric matrix, eigenvalues ascending,
// eigenvectors orthonormal in the columns.
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
};

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& m);

// Largest eigenvalue and its eigenvector for an entrywise non-negative
// symmetric matrix of a connected graph. The Perron vector is returned with
// non-negative components and unit norm. Throws DegenerateEigenvalueError if
// the top eigenvalue is degenerate within 1e-10 (a disconnected graph).
std::pair<double, Eigen::VectorXd> leading_eigenvector(const Eigen::MatrixXd& a);

// |psi(t)> = sum_k exp(-i E_k t) |E_k><E_k|psi0>, hbar = 1.
Eigen::VectorXcd evolve(const SpectralDecomposition& d, const Eigen::VectorXcd& psi0, double t);

// <a|b> with conjugation on the left argument.
std::complex<double> overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

Eigen::VectorXcd basis_state(int n, int i);

} // namespace qsearch
