#include "qsearch/spectral.hpp"

#include "qsearch/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qsearch {

SpectralDecomposition eigendecompose(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eigendecompose: matrix must be square");
    if (!m.allFinite())
        throw std::invalid_argument("eigendecompose: matrix has non-finite entries");
    const double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1.0))
        throw std::invalid_argument("eigendecompose: matrix is not symmetric");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigendecompose: solver did not converge (n=" +
                             std::to_string(m.rows()) + ", max|M|=" + std::to_string(scale) + ")");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

std::pair<double, Eigen::VectorXd> leading_eigenvector(const Eigen::MatrixXd& a) {
    if (a.size() > 0 && a.minCoeff() < 0.0)
        throw std::invalid_argument("leading_eigenvector: matrix must be entrywise non-negative");
    const auto d = eigendecompose(a);
    const Eigen::Index n = a.rows();
    const double lambda1 = d.eigenvalues(n - 1);
    if (n > 1) {
        const double gap = lambda1 - d.eigenvalues(n - 2);
        if (gap <= 1e-10 * std::max(std::abs(lambda1), 1.0))
            throw DegenerateEigenvalueError(
                "leading_eigenvector: top eigenvalue degenerate (gap=" + std::to_string(gap) +
                "); graph is likely disconnected");
    }
    Eigen::VectorXd v = d.eigenvectors.col(n - 1);
    // Perron gauge: flip so the dominant component is positive.
    Eigen::Index imax;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0)
        v = -v;
    return {lambda1, v};
}

Eigen::VectorXcd evolve(const SpectralDecomposition& d, const Eigen::VectorXcd& psi0, double t) {
    if (psi0.size() != d.eigenvalues.size())
        throw std::invalid_argument("evolve: state dimension does not match decomposition");
    const std::complex<double> mi(0.0, -1.0);
    Eigen::VectorXcd coeffs = d.eigenvectors.transpose() * psi0;
    coeffs.array() *= (mi * t * d.eigenvalues.array().cast<std::complex<double>>()).exp();
    return d.eigenvectors * coeffs;
}

std::complex<double> overlap(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("overlap: dimension mismatch");
    return a.dot(b); // Eigen's dot conjugates the left argument
}

Eigen::VectorXcd basis_state(int n, int i) {
    if (i < 0 || i >= n)
        throw std::invalid_argument("basis_state: index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
    v(i) = 1.0;
    return v;
}

} // namespace qsearch
