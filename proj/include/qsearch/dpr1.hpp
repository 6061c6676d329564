#pragma once

#include <Eigen/Dense>
#include <vector>

namespace qsearch {

// Eigensystem of M = diag(d) + rho * z * z^T with d ascending and rho < 0.
// The secular roots interlace the diagonal from below: one root under each
// distinct pole carrying weight, plus one below the whole spectrum. Duplicate
// poles and zero z components deflate: those eigenpairs keep their diagonal
// value and carry no z weight, so they never contribute to amplitudes taken
// against z.
//
// Roots are solved on demand (O(n) each after O(n) setup), which is what makes
// scanning a one-parameter Hamiltonian family cheap once the underlying
// adjacency matrix has been diagonalized. Instances are cheap to build and not
// safe for concurrent mutation; use one per thread.
class Dpr1 {
public:
    Dpr1(Eigen::VectorXd d, Eigen::VectorXd z, double rho);

    int size() const { return static_cast<int>(d_.size()); }
    double rho() const { return rho_; }

    // Non-deflated secular roots, ascending; root j lies strictly below pole j.
    int root_count() const { return static_cast<int>(poles_.size()); }
    double root_value(int j);
    // <z|u_j> for the normalized eigenvector u_j of root j.
    double root_weight(int j);
    // <x|u_j> without forming u_j; x in the diagonal basis.
    double root_project(const Eigen::VectorXd& x, int j);
    // Eigenvector coordinates in the diagonal basis, unit norm.
    Eigen::VectorXd root_vector(int j);

    // Two smallest eigenvalues of the full matrix. e1_is_root is false when
    // the second eigenvalue is a deflated pole (degenerate geometry upstream).
    struct LowestTwo {
        double e0;
        double e1;
        bool e1_is_root;
    };
    LowestTwo lowest_two();

    // All n eigenvalues ascending (solves every root).
    Eigen::VectorXd eigenvalues();

private:
    struct Root {
        double anchor = 0.0; // pole the root is anchored to
        double offset = 0.0; // root = anchor + offset
        bool solved = false;
    };

    void solve_root(int j);
    // Secular function at anchor + t over the reduced poles, with derivative.
    std::pair<double, double> secular(double anchor, double t) const;

    Eigen::VectorXd d_;
    Eigen::VectorXd z_;
    double rho_ = 0.0;
    double scale_ = 0.0;

    std::vector<double> poles_;   // reduced pole positions, ascending
    std::vector<double> weights_; // z mass squared per reduced pole
    double mass_ = 0.0;           // sum of weights_
    std::vector<double> deflated_;
    std::vector<Root> roots_;
};

} // namespace qsearch
