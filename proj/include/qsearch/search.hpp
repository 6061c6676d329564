#pragma once

#include "qsearch/dpr1.hpp"
#include "qsearch/multigraph.hpp"
#include "qsearch/spectral.hpp"

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace qsearch {

struct SearchOptions {
    // Geometric gamma scan bracket [lo/lambda1, hi/lambda1] with this many points.
    int gamma_scan_points = 200;
    double gamma_lo_factor = 1e-3;
    double gamma_hi_factor = 10.0;
    double gamma_rel_tol = 1e-6; // bisection stops at this relative bracket width

    // P(t) grid: step <= (pi/dE)/tau_points_per_period over a 2*pi/dE window.
    int tau_points_per_period = 200;
    double tau_rel_tol = 1e-6;
    double plateau_tol = 1e-9; // earliest grid point within this of the maximum

    double epsilon = 1.0; // on-site energy of the marked node
};

struct GammaDiagnostics {
    double overlap0_sq = 0.0; // |<lambda1|E0>|^2 at gamma_opt
    double overlap1_sq = 0.0; // |<lambda1|E1>|^2 at gamma_opt
    double delta_tol = 0.0;   // max deviation of the two from 0.5
    double delta_e = 0.0;     // E1 - E0 at gamma_opt
    double gamma_left = 0.0;  // scan grid points bracketing the crossing
    double gamma_right = 0.0;
    double delta_e_left = 0.0; // gap at those grid points
    double delta_e_right = 0.0;
    int sign_changes = 0; // anomaly if != 1
};

struct TwoLevelModel {
    double overlap_e0 = 0.0; // <lambda1|E0>
    double overlap_e1 = 0.0; // <lambda1|E1>
    double delta_e = 0.0;    // exact E1 - E0
    double delta_e_pred = 0.0; // 2|<lambda1|w><w|w_tilde>|
    double tau_2lvl = 0.0;     // pi / delta_e
    Eigen::VectorXd w_tilde;   // (|E0> + |E1>)/sqrt(2), node basis
};

struct SearchResult {
    int w = -1;
    double gamma_opt = 0.0;
    double tau = 0.0;
    double p_max = 0.0;
    double search_time = 0.0; // T = tau / P(tau)
    double delta_e = 0.0;
    int l_hub_w = -1;            // hop distance hub -> w
    std::int64_t e_hub_w = 0;    // parallel edges A_{hub,w}
    GammaDiagnostics gamma_diag;
};

// H = -gamma A - epsilon |w><w|, diagonal of A = self-loop counts.
Eigen::MatrixXd build_hamiltonian(const Multigraph& g, int w, double gamma, double epsilon = 1.0);

// Walker fully localized on the hub.
Eigen::VectorXcd initial_hub_state(const Multigraph& g);

// Per-graph search machinery. Diagonalizes the adjacency matrix once; the
// Hamiltonian family H(gamma) = -gamma A - eps|w><w| is then diagonal plus
// rank one in that basis, so every gamma probe costs O(n) instead of O(n^3).
// Immutable after construction and shareable across threads.
class SearchEngine {
public:
    explicit SearchEngine(const Multigraph& g, SearchOptions opt = {});

    const Multigraph& graph() const { return g_; }
    const SearchOptions& options() const { return opt_; }
    int hub() const { return hub_; }
    double lambda1() const { return lambda1_; }
    const Eigen::VectorXd& perron() const { return perron_; }

    // gamma where |<lambda1|E0>|^2 and |<lambda1|E1>|^2 cross 0.5, located by a
    // sign change of their difference on the scan grid and refined by bisection.
    std::pair<double, GammaDiagnostics> find_gamma_opt(int w) const;

    TwoLevelModel two_level(int w, double gamma) const;

    // P(t) = |<w|exp(-iHt)|psi0>|^2.
    double success_probability(int w, double gamma, const Eigen::VectorXcd& psi0, double t) const;

    // Earliest maximizer of P(t) on [0, 2*pi/dE], golden-section refined; the
    // window is doubled once if the maximum sits on the edge.
    std::pair<double, double> find_tau(int w, double gamma, const Eigen::VectorXcd& psi0) const;

    // find_gamma_opt + find_tau from the hub state; T = tau / P(tau).
    SearchResult run(int w) const;

    struct ProfileRow {
        double gamma;
        double ov_l1_e0_sq;
        double ov_l1_e1_sq;
        double ov_w_e0_sq;
        double ov_w_e1_sq;
        double delta_e;
    };
    std::vector<ProfileRow> gamma_profile(int w, double gamma_lo, double gamma_hi,
                                          int points) const;

private:
    struct Series {
        Eigen::VectorXd energies;
        Eigen::VectorXcd amplitudes; // <w|E_k><E_k|psi0>
    };

    Dpr1 spectrum_at(int w, double gamma) const;
    Series series_for(int w, double gamma, const Eigen::VectorXcd& psi0) const;
    static double probability(const Series& s, double t);
    std::pair<double, double> maximize_probability(const Series& s, double gap) const;
    Eigen::VectorXd row_reversed(int node) const; // V(node, :) in descending-eigenvalue order

    Multigraph g_;
    SearchOptions opt_;
    int hub_ = 0;
    double lambda1_ = 0.0;
    Eigen::VectorXd perron_;
    SpectralDecomposition adj_;
    Eigen::VectorXd lambda_desc_; // adjacency eigenvalues, descending
    std::vector<int> hub_dist_;
};

// One-shot wrappers (each builds a SearchEngine; prefer the engine when
// marking many nodes of the same graph).
std::pair<double, GammaDiagnostics> find_gamma_opt(const Multigraph& g, int w,
                                                   const SearchOptions& opt = {});
double success_probability(const Multigraph& g, int w, double gamma,
                           const Eigen::VectorXcd& psi0, double t, const SearchOptions& opt = {});
std::pair<double, double> find_tau(const Multigraph& g, int w, double gamma,
                                   const Eigen::VectorXcd& psi0, const SearchOptions& opt = {});
TwoLevelModel two_level_prediction(const Multigraph& g, int w, double gamma,
                                   const SearchOptions& opt = {});
SearchResult run_search(const Multigraph& g, int w, const SearchOptions& opt = {});

} // namespace qsearch
