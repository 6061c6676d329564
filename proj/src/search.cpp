#include "qsearch/search.hpp"

#include "qsearch/errors.hpp"
#include "qsearch/graph_stats.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsearch {

Eigen::MatrixXd build_hamiltonian(const Multigraph& g, int w, double gamma, double epsilon) {
    if (w < 0 || w >= g.n())
        throw std::invalid_argument("build_hamiltonian: marked node out of range");
    if (gamma < 0.0)
        throw std::invalid_argument("build_hamiltonian: gamma must be >= 0");
    Eigen::MatrixXd h = -gamma * g.adjacency_matrix();
    h(w, w) -= epsilon;
    return h;
}

Eigen::VectorXcd initial_hub_state(const Multigraph& g) {
    return basis_state(g.n(), hub_node(g));
}

SearchEngine::SearchEngine(const Multigraph& g, SearchOptions opt) : g_(g), opt_(opt) {
    if (g_.n() < 2)
        throw std::invalid_argument("SearchEngine: need at least 2 nodes");
    if (!g_.is_connected())
        throw DegenerateEigenvalueError("SearchEngine: graph is disconnected");
    hub_ = hub_node(g_);
    adj_ = eigendecompose(g_.adjacency_matrix());
    const Eigen::Index n = g_.n();
    lambda1_ = adj_.eigenvalues(n - 1);
    const double gap = lambda1_ - adj_.eigenvalues(n - 2);
    if (gap <= 1e-10 * std::max(std::abs(lambda1_), 1.0))
        throw DegenerateEigenvalueError("SearchEngine: leading eigenvalue degenerate");
    perron_ = adj_.eigenvectors.col(n - 1);
    Eigen::Index imax;
    perron_.cwiseAbs().maxCoeff(&imax);
    if (perron_(imax) < 0.0) {
        perron_ = -perron_;
        adj_.eigenvectors.col(n - 1) = perron_;
    }
    lambda_desc_ = adj_.eigenvalues.reverse();
    hub_dist_ = bfs_distances(g_, hub_);
}

Eigen::VectorXd SearchEngine::row_reversed(int node) const {
    return adj_.eigenvectors.row(node).reverse().transpose();
}

Dpr1 SearchEngine::spectrum_at(int w, double gamma) const {
    // In the adjacency eigenbasis (descending order so the diagonal ascends),
    // H(gamma) = diag(-gamma * lambda) - eps z z^T with z the w-th row of V.
    return Dpr1(-gamma * lambda_desc_, row_reversed(w), -opt_.epsilon);
}

std::pair<double, GammaDiagnostics> SearchEngine::find_gamma_opt(int w) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("find_gamma_opt: marked node out of range");

    const int points = opt_.gamma_scan_points;
    const double glo = opt_.gamma_lo_factor / lambda1_;
    const double ghi = opt_.gamma_hi_factor / lambda1_;
    const double ratio = std::pow(ghi / glo, 1.0 / (points - 1));

    // h(gamma) = |<lambda1|E0>|^2 - |<lambda1|E1>|^2; the lambda1 coordinate is
    // index 0 of the ascending diagonal.
    auto probe = [&](double gamma, double* gap) {
        Dpr1 sys = spectrum_at(w, gamma);
        const auto two = sys.lowest_two();
        if (!two.e1_is_root)
            throw DegenerateEigenvalueError(
                "find_gamma_opt: second eigenvalue is a deflated pole");
        if (gap)
            *gap = two.e1 - two.e0;
        const double c0 = sys.root_vector(0)(0);
        const double c1 = sys.root_vector(1)(0);
        return c0 * c0 - c1 * c1;
    };

    std::vector<double> gammas(points), h(points), gaps(points);
    for (int i = 0; i < points; ++i) {
        gammas[i] = glo * std::pow(ratio, i);
        h[i] = probe(gammas[i], &gaps[i]);
    }

    std::vector<int> crossings; // index i: sign change within (gamma_i, gamma_{i+1}]
    for (int i = 0; i + 1 < points; ++i)
        if (h[i] == 0.0 || (h[i] < 0.0) != (h[i + 1] < 0.0))
            crossings.push_back(i);
    if (crossings.empty())
        throw BracketFailureError("find_gamma_opt: no overlap crossing in scan window [" +
                                  std::to_string(glo) + ", " + std::to_string(ghi) + "]");

    double best_gamma = 0.0;
    double best_tol = std::numeric_limits<double>::infinity();
    GammaDiagnostics best{};
    for (const int idx : crossings) {
        double a = gammas[idx], b = gammas[idx + 1];
        double ha = h[idx];
        while ((b - a) > opt_.gamma_rel_tol * (0.5 * (a + b))) {
            const double mid = 0.5 * (a + b);
            const double hm = probe(mid, nullptr);
            if (hm == 0.0) {
                a = b = mid;
                break;
            }
            if ((hm < 0.0) == (ha < 0.0)) {
                a = mid;
                ha = hm;
            } else {
                b = mid;
            }
        }
        const double gamma = 0.5 * (a + b);

        Dpr1 sys = spectrum_at(w, gamma);
        const auto two = sys.lowest_two();
        const double ov0 = sys.root_vector(0)(0);
        const double ov1 = sys.root_vector(1)(0);
        GammaDiagnostics diag;
        diag.overlap0_sq = ov0 * ov0;
        diag.overlap1_sq = ov1 * ov1;
        diag.delta_tol =
            std::max(std::abs(diag.overlap0_sq - 0.5), std::abs(diag.overlap1_sq - 0.5));
        diag.delta_e = two.e1 - two.e0;
        diag.gamma_left = gammas[idx];
        diag.gamma_right = gammas[idx + 1];
        diag.delta_e_left = gaps[idx];
        diag.delta_e_right = gaps[idx + 1];
        diag.sign_changes = static_cast<int>(crossings.size());
        if (diag.delta_tol < best_tol) {
            best_tol = diag.delta_tol;
            best_gamma = gamma;
            best = diag;
        }
    }
    return {best_gamma, best};
}

TwoLevelModel SearchEngine::two_level(int w, double gamma) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("two_level: marked node out of range");
    Dpr1 sys = spectrum_at(w, gamma);
    const auto two = sys.lowest_two();
    if (!two.e1_is_root)
        throw DegenerateEigenvalueError("two_level: second eigenvalue is a deflated pole");
    const double gap = two.e1 - two.e0;
    if (gap <= 1e-12 * std::max(1.0, std::abs(two.e0)))
        throw DegenerateEigenvalueError("two_level: E0 and E1 degenerate");

    const Eigen::VectorXd u0 = sys.root_vector(0);
    const Eigen::VectorXd u1 = sys.root_vector(1);
    // Dpr1's gauge makes <w|E_k> positive for both roots, the orientation in
    // which |w_tilde> = (|E0> + |E1>)/sqrt(2) and <lambda1|E0> >= 0 >= <lambda1|E1>.
    const double a0 = sys.root_weight(0);
    const double a1 = sys.root_weight(1);

    TwoLevelModel model;
    model.overlap_e0 = u0(0);
    model.overlap_e1 = u1(0);
    model.delta_e = gap;
    model.delta_e_pred = 2.0 * std::abs(perron_(w) * (a0 + a1) / std::numbers::sqrt2);
    model.tau_2lvl = std::numbers::pi / gap;
    const Eigen::VectorXd coords = ((u0 + u1) / std::numbers::sqrt2).reverse();
    model.w_tilde = adj_.eigenvectors * coords;
    return model;
}

SearchEngine::Series SearchEngine::series_for(int w, double gamma,
                                              const Eigen::VectorXcd& psi0) const {
    if (psi0.size() != g_.n())
        throw std::invalid_argument("series_for: psi0 dimension mismatch");
    Dpr1 sys = spectrum_at(w, gamma);
    const Eigen::VectorXcd coords = adj_.eigenvectors.transpose() * psi0;
    const Eigen::VectorXd cr = coords.real().reverse();
    const Eigen::VectorXd ci = coords.imag().reverse();

    const int k = sys.root_count();
    Series s;
    s.energies.resize(k);
    s.amplitudes.resize(k);
    for (int j = 0; j < k; ++j) {
        s.energies(j) = sys.root_value(j);
        const double a = sys.root_weight(j); // <w|E_j>
        s.amplitudes(j) =
            a * std::complex<double>(sys.root_project(cr, j), sys.root_project(ci, j));
    }
    return s;
}

double SearchEngine::probability(const Series& s, double t) {
    const std::complex<double> mi(0.0, -1.0);
    const std::complex<double> sum =
        (s.amplitudes.array() * (mi * t * s.energies.array().cast<std::complex<double>>()).exp())
            .sum();
    return std::norm(sum);
}

std::pair<double, double> SearchEngine::maximize_probability(const Series& s, double gap) const {
    double window = 2.0 * std::numbers::pi / gap;
    int npts = 2 * opt_.tau_points_per_period; // step = (pi/gap) / points_per_period

    int best = 0;
    double step = 0.0;
    for (int attempt = 0;; ++attempt) {
        step = window / npts;
        double pmax = -1.0;
        std::vector<double> p(npts + 1);
        for (int i = 0; i <= npts; ++i) {
            p[i] = probability(s, i * step);
            pmax = std::max(pmax, p[i]);
        }
        best = npts;
        for (int i = 0; i <= npts; ++i) {
            if (p[i] >= pmax - opt_.plateau_tol) {
                best = i; // earliest grid point within tolerance of the max
                break;
            }
        }
        if (best < npts)
            break;
        if (attempt >= 1)
            throw WindowEdgeError("find_tau: P(t) maximum stuck at the window edge");
        window *= 2.0;
        npts *= 2;
    }

    // Golden-section around the best grid point.
    double lo = std::max(0.0, (best - 1) * step);
    double hi = (best + 1) * step;
    const double inv_phi = 0.6180339887498948482;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double p1 = probability(s, x1);
    double p2 = probability(s, x2);
    const double tol = opt_.tau_rel_tol * std::max(best * step, step);
    while (hi - lo > tol) {
        if (p1 >= p2) {
            hi = x2;
            x2 = x1;
            p2 = p1;
            x1 = hi - inv_phi * (hi - lo);
            p1 = probability(s, x1);
        } else {
            lo = x1;
            x1 = x2;
            p1 = p2;
            x2 = lo + inv_phi * (hi - lo);
            p2 = probability(s, x2);
        }
    }
    const double tau = 0.5 * (lo + hi);
    return {tau, probability(s, tau)};
}

double SearchEngine::success_probability(int w, double gamma, const Eigen::VectorXcd& psi0,
                                         double t) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("success_probability: marked node out of range");
    if (gamma < 0.0)
        throw std::invalid_argument("success_probability: gamma must be >= 0");
    if (t < 0.0)
        throw std::invalid_argument("success_probability: t must be >= 0");
    if (gamma == 0.0) {
        // Diagonal Hamiltonian: the walker never leaves its site set.
        return std::norm(psi0(w));
    }
    return probability(series_for(w, gamma, psi0), t);
}

std::pair<double, double> SearchEngine::find_tau(int w, double gamma,
                                                 const Eigen::VectorXcd& psi0) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("find_tau: marked node out of range");
    Dpr1 sys = spectrum_at(w, gamma);
    const auto two = sys.lowest_two();
    if (!two.e1_is_root)
        throw DegenerateEigenvalueError("find_tau: second eigenvalue is a deflated pole");
    const double gap = two.e1 - two.e0;
    if (gap <= 1e-12 * std::max(1.0, std::abs(two.e0)))
        throw DegenerateEigenvalueError("find_tau: E0 and E1 degenerate");
    return maximize_probability(series_for(w, gamma, psi0), gap);
}

SearchResult SearchEngine::run(int w) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("run_search: marked node out of range");
    if (w == hub_)
        throw std::invalid_argument("run_search: marked node must differ from the hub");

    SearchResult r;
    r.w = w;
    r.l_hub_w = hub_dist_[w];
    r.e_hub_w = g_.multiplicity(hub_, w);

    auto [gamma, diag] = find_gamma_opt(w);
    r.gamma_opt = gamma;
    r.gamma_diag = diag;
    r.delta_e = diag.delta_e;

    const auto [tau, pmax] = find_tau(w, gamma, basis_state(g_.n(), hub_));
    r.tau = tau;
    r.p_max = pmax;
    r.search_time = tau / pmax;
    return r;
}

std::vector<SearchEngine::ProfileRow> SearchEngine::gamma_profile(int w, double gamma_lo,
                                                                  double gamma_hi,
                                                                  int points) const {
    if (w < 0 || w >= g_.n())
        throw std::invalid_argument("gamma_profile: marked node out of range");
    if (!(gamma_lo > 0.0) || !(gamma_hi > gamma_lo) || points < 2)
        throw std::invalid_argument("gamma_profile: need 0 < gamma_lo < gamma_hi, points >= 2");
    const double ratio = std::pow(gamma_hi / gamma_lo, 1.0 / (points - 1));
    std::vector<ProfileRow> rows;
    rows.reserve(points);
    for (int i = 0; i < points; ++i) {
        const double gamma = gamma_lo * std::pow(ratio, i);
        Dpr1 sys = spectrum_at(w, gamma);
        const auto two = sys.lowest_two();
        if (!two.e1_is_root)
            throw DegenerateEigenvalueError("gamma_profile: deflated second eigenvalue");
        const double c0 = sys.root_vector(0)(0);
        const double c1 = sys.root_vector(1)(0);
        const double a0 = sys.root_weight(0);
        const double a1 = sys.root_weight(1);
        rows.push_back({gamma, c0 * c0, c1 * c1, a0 * a0, a1 * a1, two.e1 - two.e0});
    }
    return rows;
}

std::pair<double, GammaDiagnostics> find_gamma_opt(const Multigraph& g, int w,
                                                   const SearchOptions& opt) {
    return SearchEngine(g, opt).find_gamma_opt(w);
}

double success_probability(const Multigraph& g, int w, double gamma, const Eigen::VectorXcd& psi0,
                           double t, const SearchOptions& opt) {
    return SearchEngine(g, opt).success_probability(w, gamma, psi0, t);
}

std::pair<double, double> find_tau(const Multigraph& g, int w, double gamma,
                                   const Eigen::VectorXcd& psi0, const SearchOptions& opt) {
    return SearchEngine(g, opt).find_tau(w, gamma, psi0);
}

TwoLevelModel two_level_prediction(const Multigraph& g, int w, double gamma,
                                   const SearchOptions& opt) {
    return SearchEngine(g, opt).two_level(w, gamma);
}

SearchResult run_search(const Multigraph& g, int w, const SearchOptions& opt) {
    return SearchEngine(g, opt).run(w);
}

} // namespace qsearch
