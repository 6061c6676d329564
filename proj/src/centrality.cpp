#include "qsearch/centrality.hpp"

#include "qsearch/edgelist.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/graph_stats.hpp"
#include "qsearch/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qsearch {

namespace {

void require_connected(const Multigraph& g, const char* who) {
    if (!g.is_connected())
        throw InfiniteDistanceError(std::string(who) + ": graph is disconnected");
}

} // namespace

Eigen::VectorXd degree_centrality(const Multigraph& g) {
    if (g.n() < 2)
        throw std::invalid_argument("degree_centrality: need at least 2 nodes");
    Eigen::VectorXd c = Eigen::VectorXd::Zero(g.n());
    for (const auto& e : g.edges()) {
        if (e.u == e.v) {
            c(e.u) += static_cast<double>(e.mult);
        } else {
            c(e.u) += static_cast<double>(e.mult);
            c(e.v) += static_cast<double>(e.mult);
        }
    }
    return c / static_cast<double>(g.n() - 1);
}

Eigen::VectorXd eigenvector_centrality(const Multigraph& g) {
    const auto [lambda, v] = leading_eigenvector(g.adjacency_matrix());
    (void)lambda;
    return v.cwiseAbs();
}

Eigen::VectorXd closeness_centrality(const Multigraph& g) {
    require_connected(g, "closeness_centrality");
    Eigen::VectorXd c(g.n());
    for (int u = 0; u < g.n(); ++u) {
        const auto dist = bfs_distances(g, u);
        std::int64_t sum = 0;
        for (const int d : dist)
            sum += d;
        c(u) = static_cast<double>(g.n() - 1) / static_cast<double>(sum);
    }
    return c;
}

Eigen::VectorXd betweenness_centrality(const Multigraph& g) {
    require_connected(g, "betweenness_centrality");
    const int n = g.n();
    Eigen::VectorXd bc = Eigen::VectorXd::Zero(n);

    // Brandes: BFS from every source with path counts, then dependency
    // accumulation in reverse BFS order.
    std::vector<int> dist(n), order;
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<int>> preds(n);
    order.reserve(n);
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds)
            p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            order.push_back(u);
            for (const auto& [v, mult] : g.adjacent(u)) {
                (void)mult;
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
                if (dist[v] == dist[u] + 1) {
                    sigma[v] += sigma[u];
                    preds[v].push_back(u);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const int v = *it;
            for (const int u : preds[v])
                delta[u] += sigma[u] / sigma[v] * (1.0 + delta[v]);
            if (v != s)
                bc(v) += delta[v];
        }
    }
    return bc / 2.0; // each unordered pair was accumulated from both endpoints
}

namespace {

// Row-stochastic transition matrix of the edge-end walk.
Eigen::MatrixXd transition_matrix(const Multigraph& g) {
    const int n = g.n();
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        const double deg = static_cast<double>(g.degree(u));
        for (const auto& [v, mult] : g.adjacent(u))
            p(u, v) = static_cast<double>(mult) / deg;
        p(u, u) = 2.0 * static_cast<double>(g.loops(u)) / deg;
    }
    return p;
}

} // namespace

Eigen::VectorXd mfpt(const Multigraph& g, int target) {
    if (target < 0 || target >= g.n())
        throw std::invalid_argument("mfpt: target out of range");
    if (!g.is_connected())
        throw SingularSystemError("mfpt: graph is disconnected");
    const int n = g.n();
    const Eigen::MatrixXd p = transition_matrix(g);

    // h_j = 1 + sum_k P_jk h_k over non-target rows, h_target = 0.
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n - 1, n - 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Ones(n - 1);
    auto idx = [target](int j) { return j < target ? j : j - 1; };
    for (int j = 0; j < n; ++j) {
        if (j == target)
            continue;
        for (int k = 0; k < n; ++k) {
            if (k == target)
                continue;
            a(idx(j), idx(k)) -= p(j, k);
        }
    }
    const Eigen::VectorXd h = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(rhs);
    const double residual = (a * h - rhs).cwiseAbs().maxCoeff();
    if (!h.allFinite() || residual > 1e-8 * std::max(1.0, h.cwiseAbs().maxCoeff()))
        throw SingularSystemError("mfpt: linear system is singular or ill-conditioned");

    Eigen::VectorXd full = Eigen::VectorXd::Zero(n);
    for (int j = 0; j < n; ++j)
        if (j != target)
            full(j) = h(idx(j));
    return full;
}

Eigen::MatrixXd mfpt_all(const Multigraph& g) {
    if (!g.is_connected())
        throw SingularSystemError("mfpt_all: graph is disconnected");
    const int n = g.n();
    const Eigen::MatrixXd p = transition_matrix(g);

    // Stationary distribution of the edge-end walk is degree / (2 * edges).
    Eigen::VectorXd pi(n);
    for (int u = 0; u < n; ++u)
        pi(u) = static_cast<double>(g.degree(u));
    pi /= 2.0 * static_cast<double>(g.total_multiplicity());

    // Fundamental matrix Z = (I - P + 1 pi^T)^{-1}; H(i,j) = (Z_jj - Z_ij) / pi_j.
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - p;
    m.rowwise() += pi.transpose();
    const Eigen::MatrixXd z = Eigen::PartialPivLU<Eigen::MatrixXd>(m).solve(
        Eigen::MatrixXd::Identity(n, n));
    if (!z.allFinite())
        throw SingularSystemError("mfpt_all: fundamental matrix solve failed");

    Eigen::MatrixXd h(n, n);
    for (int j = 0; j < n; ++j)
        h.col(j) = (z(j, j) - z.col(j).array()).matrix() / pi(j);
    return h;
}

Eigen::VectorXd rw_closeness_centrality(const Multigraph& g) {
    const Eigen::MatrixXd h = mfpt_all(g);
    return static_cast<double>(g.n()) * h.colwise().sum().cwiseInverse().transpose();
}

Eigen::VectorXd rw_betweenness_centrality(const Multigraph& g) {
    require_connected(g, "rw_betweenness_centrality");
    const int n = g.n();

    // Weighted Laplacian of the simple projection; the pseudo-inverse action is
    // obtained from (L + J/n)^{-1}, whose constant shift cancels in potential
    // differences.
    Eigen::MatrixXd l = Eigen::MatrixXd::Constant(n, n, 1.0 / n);
    for (const auto& e : g.edges()) {
        if (e.u == e.v)
            continue;
        const double w = static_cast<double>(e.mult);
        l(e.u, e.u) += w;
        l(e.v, e.v) += w;
        l(e.u, e.v) -= w;
        l(e.v, e.u) -= w;
    }
    const Eigen::MatrixXd t = Eigen::PartialPivLU<Eigen::MatrixXd>(l).solve(
        Eigen::MatrixXd::Identity(n, n));
    if (!t.allFinite())
        throw SingularSystemError("rw_betweenness_centrality: Laplacian solve failed");

    // For edge (i,j): sum over source-sink pairs of |current| equals
    // sum_{s<t} |x_s - x_t| with x_u = T_iu - T_ju, computed by sorting.
    Eigen::VectorXd bc = Eigen::VectorXd::Zero(n);
    std::vector<double> x(n);
    for (const auto& e : g.edges()) {
        if (e.u == e.v)
            continue;
        for (int u = 0; u < n; ++u)
            x[u] = t(e.u, u) - t(e.v, u);
        std::sort(x.begin(), x.end());
        double sum = 0.0;
        for (int k = 0; k < n; ++k)
            sum += (2.0 * k - (n - 1)) * x[k];
        const double half = 0.5 * static_cast<double>(e.mult) * sum;
        bc(e.u) += half;
        bc(e.v) += half;
    }
    // Endpoints carry unit throughput instead of the half current sum.
    bc.array() += 0.5 * static_cast<double>(n - 1);
    return bc;
}

double pearson_loglog(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    if (x.size() != y.size())
        throw std::invalid_argument("pearson_loglog: length mismatch");
    if (x.size() < 3)
        throw std::invalid_argument("pearson_loglog: need at least 3 points");
    if (x.minCoeff() <= 0.0 || y.minCoeff() <= 0.0)
        throw std::invalid_argument("pearson_loglog: values must be strictly positive");
    const Eigen::ArrayXd lx = x.array().log();
    const Eigen::ArrayXd ly = y.array().log();
    const Eigen::ArrayXd dx = lx - lx.mean();
    const Eigen::ArrayXd dy = ly - ly.mean();
    const double sxx = (dx * dx).sum();
    const double syy = (dy * dy).sum();
    if (sxx == 0.0 || syy == 0.0)
        throw DegenerateVarianceError("pearson_loglog: zero variance in log values");
    return (dx * dy).sum() / std::sqrt(sxx * syy);
}

CentralityReport centrality_report(const Multigraph& g) {
    return centrality_report(g, eigenvector_centrality(g));
}

CentralityReport centrality_report(const Multigraph& g, const Eigen::VectorXd& perron) {
    CentralityReport r;
    r.hub = hub_node(g);
    r.degree_c = degree_centrality(g);
    r.eigen_c = perron.cwiseAbs();
    r.closeness_c = closeness_centrality(g);
    r.betweenness_c = betweenness_centrality(g);
    const Eigen::MatrixXd h = mfpt_all(g);
    r.rw_closeness_c = static_cast<double>(g.n()) * h.colwise().sum().cwiseInverse().transpose();
    r.rw_betweenness_c = rw_betweenness_centrality(g);
    r.mfpt_from_hub = h.row(r.hub);
    return r;
}

void write_centrality_csv(const std::filesystem::path& path, const Multigraph& g,
                          const CentralityReport& report) {
    std::ofstream out(path);
    if (!out)
        throw IoError("write_centrality_csv: cannot open " + path.string());
    out << "node,degree,C_d,C_e,C_c,C_b,C_rc,C_rb,H_hub_to_node\n";
    for (int u = 0; u < g.n(); ++u) {
        out << u << "," << g.degree(u) << "," << format_double(report.degree_c(u)) << ","
            << format_double(report.eigen_c(u)) << "," << format_double(report.closeness_c(u))
            << "," << format_double(report.betweenness_c(u)) << ","
            << format_double(report.rw_closeness_c(u)) << ","
            << format_double(report.rw_betweenness_c(u)) << ","
            << format_double(report.mfpt_from_hub(u)) << "\n";
    }
    if (!out)
        throw IoError("write_centrality_csv: write failed for " + path.string());
}

} // namespace qsearch
