// Independent reference implementations used only by tests: deliberately
// different algorithms from the library paths they check.
#pragma once

#include "qsearch/multigraph.hpp"
#include "qsearch/rng.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

namespace oracles {

// Fourth-order Runge-Kutta integration of i d/dt psi = H psi.
inline Eigen::VectorXcd rk4_evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi0,
                                   double t, int steps) {
    const std::complex<double> mi(0.0, -1.0);
    const double dt = t / steps;
    Eigen::VectorXcd psi = psi0;
    for (int s = 0; s < steps; ++s) {
        const Eigen::VectorXcd k1 = mi * (h * psi);
        const Eigen::VectorXcd k2 = mi * (h * (psi + 0.5 * dt * k1));
        const Eigen::VectorXcd k3 = mi * (h * (psi + 0.5 * dt * k2));
        const Eigen::VectorXcd k4 = mi * (h * (psi + dt * k3));
        psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

// Transition probability of a two-level Hamiltonian [[a, c], [c, b]] starting
// from site 0: |<1|exp(-iHt)|0>|^2 via the Pauli decomposition.
inline double two_level_transition(double a, double b, double c, double t) {
    const double hz = 0.5 * (a - b);
    const double omega = std::sqrt(hz * hz + c * c);
    if (omega == 0.0)
        return 0.0;
    const double s = std::sin(omega * t);
    return (c * c) / (omega * omega) * s * s;
}

// Betweenness from the definition: count shortest paths through each node via
// all-pairs distances (Floyd-Warshall) and path-count products.
inline Eigen::VectorXd brute_betweenness(const qsearch::Multigraph& g) {
    const int n = g.n();
    constexpr double inf = 1e18;
    Eigen::MatrixXd dist = Eigen::MatrixXd::Constant(n, n, inf);
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u) {
        dist(u, u) = 0;
        sigma(u, u) = 1;
    }
    for (const auto& e : g.edges()) {
        if (e.u == e.v)
            continue;
        dist(e.u, e.v) = dist(e.v, e.u) = 1;
        sigma(e.u, e.v) = sigma(e.v, e.u) = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j || i == k || j == k)
                    continue;
                const double via = dist(i, k) + dist(k, j);
                if (via < dist(i, j)) {
                    dist(i, j) = via;
                    sigma(i, j) = sigma(i, k) * sigma(k, j);
                } else if (via == dist(i, j) && dist(i, k) < inf && dist(k, j) < inf) {
                    sigma(i, j) += sigma(i, k) * sigma(k, j);
                }
            }

    Eigen::VectorXd bc = Eigen::VectorXd::Zero(n);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (i == v || j == v)
                    continue;
                if (dist(i, v) + dist(v, j) == dist(i, j) && sigma(i, j) > 0)
                    bc(v) += sigma(i, v) * sigma(v, j) / sigma(i, j);
            }
    return bc;
}

// Monte Carlo mean first passage time with the edge-end convention: from node
// j, stay with probability 2*loops/deg and move to a neighbor proportionally
// to edge multiplicity.
inline double mc_mfpt(const qsearch::Multigraph& g, int from, int target, int walks,
                      std::uint64_t seed) {
    qsearch::SplitMix64 rng(seed);
    double total_steps = 0.0;
    for (int walk = 0; walk < walks; ++walk) {
        int u = from;
        while (u != target) {
            const auto deg = static_cast<std::uint64_t>(g.degree(u));
            auto pick = rng.next_below(deg); // edge-end index
            const std::uint64_t stay = 2 * static_cast<std::uint64_t>(g.loops(u));
            total_steps += 1.0;
            if (pick < stay)
                continue;
            pick -= stay;
            for (const auto& [v, mult] : g.adjacent(u)) {
                if (pick < static_cast<std::uint64_t>(mult)) {
                    u = v;
                    break;
                }
                pick -= static_cast<std::uint64_t>(mult);
            }
        }
    }
    return total_steps / walks;
}

// Power iteration for the leading eigenpair of a non-negative matrix.
inline std::pair<double, Eigen::VectorXd> power_iteration(const Eigen::MatrixXd& a, int iters) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(a.rows());
    v.normalize();
    double lambda = 0.0;
    for (int i = 0; i < iters; ++i) {
        v = a * v;
        lambda = v.norm();
        v /= lambda;
    }
    return {lambda, v};
}

// All connected labeled simple graphs on n nodes (n small), as edge lists.
inline std::vector<qsearch::Multigraph> all_connected_graphs(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            slots.emplace_back(u, v);
    std::vector<qsearch::Multigraph> graphs;
    const std::uint64_t limit = 1ULL << slots.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        std::vector<qsearch::MultiEdge> edges;
        for (size_t b = 0; b < slots.size(); ++b)
            if (mask & (1ULL << b))
                edges.push_back({slots[b].first, slots[b].second, 1});
        qsearch::Multigraph g(n, std::move(edges));
        if (g.is_connected())
            graphs.push_back(std::move(g));
    }
    return graphs;
}

// Uniform random connected simple graph with a fixed edge count.
inline qsearch::Multigraph random_connected_graph(int n, int edges, qsearch::SplitMix64& rng) {
    for (;;) {
        std::vector<std::pair<int, int>> slots;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                slots.emplace_back(u, v);
        // partial Fisher-Yates for a uniform edge subset
        for (int i = 0; i < edges; ++i) {
            const auto j =
                i + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(slots.size() - i)));
            std::swap(slots[i], slots[j]);
        }
        std::vector<qsearch::MultiEdge> list;
        for (int i = 0; i < edges; ++i)
            list.push_back({slots[i].first, slots[i].second, 1});
        qsearch::Multigraph g(n, std::move(list));
        if (g.is_connected())
            return g;
    }
}

} // namespace oracles
