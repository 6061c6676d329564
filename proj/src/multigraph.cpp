#include "qsearch/multigraph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qsearch {

Multigraph::Multigraph(int n, std::vector<MultiEdge> edges) : n_(n) {
    if (n < 1)
        throw std::invalid_argument("Multigraph: node count must be >= 1");
    for (auto& e : edges) {
        if (e.u > e.v)
            std::swap(e.u, e.v);
        if (e.u < 0 || e.v >= n)
            throw std::invalid_argument("Multigraph: edge endpoint out of range");
        if (e.mult < 1)
            throw std::invalid_argument("Multigraph: edge multiplicity must be >= 1");
    }
    std::sort(edges.begin(), edges.end(), [](const MultiEdge& a, const MultiEdge& b) {
        return std::tie(a.u, a.v) < std::tie(b.u, b.v);
    });
    edges_.reserve(edges.size());
    for (const auto& e : edges) {
        if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v)
            edges_.back().mult += e.mult;
        else
            edges_.push_back(e);
    }

    degrees_.assign(n_, 0);
    loops_.assign(n_, 0);
    adj_.assign(n_, {});
    for (const auto& e : edges_) {
        total_mult_ += e.mult;
        if (e.u == e.v) {
            loops_[e.u] += e.mult;
            degrees_[e.u] += 2 * e.mult;
        } else {
            degrees_[e.u] += e.mult;
            degrees_[e.v] += e.mult;
            adj_[e.u].emplace_back(e.v, e.mult);
            adj_[e.v].emplace_back(e.u, e.mult);
        }
    }
    for (auto& nbrs : adj_)
        std::sort(nbrs.begin(), nbrs.end());
}

Multigraph Multigraph::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<MultiEdge> edges;
    edges.reserve(pairs.size());
    for (const auto& [u, v] : pairs)
        edges.push_back({u, v, 1});
    return Multigraph(n, std::move(edges));
}

std::int64_t Multigraph::multiplicity(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("Multigraph::multiplicity: node out of range");
    if (u == v)
        return loops_[u];
    const auto& nbrs = adj_[u];
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), std::make_pair(v, std::int64_t{0}));
    if (it != nbrs.end() && it->first == v)
        return it->second;
    return 0;
}

Eigen::MatrixXd Multigraph::adjacency_matrix() const {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
    for (const auto& e : edges_) {
        if (e.u == e.v) {
            a(e.u, e.u) = static_cast<double>(e.mult);
        } else {
            a(e.u, e.v) = static_cast<double>(e.mult);
            a(e.v, e.u) = static_cast<double>(e.mult);
        }
    }
    return a;
}

bool Multigraph::is_connected() const {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (const auto& [v, mult] : adj_[u]) {
            (void)mult;
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n_;
}

} // namespace qsearch
