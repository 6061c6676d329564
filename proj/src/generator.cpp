#include "qsearch/generator.hpp"

#include "qsearch/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_set>
#include <vector>

namespace qsearch {

namespace {

// Fenwick tree over attachment weights; supports point add and sampling the
// smallest index whose prefix sum exceeds a uniform draw.
class WeightTree {
public:
    explicit WeightTree(int capacity) : tree_(static_cast<size_t>(capacity) + 1, 0.0) {}

    void add(int i, double w) {
        for (int j = i + 1; j < static_cast<int>(tree_.size()); j += j & -j)
            tree_[j] += w;
    }

    double total() const {
        double s = 0.0;
        for (int j = static_cast<int>(tree_.size()) - 1; j > 0; j -= j & -j)
            s += tree_[j];
        return s;
    }

    // Smallest i with prefix_sum(i) > x; x must lie in [0, total).
    int sample(double x) const {
        int pos = 0;
        int mask = 1;
        while (2 * mask < static_cast<int>(tree_.size()))
            mask *= 2;
        for (; mask > 0; mask /= 2) {
            const int next = pos + mask;
            if (next < static_cast<int>(tree_.size()) && tree_[next] <= x) {
                x -= tree_[next];
                pos = next;
            }
        }
        return pos;
    }

private:
    std::vector<double> tree_;
};

} // namespace

Multigraph generate_with_exponent(int n, int m, double beta, std::uint64_t seed) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("generate_with_exponent: need n >= 1 and m >= 1");
    if (!(beta > 2.0))
        throw std::invalid_argument("generate_with_exponent: beta must be > 2");
    const std::int64_t micro_total = static_cast<std::int64_t>(n) * m;
    if (micro_total > std::numeric_limits<int>::max())
        throw std::invalid_argument("generate_with_exponent: n*m exceeds supported index range");

    // Attractiveness per micro-node; contracted nodes carry m * attract = m(beta-3).
    const double attract = beta - 3.0;
    const int steps = static_cast<int>(micro_total);

    SplitMix64 rng(seed);
    WeightTree weights(steps);
    std::vector<std::pair<int, int>> micro_edges;
    micro_edges.reserve(static_cast<size_t>(steps));

    for (int u = 0; u < steps; ++u) {
        // Newcomer enters with weight 1 + attract (its half-edge already counted),
        // matching the 1/(2u-1) self-attachment rule at attract == 0.
        weights.add(u, 1.0 + attract);
        const double total = weights.total();
        // At the u-th draw (1-based) the total is 2u-1 + u*attract.
        assert(std::abs(total - (2.0 * (u + 1) - 1.0 + (u + 1) * attract)) <
               1e-9 * (1.0 + total));
        int target = weights.sample(rng.next_double() * total);
        if (target > u)
            target = u; // rounding guard at the upper boundary
        micro_edges.emplace_back(u, target);
        weights.add(target, 1.0); // d(target) += 1 (self loop: newcomer reaches degree 2)
    }

    std::vector<std::pair<int, int>> contracted;
    contracted.reserve(micro_edges.size());
    for (const auto& [a, b] : micro_edges)
        contracted.emplace_back(a / m, b / m);
    return Multigraph::from_pairs(n, contracted);
}

Multigraph generate_lcd(int n, int m, std::uint64_t seed) {
    return generate_with_exponent(n, m, 3.0, seed);
}

namespace {

// Decode a flat index in [0, n(n-1)/2) to the pair (u, v), u < v, ordered by u then v.
std::pair<int, int> decode_pair(std::int64_t idx, int n) {
    int lo = 0, hi = n - 1;
    // offset(u) = number of pairs with first element < u
    auto offset = [n](std::int64_t u) { return u * (2 * n - u - 1) / 2; };
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (offset(mid) <= idx)
            lo = mid;
        else
            hi = mid - 1;
    }
    const int u = lo;
    const int v = u + 1 + static_cast<int>(idx - offset(u));
    return {u, v};
}

} // namespace

Multigraph generate_erdos_renyi(int n, std::int64_t edge_count, std::uint64_t seed) {
    if (n < 2)
        throw std::invalid_argument("generate_erdos_renyi: need n >= 2");
    const std::int64_t possible = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (edge_count < 0 || edge_count > possible)
        throw std::invalid_argument("generate_erdos_renyi: infeasible edge_count");

    // Floyd's algorithm: uniform edge_count-subset of [0, possible) in edge_count draws.
    SplitMix64 rng(seed);
    std::vector<std::int64_t> chosen;
    chosen.reserve(static_cast<size_t>(edge_count));
    std::unordered_set<std::int64_t> seen;
    seen.reserve(static_cast<size_t>(edge_count) * 2);
    for (std::int64_t j = possible - edge_count; j < possible; ++j) {
        const auto t = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(j + 1)));
        const std::int64_t pick = seen.count(t) ? j : t;
        seen.insert(pick);
        chosen.push_back(pick);
    }

    std::vector<MultiEdge> edges;
    edges.reserve(chosen.size());
    for (const auto idx : chosen) {
        const auto [u, v] = decode_pair(idx, n);
        edges.push_back({u, v, 1});
    }
    return Multigraph(n, std::move(edges));
}

} // namespace qsearch
