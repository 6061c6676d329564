#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

namespace qsearch {

// One undirected edge with multiplicity; u <= v, u == v is a self loop.
struct MultiEdge {
    int u;
    int v;
    std::int64_t mult;

    friend bool operator==(const MultiEdge&, const MultiEdge&) = default;
};

// Undirected multigraph: self loops and parallel edges carry weight. The
// adjacency matrix stores the parallel-edge count off the diagonal and the
// self-loop count on the diagonal; the graph degree counts each self loop
// twice, so sum(degree) == 2 * total_multiplicity().
class Multigraph {
public:
    // Normalizes: flips u > v, sorts, merges duplicates, validates ranges.
    Multigraph(int n, std::vector<MultiEdge> edges);

    // Counts multiplicities from raw endpoint pairs (generator output).
    static Multigraph from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);

    int n() const { return n_; }
    const std::vector<MultiEdge>& edges() const { return edges_; }
    std::int64_t total_multiplicity() const { return total_mult_; }

    std::int64_t degree(int u) const { return degrees_.at(u); }
    const std::vector<std::int64_t>& degrees() const { return degrees_; }
    std::int64_t loops(int u) const { return loops_.at(u); }

    // A_uv: parallel-edge count for u != v, self-loop count for u == v.
    std::int64_t multiplicity(int u, int v) const;

    // Distinct neighbors with multiplicities, self excluded, ascending.
    const std::vector<std::pair<int, std::int64_t>>& adjacent(int u) const {
        return adj_.at(u);
    }

    Eigen::MatrixXd adjacency_matrix() const;

    bool is_connected() const;

private:
    int n_ = 0;
    std::vector<MultiEdge> edges_;
    std::int64_t total_mult_ = 0;
    std::vector<std::int64_t> degrees_;
    std::vector<std::int64_t> loops_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> adj_;
};

} // namespace qsearch
