#pragma once

#include "qsearch/multigraph.hpp"

#include <Eigen/Dense>
#include <filesystem>

namespace qsearch {

// Row sums of the weighted adjacency (diagonal counted once) over N-1.
Eigen::VectorXd degree_centrality(const Multigraph& g);

// Absolute components of the Perron vector of the adjacency matrix.
Eigen::VectorXd eigenvector_centrality(const Multigraph& g);

// (N-1) / sum of hop distances; multiplicities and loops ignored.
Eigen::VectorXd closeness_centrality(const Multigraph& g);

// Shortest-path betweenness over unordered pairs (Brandes accumulation) on
// the simple-graph projection: parallel edges do not multiply path counts,
// self loops are ignored.
Eigen::VectorXd betweenness_centrality(const Multigraph& g);

// Mean first passage times H(j, target) of the classical random walk that
// picks an incident edge end uniformly: P_jk = A_jk/deg(j) for k != j and
// P_jj = 2 A_jj / deg(j). Solved as a dense linear system; H(target) = 0.
Eigen::VectorXd mfpt(const Multigraph& g, int target);

// All-pairs H(i, j) through the fundamental matrix of the walk: one dense
// solve instead of one per target. Row = start node, column = target.
Eigen::MatrixXd mfpt_all(const Multigraph& g);

// N / sum_j H(j, w).
Eigen::VectorXd rw_closeness_centrality(const Multigraph& g);

// Newman current-flow betweenness on the weighted simple-graph projection
// (multiplicities as conductances, loops dropped): raw sum over unordered
// source-sink pairs, endpoints contributing unit throughput.
Eigen::VectorXd rw_betweenness_centrality(const Multigraph& g);

// Pearson r of (ln x, ln y); all entries must be strictly positive.
double pearson_loglog(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

struct CentralityReport {
    Eigen::VectorXd degree_c;
    Eigen::VectorXd eigen_c;
    Eigen::VectorXd closeness_c;
    Eigen::VectorXd betweenness_c;
    Eigen::VectorXd rw_closeness_c;
    Eigen::VectorXd rw_betweenness_c;
    Eigen::VectorXd mfpt_from_hub; // H(hub, j)
    int hub = 0;
};

// All six measures plus first-passage times from the hub. The optional Perron
// vector skips a second adjacency diagonalization when the caller has one.
CentralityReport centrality_report(const Multigraph& g);
CentralityReport centrality_report(const Multigraph& g, const Eigen::VectorXd& perron);

// One row per node: node, degree, C_d, C_e, C_c, C_b, C_rc, C_rb, H_hub_to_node.
void write_centrality_csv(const std::filesystem::path& path, const Multigraph& g,
                          const CentralityReport& report);

} // namespace qsearch
