#pragma once

#include "qsearch/multigraph.hpp"

#include <cstdint>

namespace qsearch {

// Bollobas linearized-chord-diagram construction: micro-nodes are added one at
// a time, each with a single edge attached preferentially by current degree
// (the newcomer attaches to itself with probability 1/(2u-1)); consecutive
// blocks of m micro-nodes are contracted into one node, intra-block edges
// becoming self loops. Output has exactly n*m edges and power-law exponent 3.
Multigraph generate_lcd(int n, int m, std::uint64_t seed);

// Same process with additive initial attractiveness a = m*(beta - 3) per node
// (a/m per micro-node), which tunes the degree exponent to beta. beta == 3
// reduces to generate_lcd bit-for-bit under the same seed. Requires beta > 2.
Multigraph generate_with_exponent(int n, int m, double beta, std::uint64_t seed);

// Simple G(n, M) graph: edge_count distinct edges uniform without replacement,
// no self loops or parallel edges.
Multigraph generate_erdos_renyi(int n, std::int64_t edge_count, std::uint64_t seed);

} // namespace qsearch
