#pragma once

#include "qsearch/multigraph.hpp"

#include <cstdint>
#include <filesystem>

namespace qsearch {

// Header line of the text edge-list format:
//   # multigraph n=<N> m=<m> beta=<beta> seed=<seed>
// followed by one "u v mult" triple per line, 0-indexed, u <= v, sorted.
// write(read(file)) reproduces the file byte for byte.
struct EdgeListHeader {
    int n = 0;
    int m = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
};

struct EdgeListFile {
    Multigraph graph;
    EdgeListHeader header;
};

void write_edge_list(const std::filesystem::path& path, const Multigraph& g,
                     const EdgeListHeader& header);

EdgeListFile read_edge_list(const std::filesystem::path& path);

// Doubles formatted with 17 significant digits: value-exact on reparse and
// byte-stable across runs.
std::string format_double(double x);

} // namespace qsearch
