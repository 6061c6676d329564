#include "qsearch/edgelist.hpp"

#include "qsearch/errors.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace qsearch {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_edge_list(const std::filesystem::path& path, const Multigraph& g,
                     const EdgeListHeader& header) {
    if (header.n != g.n())
        throw std::invalid_argument("write_edge_list: header n does not match graph");
    std::ofstream out(path);
    if (!out)
        throw IoError("write_edge_list: cannot open " + path.string());
    out << "# multigraph n=" << header.n << " m=" << header.m << " beta="
        << format_double(header.beta) << " seed=" << header.seed << "\n";
    for (const auto& e : g.edges())
        out << e.u << " " << e.v << " " << e.mult << "\n";
    out.flush();
    if (!out)
        throw IoError("write_edge_list: write failed for " + path.string());
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("read_edge_list: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line))
        throw IoError("read_edge_list: empty file " + path.string());

    EdgeListHeader header;
    {
        int n = 0, m = 0;
        double beta = 0.0;
        std::uint64_t seed = 0;
        if (std::sscanf(line.c_str(), "# multigraph n=%d m=%d beta=%lf seed=%" SCNu64, &n, &m,
                        &beta, &seed) != 4)
            throw IoError("read_edge_list: malformed header in " + path.string());
        header = {n, m, beta, seed};
    }

    std::vector<MultiEdge> edges;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        MultiEdge e{};
        if (!(row >> e.u >> e.v >> e.mult))
            throw IoError("read_edge_list: malformed edge line in " + path.string());
        edges.push_back(e);
    }
    return EdgeListFile{Multigraph(header.n, std::move(edges)), header};
}

} // namespace qsearch
