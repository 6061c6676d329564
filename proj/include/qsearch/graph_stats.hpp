#pragma once

#include "qsearch/multigraph.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace qsearch {

// (degree, count) pairs ascending by degree; counts sum to n. Self loops
// contribute 2 to the degree.
struct DegreeHistogram {
    std::vector<std::pair<std::int64_t, std::int64_t>> bins;
};

DegreeHistogram degree_histogram(const Multigraph& g);

struct PowerLawFit {
    double beta_hat = 0.0;
    std::int64_t kmin = 0;
    double goodness = 0.0; // RMS residual of log density over the log bins
    int bins_used = 0;
};

// Least-squares slope of log Pi(k) against log k over geometric bins of the
// tail k >= kmin. Each bin contributes the centroid of its (log k, log Pi)
// points, which keeps the estimator exact on noiseless power-law input and
// stops sparse tail degrees from dominating the fit.
PowerLawFit fit_power_law(const DegreeHistogram& h, std::int64_t kmin, int bins_per_decade = 8);

// Unweighted hop distances from source (multiplicities and loops ignored);
// unreachable nodes get -1.
std::vector<int> bfs_distances(const Multigraph& g, int source);

// Node of maximum graph degree, ties broken by lowest index.
int hub_node(const Multigraph& g);

} // namespace qsearch
