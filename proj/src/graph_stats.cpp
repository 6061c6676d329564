#include "qsearch/graph_stats.hpp"

#include "qsearch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace qsearch {

DegreeHistogram degree_histogram(const Multigraph& g) {
    std::map<std::int64_t, std::int64_t> counts;
    for (int u = 0; u < g.n(); ++u)
        ++counts[g.degree(u)];
    DegreeHistogram h;
    h.bins.assign(counts.begin(), counts.end());
    return h;
}

PowerLawFit fit_power_law(const DegreeHistogram& h, std::int64_t kmin, int bins_per_decade) {
    if (kmin < 1)
        throw std::invalid_argument("fit_power_law: kmin must be >= 1");
    if (bins_per_decade < 1)
        throw std::invalid_argument("fit_power_law: bins_per_decade must be >= 1");

    std::int64_t total = 0;
    std::int64_t kmax = kmin;
    int distinct = 0;
    for (const auto& [k, c] : h.bins) {
        total += c;
        if (k >= kmin && c > 0) {
            ++distinct;
            kmax = std::max(kmax, k);
        }
    }
    if (distinct < 3)
        throw InsufficientDataError("fit_power_law: need at least 3 distinct degrees >= kmin");

    // Geometric bins over [kmin, kmax]; the bin mass is divided by the number
    // of integer degrees the bin spans, so sparse tail degrees are diluted
    // instead of flattening the fit.
    const double ratio = std::pow(10.0, 1.0 / bins_per_decade);
    std::vector<std::pair<double, double>> binned; // (mean log k, log density)
    double lo = static_cast<double>(kmin);
    while (lo <= static_cast<double>(kmax)) {
        const double hi = lo * ratio;
        const auto k_lo = static_cast<std::int64_t>(std::ceil(lo));
        const auto k_hi = static_cast<std::int64_t>(std::ceil(hi)) - 1;
        const std::int64_t width = k_hi - k_lo + 1;
        if (width > 0) {
            std::int64_t mass = 0;
            for (const auto& [k, c] : h.bins)
                if (k >= k_lo && k <= k_hi)
                    mass += c;
            if (mass > 0) {
                double mean_log_k = 0.0;
                for (std::int64_t k = k_lo; k <= k_hi; ++k)
                    mean_log_k += std::log(static_cast<double>(k));
                mean_log_k /= static_cast<double>(width);
                const double density = static_cast<double>(mass) /
                                       (static_cast<double>(width) * static_cast<double>(total));
                binned.emplace_back(mean_log_k, std::log(density));
            }
        }
        lo = hi;
    }
    if (binned.size() < 3)
        throw InsufficientDataError("fit_power_law: fewer than 3 occupied log bins");

    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : binned) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(binned.size());
    my /= static_cast<double>(binned.size());
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : binned) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double ss = 0.0;
    for (const auto& [x, y] : binned) {
        const double r = y - (intercept + slope * x);
        ss += r * r;
    }

    PowerLawFit fit;
    fit.beta_hat = -slope;
    fit.kmin = kmin;
    fit.goodness = std::sqrt(ss / static_cast<double>(binned.size()));
    fit.bins_used = static_cast<int>(binned.size());
    return fit;
}

std::vector<int> bfs_distances(const Multigraph& g, int source) {
    if (source < 0 || source >= g.n())
        throw std::invalid_argument("bfs_distances: source out of range");
    std::vector<int> dist(g.n(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (const auto& [v, mult] : g.adjacent(u)) {
            (void)mult;
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

int hub_node(const Multigraph& g) {
    int best = 0;
    for (int u = 1; u < g.n(); ++u)
        if (g.degree(u) > g.degree(best))
            best = u;
    return best;
}

} // namespace qsearch
