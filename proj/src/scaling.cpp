#include "qsearch/scaling.hpp"

#include "qsearch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qsearch {

ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& pairs, ScalingMode mode) {
    if (pairs.size() < 3)
        throw InsufficientDataError("fit_scaling: need at least 3 (N, value) pairs");
    std::set<double> distinct;
    for (const auto& [n, v] : pairs) {
        if (!(n > 0.0))
            throw std::invalid_argument("fit_scaling: N must be positive");
        if (mode == ScalingMode::log_value && !(v > 0.0))
            throw std::invalid_argument("fit_scaling: values must be positive in log-value mode");
        distinct.insert(n);
    }
    if (distinct.size() < 3)
        throw InsufficientDataError("fit_scaling: need at least 3 distinct N");

    const int n = static_cast<int>(pairs.size());
    Eigen::VectorXd x(n), y(n);
    for (int i = 0; i < n; ++i) {
        x(i) = std::log(pairs[i].first);
        y(i) = mode == ScalingMode::log_value ? std::log(pairs[i].second) : pairs[i].second;
    }
    const double mx = x.mean();
    const double my = y.mean();
    const double sxx = (x.array() - mx).square().sum();
    const double sxy = ((x.array() - mx) * (y.array() - my)).sum();
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    const double ssr = (y.array() - intercept - slope * x.array()).square().sum();
    const double se = std::sqrt(ssr / (n - 2) / sxx);

    ScalingFit fit;
    fit.alpha = slope;
    fit.intercept = intercept;
    fit.stderr_alpha = se;
    fit.points = n;
    fit.is_const = std::abs(slope) < 2.0 * se;
    return fit;
}

LogHistogram log_histogram(const std::vector<double>& samples, int bin_count) {
    if (samples.empty())
        throw std::invalid_argument("log_histogram: no samples");
    if (bin_count < 1)
        throw std::invalid_argument("log_histogram: bin_count must be >= 1");
    for (const double s : samples)
        if (!(s > 0.0))
            throw std::invalid_argument("log_histogram: samples must be positive");

    double lo = std::log(*std::min_element(samples.begin(), samples.end()));
    double hi = std::log(*std::max_element(samples.begin(), samples.end()));
    if (lo == hi) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double width = (hi - lo) / bin_count;

    LogHistogram h;
    h.edges.resize(bin_count + 1);
    for (int b = 0; b <= bin_count; ++b)
        h.edges(b) = lo + b * width;
    h.density = Eigen::VectorXd::Zero(bin_count);
    for (const double s : samples) {
        int b = static_cast<int>((std::log(s) - lo) / width);
        b = std::clamp(b, 0, bin_count - 1);
        h.density(b) += 1.0;
    }
    h.total = static_cast<std::int64_t>(samples.size());
    h.density /= static_cast<double>(samples.size()) * width;
    return h;
}

} // namespace qsearch
