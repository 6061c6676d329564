#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace qsearch {

enum class ScalingMode {
    log_value,   // regress ln(value) on ln N (sigma_i, p_i, mean T)
    raw_log_mean // regress value on ln N (mu_i is already a mean of ln T)
};

struct ScalingFit {
    double alpha = 0.0;
    double intercept = 0.0;
    double stderr_alpha = 0.0;
    int points = 0;
    bool is_const = false; // |alpha| < 2 * stderr
};

// Least-squares exponent of value ~ N^alpha from (N, value) pairs; needs at
// least 3 distinct N.
ScalingFit fit_scaling(const std::vector<std::pair<double, double>>& pairs, ScalingMode mode);

struct LogHistogram {
    Eigen::VectorXd edges;   // bin edges in ln T, size bins + 1
    Eigen::VectorXd density; // normalized so sum(density * width) == 1
    std::int64_t total = 0;
};

// Equal-width bins in ln T, density-normalized.
LogHistogram log_histogram(const std::vector<double>& samples, int bin_count);

} // namespace qsearch
