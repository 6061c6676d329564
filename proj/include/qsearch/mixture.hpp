#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace qsearch {

struct MixtureComponent {
    double p;     // weight
    double mu;    // mean of ln T
    double sigma; // std of ln T
};

struct MixtureFit {
    int k = 0;
    std::vector<MixtureComponent> components; // sorted by ascending mu
    double loglik = 0.0;
    double bic = 0.0;
};

struct MixtureOptions {
    int restarts = 50;
    int max_iter = 2000;
    double tol = 1e-8;       // stop when the log-likelihood improves less
    double min_sigma = 1e-4; // smaller marks the restart degenerate
    std::uint64_t seed = 20191109;
};

// EM for a k-component Gaussian mixture on ln(samples). Restart 0 starts from
// a quantile split, the rest from random data points; the best converged
// restart wins. Samples are sorted internally, so the fit is order-invariant.
// Throws DegenerateComponentError when every restart collapses a component and
// InsufficientDataError below 10*k samples.
MixtureFit fit_lognormal_mixture(const std::vector<double>& samples, int k,
                                 const MixtureOptions& opt = {});

// Minimum-BIC fit over k = 1..k_max (k limited to samples/10).
MixtureFit select_components(const std::vector<double>& samples, int k_max,
                             const MixtureOptions& opt = {});

// Posterior responsibilities of each component for one sample value.
Eigen::VectorXd posterior(const MixtureFit& fit, double sample);

// Mixture density f(T) = sum_i p_i g(T; mu_i, sigma_i) with lognormal g.
double mixture_density(const MixtureFit& fit, double t);

} // namespace qsearch
