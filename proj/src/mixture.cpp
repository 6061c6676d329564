#include "qsearch/mixture.hpp"

#include "qsearch/errors.hpp"
#include "qsearch/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace qsearch {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178; // ln sqrt(2 pi)

struct EmState {
    Eigen::VectorXd p, mu, sigma;
    double loglik = std::numeric_limits<double>::lowest();
    bool degenerate = false;
};

double log_normal_pdf(double x, double mu, double sigma) {
    const double z = (x - mu) / sigma;
    return -0.5 * z * z - std::log(sigma) - kLogSqrt2Pi;
}

// One EM run from the given initialization; x sorted ascending.
EmState run_em(const Eigen::VectorXd& x, EmState st, const MixtureOptions& opt) {
    const int n = static_cast<int>(x.size());
    const int k = static_cast<int>(st.p.size());
    Eigen::MatrixXd resp(n, k);

    double prev = std::numeric_limits<double>::lowest();
    for (int iter = 0; iter < opt.max_iter; ++iter) {
        if (st.sigma.minCoeff() < opt.min_sigma || st.p.minCoeff() < 1e-12) {
            st.degenerate = true;
            return st;
        }
        // E step with log-sum-exp.
        double loglik = 0.0;
        for (int i = 0; i < n; ++i) {
            double lmax = std::numeric_limits<double>::lowest();
            for (int j = 0; j < k; ++j) {
                resp(i, j) = std::log(st.p(j)) + log_normal_pdf(x(i), st.mu(j), st.sigma(j));
                lmax = std::max(lmax, resp(i, j));
            }
            double sum = 0.0;
            for (int j = 0; j < k; ++j)
                sum += std::exp(resp(i, j) - lmax);
            const double lse = lmax + std::log(sum);
            loglik += lse;
            for (int j = 0; j < k; ++j)
                resp(i, j) = std::exp(resp(i, j) - lse);
        }
        // EM never decreases the likelihood; a drop beyond roundoff is a bug.
        if (loglik < prev - 1e-7 * (1.0 + std::abs(prev)))
            throw NumericalError("fit_lognormal_mixture: log-likelihood decreased");
        st.loglik = loglik;
        const bool converged = loglik - prev < opt.tol && iter > 0;
        prev = loglik;

        // M step.
        for (int j = 0; j < k; ++j) {
            const double nj = resp.col(j).sum();
            if (nj < 1e-12) {
                st.degenerate = true;
                return st;
            }
            st.p(j) = nj / n;
            st.mu(j) = resp.col(j).dot(x) / nj;
            const double var = resp.col(j).dot((x.array() - st.mu(j)).square().matrix()) / nj;
            st.sigma(j) = std::sqrt(var);
        }
        if (converged)
            break;
    }
    if (st.sigma.minCoeff() < opt.min_sigma || st.p.minCoeff() < 1e-12)
        st.degenerate = true;
    return st;
}

} // namespace

MixtureFit fit_lognormal_mixture(const std::vector<double>& samples, int k,
                                 const MixtureOptions& opt) {
    if (k < 1)
        throw std::invalid_argument("fit_lognormal_mixture: k must be >= 1");
    if (static_cast<int>(samples.size()) < 10 * k)
        throw InsufficientDataError("fit_lognormal_mixture: need at least 10*k samples");
    for (const double s : samples)
        if (!(s > 0.0))
            throw std::invalid_argument("fit_lognormal_mixture: samples must be positive");

    Eigen::VectorXd x(samples.size());
    std::copy(samples.begin(), samples.end(), x.data());
    std::sort(x.data(), x.data() + x.size());
    x = x.array().log();
    const int n = static_cast<int>(x.size());

    const double global_mu = x.mean();
    const double global_sigma = std::sqrt((x.array() - global_mu).square().mean());

    SplitMix64 rng(opt.seed);
    EmState best;
    bool any_ok = false;
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        EmState st;
        st.p = Eigen::VectorXd::Constant(k, 1.0 / k);
        st.mu.resize(k);
        st.sigma.resize(k);
        if (r == 0) {
            // Quantile split: component j owns the j-th block of sorted data.
            for (int j = 0; j < k; ++j) {
                const int lo = j * n / k;
                const int hi = std::max(lo + 1, (j + 1) * n / k);
                const auto block = x.segment(lo, hi - lo);
                st.mu(j) = block.mean();
                st.sigma(j) = std::max(std::sqrt((block.array() - st.mu(j)).square().mean()),
                                       1e-3 * std::max(global_sigma, 1e-12));
            }
        } else {
            for (int j = 0; j < k; ++j)
                st.mu(j) = x(static_cast<int>(rng.next_below(n)));
            st.sigma.setConstant(std::max(global_sigma, 1e-12));
        }
        st.sigma = st.sigma.cwiseMax(1e-12);

        st = run_em(x, std::move(st), opt);
        if (!st.degenerate && st.loglik > best.loglik) {
            best = st;
            any_ok = true;
        }
    }
    if (!any_ok)
        throw DegenerateComponentError(
            "fit_lognormal_mixture: every restart collapsed a component (sigma < " +
            std::to_string(opt.min_sigma) + ")");

    std::vector<int> order(k);
    for (int j = 0; j < k; ++j)
        order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return best.mu(a) < best.mu(b); });

    MixtureFit fit;
    fit.k = k;
    for (const int j : order)
        fit.components.push_back({best.p(j), best.mu(j), best.sigma(j)});
    fit.loglik = best.loglik;
    fit.bic = -2.0 * best.loglik + (3.0 * k - 1.0) * std::log(static_cast<double>(n));
    return fit;
}

MixtureFit select_components(const std::vector<double>& samples, int k_max,
                             const MixtureOptions& opt) {
    if (k_max < 1)
        throw std::invalid_argument("select_components: k_max must be >= 1");
    MixtureFit best;
    bool have = false;
    std::string last_error = "select_components: no feasible k";
    for (int k = 1; k <= k_max; ++k) {
        if (static_cast<int>(samples.size()) < 10 * k)
            break;
        try {
            MixtureFit fit = fit_lognormal_mixture(samples, k, opt);
            if (!have || fit.bic < best.bic) {
                best = std::move(fit);
                have = true;
            }
        } catch (const DegenerateComponentError& e) {
            last_error = e.what(); // a k that collapses is skipped, not fatal
        }
    }
    if (!have) {
        if (static_cast<int>(samples.size()) < 10)
            throw InsufficientDataError("select_components: need at least 10 samples");
        throw DegenerateComponentError(last_error);
    }
    return best;
}

Eigen::VectorXd posterior(const MixtureFit& fit, double sample) {
    if (!(sample > 0.0))
        throw std::invalid_argument("posterior: sample must be positive");
    const double x = std::log(sample);
    Eigen::VectorXd lp(fit.k);
    for (int j = 0; j < fit.k; ++j)
        lp(j) = std::log(fit.components[j].p) +
                log_normal_pdf(x, fit.components[j].mu, fit.components[j].sigma);
    const double lmax = lp.maxCoeff();
    Eigen::VectorXd r = (lp.array() - lmax).exp();
    return r / r.sum();
}

double mixture_density(const MixtureFit& fit, double t) {
    if (!(t > 0.0))
        return 0.0;
    const double x = std::log(t);
    double f = 0.0;
    for (const auto& c : fit.components)
        f += c.p * std::exp(log_normal_pdf(x, c.mu, c.sigma)) / t;
    return f;
}

} // namespace qsearch
