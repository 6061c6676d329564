#include "qsearch/dpr1.hpp"

#include "qsearch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qsearch {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

Dpr1::Dpr1(Eigen::VectorXd d, Eigen::VectorXd z, double rho)
    : d_(std::move(d)), z_(std::move(z)), rho_(rho) {
    const int n = static_cast<int>(d_.size());
    if (n < 1 || z_.size() != n)
        throw std::invalid_argument("Dpr1: d and z must be non-empty and equal length");
    if (!d_.allFinite() || !z_.allFinite() || !std::isfinite(rho_))
        throw std::invalid_argument("Dpr1: non-finite input");
    if (!(rho_ < 0.0))
        throw std::invalid_argument("Dpr1: rho must be negative");
    for (int i = 1; i < n; ++i)
        if (d_(i) < d_(i - 1))
            throw std::invalid_argument("Dpr1: d must be ascending");

    const double znorm2 = z_.squaredNorm();
    scale_ = std::max(std::abs(d_(0)), std::abs(d_(n - 1))) + std::abs(rho_) * znorm2;
    const double tol_d = 8.0 * kEps * std::max(scale_, 1e-300);
    const double tol_z2 = 64.0 * kEps * kEps * znorm2;

    // Cluster near-equal poles; each cluster keeps one secular direction with
    // the aggregated z mass, the rest deflate at their original positions.
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && d_(j) - d_(j - 1) <= tol_d)
            ++j;
        double mass = 0.0;
        double center = 0.0;
        for (int k = i; k < j; ++k) {
            mass += z_(k) * z_(k);
            center += d_(k);
        }
        center /= static_cast<double>(j - i);
        if (mass <= tol_z2) {
            for (int k = i; k < j; ++k)
                deflated_.push_back(d_(k));
        } else {
            poles_.push_back(center);
            weights_.push_back(mass);
            mass_ += mass;
            for (int k = i + 1; k < j; ++k)
                deflated_.push_back(d_(k));
        }
        i = j;
    }
    roots_.assign(poles_.size(), Root{});
}

std::pair<double, double> Dpr1::secular(double anchor, double t) const {
    double f = 1.0;
    double fp = 0.0;
    for (size_t c = 0; c < poles_.size(); ++c) {
        double den = (poles_[c] - anchor) - t;
        if (den == 0.0)
            den = std::copysign(1e-300, rho_);
        const double term = weights_[c] / den;
        f += rho_ * term;
        fp += rho_ * term / den;
    }
    return {f, fp};
}

void Dpr1::solve_root(int j) {
    if (roots_[j].solved)
        return;

    double anchor, tlo, thi;
    if (j == 0) {
        // Sole root below the spectrum: in [d_min + rho*|z|^2, pole_0).
        anchor = poles_[0];
        tlo = (d_(0) - anchor) + rho_ * z_.squaredNorm() - 16.0 * kEps * scale_;
        thi = 0.0;
    } else {
        const double lo = poles_[j - 1];
        const double hi = poles_[j];
        const double mid = 0.5 * (lo + hi);
        // f is decreasing across the interval: positive half is nearer lo.
        const bool right = secular(mid, 0.0).first > 0.0;
        anchor = right ? hi : lo;
        if (right) {
            tlo = mid - hi;
            thi = 0.0;
        } else {
            tlo = 0.0;
            thi = mid - lo;
        }
    }

    double t = 0.5 * (tlo + thi);
    for (int iter = 0; iter < 200; ++iter) {
        const auto [f, fp] = secular(anchor, t);
        if (f > 0.0)
            tlo = t;
        else
            thi = t;
        const double width = thi - tlo;
        const double reft = std::max({std::abs(tlo), std::abs(thi), kEps * scale_});
        if (width <= 4.0 * kEps * reft || f == 0.0)
            break;
        double tn = (fp != 0.0) ? t - f / fp : t;
        if (!(tn > tlo && tn < thi))
            tn = 0.5 * (tlo + thi);
        t = tn;
    }

    roots_[j] = {anchor, t, true};
}

double Dpr1::root_value(int j) {
    if (j < 0 || j >= root_count())
        throw std::invalid_argument("Dpr1::root_value: index out of range");
    solve_root(j);
    return roots_[j].anchor + roots_[j].offset;
}

double Dpr1::root_weight(int j) { return root_project(z_, j); }

double Dpr1::root_project(const Eigen::VectorXd& x, int j) {
    if (x.size() != d_.size())
        throw std::invalid_argument("Dpr1::root_project: dimension mismatch");
    if (j < 0 || j >= root_count())
        throw std::invalid_argument("Dpr1::root_project: index out of range");
    solve_root(j);
    const double anchor = roots_[j].anchor;
    const double t = roots_[j].offset;
    double dot = 0.0;
    double norm2 = 0.0;
    for (int i = 0; i < d_.size(); ++i) {
        double den = (d_(i) - anchor) - t;
        if (den == 0.0)
            den = std::copysign(1e-300, rho_);
        const double ui = z_(i) / den;
        dot += ui * x(i);
        norm2 += ui * ui;
    }
    return dot / std::sqrt(norm2);
}

Eigen::VectorXd Dpr1::root_vector(int j) {
    if (j < 0 || j >= root_count())
        throw std::invalid_argument("Dpr1::root_vector: index out of range");
    solve_root(j);
    const double anchor = roots_[j].anchor;
    const double t = roots_[j].offset;
    Eigen::VectorXd u(d_.size());
    for (int i = 0; i < d_.size(); ++i) {
        double den = (d_(i) - anchor) - t;
        if (den == 0.0)
            den = std::copysign(1e-300, rho_);
        u(i) = z_(i) / den;
    }
    u.normalize();
    return u;
}

Dpr1::LowestTwo Dpr1::lowest_two() {
    if (root_count() == 0)
        throw DegenerateEigenvalueError("Dpr1::lowest_two: z has no mass, matrix is diagonal");
    if (size() < 2)
        throw std::invalid_argument("Dpr1::lowest_two: need dimension >= 2");
    const double e0 = root_value(0);
    double e1 = std::numeric_limits<double>::infinity();
    bool e1_is_root = false;
    if (root_count() >= 2) {
        e1 = root_value(1);
        e1_is_root = true;
    }
    if (!deflated_.empty()) {
        const double dmin = *std::min_element(deflated_.begin(), deflated_.end());
        if (dmin < e1) {
            e1 = dmin;
            e1_is_root = false;
        }
    }
    return {e0, e1, e1_is_root};
}

Eigen::VectorXd Dpr1::eigenvalues() {
    std::vector<double> all;
    all.reserve(static_cast<size_t>(size()));
    for (int j = 0; j < root_count(); ++j)
        all.push_back(root_value(j));
    all.insert(all.end(), deflated_.begin(), deflated_.end());
    std::sort(all.begin(), all.end());
    return Eigen::Map<Eigen::VectorXd>(all.data(), static_cast<Eigen::Index>(all.size()));
}

} // namespace qsearch
