#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qsearch/dpr1.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/generator.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/spectral.hpp"

#include <cmath>
#include <numbers>

using namespace qsearch;

namespace {

Eigen::MatrixXd random_symmetric(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            m(i, j) = m(j, i) = 2.0 * rng.next_double() - 1.0;
    return m;
}

Eigen::MatrixXd complete_adjacency(int n) {
    return Eigen::MatrixXd::Ones(n, n) - Eigen::MatrixXd::Identity(n, n);
}

} // namespace

TEST_CASE("eigendecompose small exact spectra") {
    Eigen::MatrixXd swap(2, 2);
    swap << 0, 1, 1, 0;
    const auto d = eigendecompose(swap);
    CHECK(d.eigenvalues(0) == doctest::Approx(-1.0));
    CHECK(d.eigenvalues(1) == doctest::Approx(1.0));

    const auto id5 = eigendecompose(Eigen::MatrixXd::Identity(5, 5));
    for (int i = 0; i < 5; ++i)
        CHECK(id5.eigenvalues(i) == doctest::Approx(1.0));

    const auto kn = eigendecompose(complete_adjacency(6));
    CHECK(kn.eigenvalues(5) == doctest::Approx(5.0));
    for (int i = 0; i < 5; ++i)
        CHECK(kn.eigenvalues(i) == doctest::Approx(-1.0));
}

TEST_CASE("eigendecompose reconstruction and orthonormality") {
    const Eigen::MatrixXd m = random_symmetric(24, 7);
    const auto d = eigendecompose(m);
    const Eigen::MatrixXd rebuilt =
        d.eigenvectors * d.eigenvalues.asDiagonal() * d.eigenvectors.transpose();
    CHECK((rebuilt - m).cwiseAbs().maxCoeff() < 1e-8 * m.cwiseAbs().maxCoeff());
    const Eigen::MatrixXd gram = d.eigenvectors.transpose() * d.eigenvectors;
    CHECK((gram - Eigen::MatrixXd::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < 24; ++i)
        CHECK(d.eigenvalues(i) >= d.eigenvalues(i - 1));
}

TEST_CASE("eigendecompose spectral shift property") {
    const Eigen::MatrixXd m = random_symmetric(12, 8);
    const double c = 2.75;
    const auto d0 = eigendecompose(m);
    const auto d1 = eigendecompose(m + c * Eigen::MatrixXd::Identity(12, 12));
    for (int i = 0; i < 12; ++i) {
        CHECK(d1.eigenvalues(i) == doctest::Approx(d0.eigenvalues(i) + c).epsilon(1e-9));
        const double align = std::abs(d0.eigenvectors.col(i).dot(d1.eigenvectors.col(i)));
        CHECK(align == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("eigendecompose input validation") {
    Eigen::MatrixXd bad(2, 2);
    bad << 0, 1, 2, 0;
    CHECK_THROWS_AS(eigendecompose(bad), std::invalid_argument);
    bad << 0, std::nan(""), std::nan(""), 0;
    CHECK_THROWS_AS(eigendecompose(bad), std::invalid_argument);
}

TEST_CASE("leading eigenvector of K_N and a star") {
    const auto [l1, v1] = leading_eigenvector(complete_adjacency(4));
    CHECK(l1 == doctest::Approx(3.0));
    for (int i = 0; i < 4; ++i)
        CHECK(v1(i) == doctest::Approx(0.5));

    Eigen::MatrixXd star = Eigen::MatrixXd::Zero(5, 5);
    for (int leaf = 1; leaf < 5; ++leaf)
        star(0, leaf) = star(leaf, 0) = 1.0;
    const auto [ls, vs] = leading_eigenvector(star);
    CHECK(ls == doctest::Approx(2.0));
    CHECK(vs(0) == doctest::Approx(1.0 / std::numbers::sqrt2));
}

TEST_CASE("leading eigenvector is Perron non-negative and matches power iteration") {
    const Multigraph g = generate_lcd(300, 3, 11);
    const Eigen::MatrixXd a = g.adjacency_matrix();
    const auto [lambda, v] = leading_eigenvector(a);
    CHECK(v.minCoeff() >= -1e-12);
    const auto [pl, pv] = oracles::power_iteration(a, 2000);
    CHECK(lambda == doctest::Approx(pl).epsilon(1e-9));
    CHECK(std::abs(v.dot(pv)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("leading eigenvector rejects degenerate tops") {
    // Two disjoint K_2 components share the top eigenvalue.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(4, 4);
    a(0, 1) = a(1, 0) = 1.0;
    a(2, 3) = a(3, 2) = 1.0;
    CHECK_THROWS_AS(leading_eigenvector(a), DegenerateEigenvalueError);
    Eigen::MatrixXd neg = Eigen::MatrixXd::Zero(2, 2);
    neg(0, 1) = neg(1, 0) = -1.0;
    CHECK_THROWS_AS(leading_eigenvector(neg), std::invalid_argument);
}

TEST_CASE("evolve at t=0 is the identity") {
    const Eigen::MatrixXd m = random_symmetric(9, 12);
    const auto d = eigendecompose(m);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(9);
    psi(3) = std::complex<double>(0.6, 0.0);
    psi(7) = std::complex<double>(0.0, 0.8);
    const Eigen::VectorXcd out = evolve(d, psi, 0.0);
    CHECK((out - psi).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("evolve reproduces the two-site Rabi formula") {
    const double gamma = 1.3;
    Eigen::MatrixXd h(2, 2);
    h << 0, -gamma, -gamma, 0;
    const auto d = eigendecompose(h);
    for (const double t : {0.3, 1.1, 2.9}) {
        const Eigen::VectorXcd psi = evolve(d, basis_state(2, 0), t);
        CHECK(std::norm(psi(1)) == doctest::Approx(std::sin(gamma * t) * std::sin(gamma * t))
                                       .epsilon(1e-10));
    }
}

TEST_CASE("evolve agrees with an independent RK4 integrator") {
    const Eigen::MatrixXd h = random_symmetric(8, 3);
    const auto d = eigendecompose(h);
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(8);
    psi0(0) = 1.0;
    const double t = 1.7;
    const Eigen::VectorXcd spectral = evolve(d, psi0, t);
    const Eigen::VectorXcd integrated = oracles::rk4_evolve(h, psi0, t, 20000);
    CHECK((spectral - integrated).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("evolve is unitary and composes") {
    const Eigen::MatrixXd m = random_symmetric(10, 21);
    const auto d = eigendecompose(m);
    SplitMix64 rng(4);
    Eigen::VectorXcd psi(10);
    for (int i = 0; i < 10; ++i)
        psi(i) = std::complex<double>(rng.next_double() - 0.5, rng.next_double() - 0.5);
    psi.normalize();
    for (const double t : {0.1, 2.0, 17.5}) {
        const Eigen::VectorXcd out = evolve(d, psi, t);
        CHECK(std::abs(out.norm() - 1.0) < 1e-10);
    }
    const Eigen::VectorXcd two_step = evolve(d, evolve(d, psi, 1.2), 0.7);
    const Eigen::VectorXcd one_step = evolve(d, psi, 1.9);
    CHECK((two_step - one_step).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("overlap basics") {
    Eigen::VectorXcd x(2), y(2);
    x << std::complex<double>(1, 0), std::complex<double>(0, 0);
    y << std::complex<double>(0, 0), std::complex<double>(1, 0);
    CHECK(overlap(x, x) == std::complex<double>(1.0, 0.0));
    CHECK(overlap(x, y) == std::complex<double>(0.0, 0.0));

    // conjugation sits on the left argument
    Eigen::VectorXcd a(1), b(1);
    a << std::complex<double>(0, 1);
    b << std::complex<double>(1, 0);
    CHECK(overlap(a, b) == std::complex<double>(0, -1));

    const auto [l, v] = leading_eigenvector(complete_adjacency(4));
    (void)l;
    CHECK(std::abs(overlap(v.cast<std::complex<double>>(), basis_state(4, 2))) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(overlap(x, basis_state(3, 0)), std::invalid_argument);
}

// ---- diagonal plus rank one ----

namespace {

void check_dpr1_against_dense(const Eigen::VectorXd& d, const Eigen::VectorXd& z, double rho) {
    const Eigen::MatrixXd m =
        Eigen::MatrixXd(d.asDiagonal()) + rho * z * z.transpose();
    const auto dense = eigendecompose(m);
    Dpr1 sys(d, z, rho);
    const Eigen::VectorXd values = sys.eigenvalues();
    REQUIRE(values.size() == d.size());
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    for (int i = 0; i < d.size(); ++i)
        CHECK(values(i) == doctest::Approx(dense.eigenvalues(i)).epsilon(1e-11).scale(scale));

    // Eigenpair residual is basis-free, so it stays valid near degeneracies
    // where individual dense eigenvectors are ill-posed.
    for (int j = 0; j < sys.root_count(); ++j) {
        const double e = sys.root_value(j);
        const Eigen::VectorXd u = sys.root_vector(j);
        CHECK(u.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((m * u - e * u).norm() < 1e-8 * scale);
        CHECK(sys.root_weight(j) == doctest::Approx(z.dot(u)).epsilon(1e-10));
    }
}

} // namespace

TEST_CASE("dpr1 matches dense eigensolver on random systems") {
    SplitMix64 rng(77);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_below(14));
        Eigen::VectorXd d(n), z(n);
        for (int i = 0; i < n; ++i) {
            d(i) = 4.0 * rng.next_double() - 2.0;
            z(i) = 2.0 * rng.next_double() - 1.0;
        }
        std::sort(d.data(), d.data() + n);
        z.normalize();
        const double rho = -(0.1 + 2.0 * rng.next_double());
        check_dpr1_against_dense(d, z, rho);
    }
}

TEST_CASE("dpr1 handles duplicates and zero weights") {
    Eigen::VectorXd d(6), z(6);
    d << -1.0, -1.0, 0.0, 0.5, 0.5, 0.5;
    z << 0.3, 0.4, 0.0, 0.5, 0.1, 0.2;
    z.normalize();
    check_dpr1_against_dense(d, z, -1.0);

    // K_N-like spectrum: one large pole, the rest fully degenerate.
    Eigen::VectorXd dk(8), zk(8);
    dk << -2.0, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5;
    for (int i = 0; i < 8; ++i)
        zk(i) = (i == 0) ? 0.6 : std::sqrt((1 - 0.36) / 7.0);
    check_dpr1_against_dense(dk, zk, -1.0);
}

TEST_CASE("dpr1 handles tight clusters") {
    Eigen::VectorXd d(5), z(5);
    d << 0.0, 1.0, 1.0 + 1e-13, 1.0 + 2e-13, 2.0;
    z << 0.5, 0.4, 0.3, 0.2, std::sqrt(1 - 0.25 - 0.16 - 0.09 - 0.04);
    check_dpr1_against_dense(d, z, -0.7);
}

TEST_CASE("dpr1 single pole is exact") {
    Eigen::VectorXd d(1), z(1);
    d << 0.5;
    z << 1.0;
    Dpr1 sys(d, z, -2.0);
    CHECK(sys.root_value(0) == doctest::Approx(-1.5).epsilon(1e-14));
}

TEST_CASE("dpr1 rejects invalid input") {
    Eigen::VectorXd d(2), z(2);
    d << 1.0, 0.0;
    z << 1.0, 0.0;
    CHECK_THROWS_AS(Dpr1(d, z, -1.0), std::invalid_argument); // not ascending
    d << 0.0, 1.0;
    CHECK_THROWS_AS(Dpr1(d, z, 1.0), std::invalid_argument); // rho >= 0
}
