#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsearch/edgelist.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/generator.hpp"
#include "qsearch/graph_stats.hpp"
#include "qsearch/multigraph.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qsearch;

namespace {

Multigraph path3() {
    return Multigraph(3, {{0, 1, 1}, {1, 2, 1}});
}

Multigraph star(int leaves) {
    std::vector<MultiEdge> edges;
    for (int i = 1; i <= leaves; ++i)
        edges.push_back({0, i, 1});
    return Multigraph(leaves + 1, edges);
}

Multigraph complete(int n) {
    std::vector<MultiEdge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            edges.push_back({u, v, 1});
    return Multigraph(n, edges);
}

} // namespace

TEST_CASE("multigraph degrees count self loops twice") {
    Multigraph g(3, {{0, 0, 2}, {0, 1, 3}, {1, 2, 1}});
    CHECK(g.degree(0) == 7); // 2 loops * 2 + 3 parallel
    CHECK(g.degree(1) == 4);
    CHECK(g.degree(2) == 1);
    CHECK(g.total_multiplicity() == 6);
    CHECK(g.multiplicity(0, 1) == 3);
    CHECK(g.multiplicity(1, 0) == 3);
    CHECK(g.multiplicity(0, 0) == 2);
    CHECK(g.multiplicity(2, 0) == 0);

    std::int64_t handshake = 0;
    for (int u = 0; u < g.n(); ++u)
        handshake += g.degree(u);
    CHECK(handshake == 2 * g.total_multiplicity());

    const Eigen::MatrixXd a = g.adjacency_matrix();
    CHECK(a(0, 0) == 2.0);
    CHECK(a(0, 1) == 3.0);
    CHECK(a(1, 0) == 3.0);
    CHECK(a == a.transpose());
}

TEST_CASE("multigraph merges duplicate edges and validates input") {
    Multigraph g(2, {{1, 0, 1}, {0, 1, 2}});
    CHECK(g.edges().size() == 1);
    CHECK(g.edges()[0].mult == 3);
    CHECK_THROWS_AS(Multigraph(2, {{0, 2, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Multigraph(2, {{0, 1, 0}}), std::invalid_argument);
}

TEST_CASE("lcd base cases") {
    // n=1, m=1: the first micro step must self-attach.
    const Multigraph g = generate_lcd(1, 1, 7);
    CHECK(g.n() == 1);
    CHECK(g.total_multiplicity() == 1);
    CHECK(g.loops(0) == 1);
    CHECK(g.degree(0) == 2);
}

TEST_CASE("lcd output invariants: edge count, handshake, min degree") {
    for (const std::uint64_t seed : {1ULL, 2ULL, 99ULL}) {
        const Multigraph g = generate_lcd(500, 3, seed);
        CHECK(g.n() == 500);
        CHECK(g.total_multiplicity() == 1500);
        std::int64_t handshake = 0;
        std::int64_t min_degree = g.degree(0);
        for (int u = 0; u < g.n(); ++u) {
            handshake += g.degree(u);
            min_degree = std::min(min_degree, g.degree(u));
        }
        CHECK(handshake == 2 * 1500);
        CHECK(min_degree >= 3);
    }
}

TEST_CASE("lcd is deterministic and beta=3 reduces to it exactly") {
    const Multigraph a = generate_lcd(300, 4, 123);
    const Multigraph b = generate_lcd(300, 4, 123);
    const Multigraph c = generate_with_exponent(300, 4, 3.0, 123);
    CHECK(a.edges() == b.edges());
    CHECK(a.edges() == c.edges());
    const Multigraph d = generate_lcd(300, 4, 124);
    CHECK(a.edges() != d.edges());
}

TEST_CASE("lcd attachment follows the preferential rule at the second step") {
    // n=2, m=1: step 2 attaches to the first node with probability 2/3.
    int attached = 0;
    const int trials = 20000;
    for (int s = 0; s < trials; ++s)
        attached += generate_lcd(2, 1, 1000 + s).multiplicity(0, 1) == 1;
    const double freq = static_cast<double>(attached) / trials;
    CHECK(freq == doctest::Approx(2.0 / 3.0).epsilon(0.02));
}

TEST_CASE("lcd max degree scales like sqrt(N)") {
    auto mean_dmax = [](int n) {
        double sum = 0.0;
        for (const std::uint64_t seed : {42ULL, 43ULL, 44ULL, 45ULL, 46ULL}) {
            const Multigraph g = generate_lcd(n, 5, seed);
            std::int64_t dmax = 0;
            for (int u = 0; u < g.n(); ++u)
                dmax = std::max(dmax, g.degree(u));
            sum += static_cast<double>(dmax);
        }
        return sum / 5.0;
    };
    const double small = mean_dmax(2500);
    const double large = mean_dmax(10000);
    // Quadrupling N should double the hub degree (exponent 1/(beta-1) = 1/2);
    // the prefactor is about 2m, not 1, so only the ratio is pinned.
    CHECK(large / small > 1.4);
    CHECK(large / small < 2.9);
    CHECK(large > std::sqrt(10000.0));        // at least N^{1/2}
    CHECK(large < 30.0 * std::sqrt(10000.0)); // and not a different power
}

TEST_CASE("generate_with_exponent tunes the tail exponent") {
    auto mean_beta_hat = [](double beta) {
        double sum = 0.0;
        const int seeds = 20;
        for (int s = 0; s < seeds; ++s) {
            const Multigraph g = generate_with_exponent(10000, 10, beta, 500 + s);
            sum += fit_power_law(degree_histogram(g), 10).beta_hat;
        }
        return sum / seeds;
    };
    CHECK(mean_beta_hat(2.5) > 2.2);
    CHECK(mean_beta_hat(2.5) < 2.8);
    CHECK(mean_beta_hat(3.5) > 3.2);
    CHECK(mean_beta_hat(3.5) < 3.8);
}

TEST_CASE("generator rejects bad parameters") {
    CHECK_THROWS_AS(generate_lcd(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_with_exponent(10, 2, 2.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_lcd(1 << 30, 16, 1), std::invalid_argument); // n*m over index range
}

TEST_CASE("erdos renyi basics") {
    const Multigraph k3 = generate_erdos_renyi(3, 3, 5);
    CHECK(k3.total_multiplicity() == 3);
    CHECK(k3.multiplicity(0, 1) == 1);
    CHECK(k3.multiplicity(0, 2) == 1);
    CHECK(k3.multiplicity(1, 2) == 1);

    const Multigraph empty = generate_erdos_renyi(4, 0, 5);
    CHECK(empty.total_multiplicity() == 0);

    const Multigraph g = generate_erdos_renyi(2000, 10000, 17);
    CHECK(g.total_multiplicity() == 10000);
    double mean_degree = 0.0;
    std::int64_t loops = 0;
    for (int u = 0; u < g.n(); ++u) {
        mean_degree += static_cast<double>(g.degree(u));
        loops += g.loops(u);
    }
    CHECK(mean_degree / g.n() == doctest::Approx(10.0));
    CHECK(loops == 0);
    for (const auto& e : g.edges())
        CHECK(e.mult == 1);

    CHECK_THROWS_AS(generate_erdos_renyi(4, 7, 1), std::invalid_argument);
    const Multigraph a = generate_erdos_renyi(100, 300, 9);
    const Multigraph b = generate_erdos_renyi(100, 300, 9);
    CHECK(a.edges() == b.edges());
}

TEST_CASE("degree histogram") {
    const auto h3 = degree_histogram(complete(3));
    REQUIRE(h3.bins.size() == 1);
    CHECK(h3.bins[0] == std::pair<std::int64_t, std::int64_t>{2, 3});

    const auto hs = degree_histogram(star(5));
    REQUIRE(hs.bins.size() == 2);
    CHECK(hs.bins[0] == std::pair<std::int64_t, std::int64_t>{1, 5});
    CHECK(hs.bins[1] == std::pair<std::int64_t, std::int64_t>{5, 1});

    const auto hl = degree_histogram(Multigraph(1, {{0, 0, 1}}));
    REQUIRE(hl.bins.size() == 1);
    CHECK(hl.bins[0] == std::pair<std::int64_t, std::int64_t>{2, 1});
}

TEST_CASE("power-law fit recovers a noiseless exponent") {
    DegreeHistogram h;
    for (std::int64_t k = 5; k <= 500; ++k) {
        const auto count = static_cast<std::int64_t>(std::llround(1e15 / (double(k) * k * k)));
        h.bins.emplace_back(k, count);
    }
    const auto fit = fit_power_law(h, 5);
    CHECK(fit.beta_hat == doctest::Approx(3.0).epsilon(0.004));
    CHECK(fit.goodness < 1e-3);
}

TEST_CASE("power-law fit on an lcd instance") {
    const Multigraph g = generate_lcd(10000, 5, 4242);
    const auto fit = fit_power_law(degree_histogram(g), 5);
    CHECK(fit.beta_hat > 2.6);
    CHECK(fit.beta_hat < 3.2);
}

TEST_CASE("power-law fit needs at least 3 degrees") {
    DegreeHistogram h;
    h.bins = {{3, 10}, {7, 4}};
    CHECK_THROWS_AS(fit_power_law(h, 1), InsufficientDataError);
}

TEST_CASE("bfs distances") {
    const auto d = bfs_distances(path3(), 0);
    CHECK(d == std::vector<int>{0, 1, 2});
    const auto ds = bfs_distances(star(4), 0);
    CHECK(ds == std::vector<int>{0, 1, 1, 1, 1});
    const Multigraph two(4, {{0, 1, 1}, {2, 3, 1}});
    const auto dd = bfs_distances(two, 0);
    CHECK(dd == std::vector<int>{0, 1, -1, -1});
    CHECK_THROWS_AS(bfs_distances(path3(), 5), std::invalid_argument);
}

TEST_CASE("hub node with ties broken low") {
    CHECK(hub_node(star(5)) == 0);
    CHECK(hub_node(complete(3)) == 0);
    const Multigraph g = generate_lcd(200, 2, 31);
    std::int64_t dmax = 0;
    for (int u = 0; u < g.n(); ++u)
        dmax = std::max(dmax, g.degree(u));
    CHECK(g.degree(hub_node(g)) == dmax);
}

TEST_CASE("edge list round trips byte for byte") {
    const auto dir = std::filesystem::temp_directory_path() / "qsearch_graph_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "g.edges";

    const Multigraph g = generate_with_exponent(200, 3, 2.7, 99);
    write_edge_list(path, g, {200, 3, 2.7, 99});

    const auto file = read_edge_list(path);
    CHECK(file.header.n == 200);
    CHECK(file.header.m == 3);
    CHECK(file.header.beta == 2.7);
    CHECK(file.header.seed == 99);
    CHECK(file.graph.edges() == g.edges());

    const auto path2 = dir / "g2.edges";
    write_edge_list(path2, file.graph, file.header);
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().substr(0, 40) == "# multigraph n=200 m=3 beta=2.7000000000");

    std::filesystem::remove_all(dir);
}

TEST_CASE("edge list io errors") {
    CHECK_THROWS_AS(read_edge_list("/nonexistent/file.edges"), IoError);
}
