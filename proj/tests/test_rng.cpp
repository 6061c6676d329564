#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qsearch/rng.hpp"

#include <cmath>
#include <set>

using qsearch::SplitMix64;

TEST_CASE("splitmix64 matches the reference sequence") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 16294208416658607535ULL);
    CHECK(rng.next() == 7960286522194355700ULL);
    CHECK(rng.next() == 487617019471545679ULL);
    CHECK(rng.next() == 17909611376780542444ULL);

    SplitMix64 rng42(42);
    CHECK(rng42.next() == 13679457532755275413ULL);
    CHECK(rng42.next() == 2949826092126892291ULL);
}

TEST_CASE("derived streams are deterministic and distinct") {
    SplitMix64 a = SplitMix64::derive(123, 0);
    SplitMix64 a2 = SplitMix64::derive(123, 0);
    SplitMix64 b = SplitMix64::derive(123, 1);
    const auto va = a.next();
    CHECK(va == a2.next());
    CHECK(va != b.next());

    std::set<std::uint64_t> firsts;
    for (std::uint64_t s = 0; s < 1000; ++s)
        firsts.insert(SplitMix64::derive(7, s).next());
    CHECK(firsts.size() == 1000);
}

TEST_CASE("next_below stays in range and covers small supports") {
    SplitMix64 rng(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.next_below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("next_double lies in [0,1) with sane mean") {
    SplitMix64 rng(9);
    double sum = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / 20000 - 0.5) < 0.01);
}

TEST_CASE("gaussian moments") {
    SplitMix64 rng(11);
    double sum = 0.0, sum2 = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gaussian();
        sum += x;
        sum2 += x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sum2 / n - 1.0) < 0.03);
}
