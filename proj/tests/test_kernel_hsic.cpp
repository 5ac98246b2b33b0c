#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "helpers.hpp"
#include "kernel_hsic.hpp"
#include "rng.hpp"

using namespace cdsp;

namespace {

// Literal quadruple-sum V-statistic; only feasible for tiny n.
double hsic_bruteforce(const kernel::GramMatrix& K, const kernel::GramMatrix& H) {
    const std::size_t n = K.n;
    const double dn = static_cast<double>(n);
    double t1 = 0.0, t2 = 0.0, t3 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t1 += K.at(i, j) * H.at(i, j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t q = 0; q < n; ++q)
                for (std::size_t r = 0; r < n; ++r) t2 += K.at(i, j) * H.at(q, r);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t q = 0; q < n; ++q) t3 += K.at(i, j) * H.at(i, q);
    return t1 / (dn * dn) + t2 / (dn * dn * dn * dn) - 2.0 * t3 / (dn * dn * dn);
}

const std::vector<double> kXsA{0.1, 1.3, 2.7, 0.5, 1.9, 2.2};
const std::vector<double> kYsA{1.0, 0.4, 2.2, 0.7, 1.5, 0.9};

}  // namespace

TEST_CASE("vstat equals quadruple-sum oracle on 100 fuzzed instances") {
    Rng rng(20260823);
    for (int c = 0; c < 100; ++c) {
        const std::size_t n = 2 + rng.index(7);  // n in [2, 8]
        std::vector<double> u(n), v(n);
        for (auto& x : u) x = 3.0 * rng.normal();
        for (auto& x : v) x = 3.0 * rng.normal();
        const double bw_u = 0.2 + 2.0 * rng.uniform01();
        const double bw_v = 0.2 + 2.0 * rng.uniform01();
        const auto K = kernel::gaussian_gram(u, bw_u);
        const auto H = kernel::gaussian_gram(v, bw_v);
        const double fast = kernel::hsic_vstat(K, H).value;
        const double slow = hsic_bruteforce(K, H);
        CHECK(std::abs(fast - slow) <= 1e-12);
    }
}

TEST_CASE("median heuristic bandwidth, frozen and worked values") {
    // independently computed with a double-precision reference implementation
    CHECK(kernel::median_heuristic_bandwidth(kXsA) ==
          doctest::Approx(0.84852813742385691).epsilon(1e-14));
    CHECK(kernel::median_heuristic_bandwidth(kYsA) ==
          doctest::Approx(0.42426406871192845).epsilon(1e-14));
    // 10 pairwise distances of 0..4 are {1,1,1,1,2,2,2,3,3,4}; median 2
    const std::vector<double> v{0, 1, 2, 3, 4};
    CHECK(kernel::median_heuristic_bandwidth(v) ==
          doctest::Approx(2.0 / std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("bandwidth fallback on constant input") {
    const std::vector<double> v{2.0, 2.0, 2.0, 2.0};
    CHECK(kernel::median_heuristic_bandwidth(v) == 1.0);
    CHECK_THROWS_AS(kernel::median_heuristic_bandwidth(v, false), DegenerateError);
    CHECK_THROWS_AS(kernel::median_heuristic_bandwidth(std::vector<double>{1.0}),
                    InputError);
}

TEST_CASE("gaussian gram entries") {
    SUBCASE("unit exponent") {
        const double bw = 0.7;
        const std::vector<double> v{0.0, bw * std::sqrt(2.0)};
        const auto g = kernel::gaussian_gram(v, bw);
        CHECK(g.at(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    }
    SUBCASE("direct scalar evaluation") {
        const std::vector<double> v{0.0, 1.0, 3.0};
        const auto g = kernel::gaussian_gram(v, 1.0);
        CHECK(g.at(0, 2) == doctest::Approx(std::exp(-4.5)).epsilon(1e-15));
        CHECK(g.at(0, 1) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    }
    SUBCASE("diagonal exactly one, symmetric") {
        const auto g = kernel::gaussian_gram(kXsA, 0.9);
        for (std::size_t i = 0; i < g.n; ++i) {
            CHECK(g.at(i, i) == 1.0);
            for (std::size_t j = 0; j < g.n; ++j) CHECK(g.at(i, j) == g.at(j, i));
        }
    }
    SUBCASE("nonpositive bandwidth rejected") {
        CHECK_THROWS_AS(kernel::gaussian_gram(kXsA, 0.0), InputError);
    }
}

TEST_CASE("fused path matches gram-matrix path") {
    Rng rng(7);
    for (int c = 0; c < 10; ++c) {
        const std::size_t n = 5 + rng.index(40);
        std::vector<double> u(n), v(n);
        for (auto& x : u) x = rng.normal();
        for (auto& x : v) x = rng.normal();
        const auto K = kernel::gaussian_gram(u, kernel::median_heuristic_bandwidth(u));
        const auto H = kernel::gaussian_gram(v, kernel::median_heuristic_bandwidth(v));
        CHECK(kernel::hsic_gaussian(u, v).value ==
              doctest::Approx(kernel::hsic_vstat(K, H).value).epsilon(1e-12));
    }
}

TEST_CASE("frozen joint HSIC and directional statistics") {
    // independently computed with a double-precision reference implementation
    CHECK(kernel::hsic_gaussian(kXsA, kYsA).value ==
          doctest::Approx(0.048904148992088059).epsilon(1e-13));
    const Sample s{kXsA, kYsA};
    CHECK(kernel::directional_statistic(s, Direction::XtoY).value ==
          doctest::Approx(0.024844687177575375).epsilon(1e-13));
    CHECK(kernel::directional_statistic(s, Direction::YtoX).value ==
          doctest::Approx(0.04497099021375045).epsilon(1e-13));
}

TEST_CASE("dependence beats an independent shuffle") {
    Rng rng(99);
    std::vector<double> x(20), y(20);
    for (std::size_t i = 0; i < 20; ++i) x[i] = y[i] = rng.normal();
    const double dependent = kernel::hsic_gaussian(x, y).value;
    // deterministic shuffle of the copy
    std::vector<double> ys = y;
    for (std::size_t i = ys.size() - 1; i > 0; --i)
        std::swap(ys[i], ys[rng.index(i + 1)]);
    const double shuffled = kernel::hsic_gaussian(x, ys).value;
    CHECK(dependent > shuffled);
    CHECK(dependent >= 0.0);
    CHECK(shuffled >= 0.0);
}

TEST_CASE("mismatched inputs rejected") {
    const auto K = kernel::gaussian_gram(kXsA, 1.0);
    const auto H = kernel::gaussian_gram(std::vector<double>{1.0, 2.0}, 1.0);
    CHECK_THROWS_AS(kernel::hsic_vstat(K, H), InputError);
    CHECK_THROWS_AS(
        kernel::hsic_gaussian(kXsA, std::vector<double>{1.0, 2.0}), InputError);
}

TEST_CASE("directional statistic validates the supplied fit") {
    const Sample s = testutil::linear_gaussian_pair(30, 5);
    const auto fit = regress::ols_fit(s, Direction::XtoY);
    CHECK_THROWS_AS(kernel::directional_statistic(s, Direction::YtoX, fit),
                    InputError);
}
