#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "regress.hpp"
#include "rng.hpp"

using namespace cdsp;

namespace {
const std::vector<double> kXsA{0.1, 1.3, 2.7, 0.5, 1.9, 2.2};
const std::vector<double> kYsA{1.0, 0.4, 2.2, 0.7, 1.5, 0.9};
}  // namespace

TEST_CASE("OLS matches frozen reference values") {
    // independently computed with a double-precision least-squares reference
    const Sample s{kXsA, kYsA};
    const auto xy = regress::ols_fit(s, Direction::XtoY);
    CHECK(xy.intercept == doctest::Approx(0.53809523809523807).epsilon(1e-13));
    CHECK(xy.slope == doctest::Approx(0.39901477832512305).epsilon(1e-13));
    const auto yx = regress::ols_fit(s, Direction::YtoX);
    CHECK(yx.intercept == doctest::Approx(0.35672844480257909).epsilon(1e-13));
    CHECK(yx.slope == doctest::Approx(0.97904915390813807).epsilon(1e-13));

    double rss = 0.0;
    for (double r : xy.residuals) rss += r * r;
    CHECK(xy.rss == doctest::Approx(rss).epsilon(1e-13));
    CHECK(xy.residuals.size() == s.n());

    // residuals of an OLS fit with intercept sum to zero
    double sum = 0.0;
    for (double r : xy.residuals) sum += r;
    CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("OLS degenerate and malformed inputs") {
    const std::vector<double> cx{1.0, 1.0, 1.0, 1.0};
    const std::vector<double> y{0.0, 1.0, 2.0, 3.0};
    CHECK_THROWS_AS(regress::ols_fit(cx, y, Direction::XtoY), DegenerateError);
    CHECK_THROWS_AS(
        regress::ols_fit(std::vector<double>{1.0, 2.0}, y, Direction::XtoY),
        InputError);
}

TEST_CASE("exact line gives zero residuals") {
    Sample s;
    for (int i = 0; i < 25; ++i) {
        s.xs.push_back(0.3 * i);
        s.ys.push_back(2.0 - 1.5 * 0.3 * i);
    }
    const auto fit = regress::ols_fit(s, Direction::XtoY);
    CHECK(fit.slope == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.rss < 1e-20);
}

TEST_CASE("spline penalty null space is the linear functions") {
    const Sample s = testutil::linear_gaussian_pair(80, 11);
    const auto line = regress::ols_fit(s, Direction::XtoY);
    // lambda large enough to pin the null space, small enough to stay clear
    // of the ~1e16 condition number where LDLT roundoff dominates
    const auto fit = regress::spline_fit(s, 10, 1e8);
    CHECK(fit.edf == doctest::Approx(2.0).epsilon(1e-6));
    for (std::size_t i = 0; i < s.n(); ++i) {
        const double lin = line.intercept + line.slope * s.xs[i];
        CHECK(fit.fitted[i] == doctest::Approx(lin).epsilon(1e-4));
    }
}

TEST_CASE("spline with tiny penalty interpolates more, edf grows") {
    const Sample s = testutil::linear_gaussian_pair(80, 13);
    const auto loose = regress::spline_fit(s, 10, 1e-8);
    const auto tight = regress::spline_fit(s, 10, 1e8);
    CHECK(loose.edf > tight.edf);
    CHECK(loose.rss < tight.rss);
    CHECK(loose.edf <= 10.0 + 1e-6);
    CHECK(tight.edf >= 2.0 - 1e-6);
}

TEST_CASE("smoothing selection returns a usable fit") {
    Rng rng(17);
    Sample s;
    for (int i = 0; i < 120; ++i) {
        const double x = 6.0 * rng.uniform01() - 3.0;
        s.xs.push_back(x);
        s.ys.push_back(std::sin(2.0 * x) + 0.2 * rng.normal());
    }
    const auto fit = regress::select_smoothing(s, 10);
    CHECK(std::isfinite(fit.rss));
    CHECK(fit.edf >= 2.0 - 1e-6);
    CHECK(fit.edf <= 10.0 + 1e-6);
    // a sine needs real flexibility
    CHECK(fit.edf > 4.0);
}

TEST_CASE("BIC classifier separates line from curve") {
    SUBCASE("noisy line is Linear") {
        const Sample s = testutil::linear_gaussian_pair(150, 23);
        const auto cmp = regress::bic_linear_vs_spline(s);
        CHECK(cmp.verdict == regress::ModelClass::Linear);
        CHECK(cmp.bic_linear <= cmp.bic_spline);
    }
    SUBCASE("cubic curve is Nonlinear") {
        Rng rng(29);
        Sample s;
        for (int i = 0; i < 150; ++i) {
            const double x = 4.0 * rng.uniform01() - 2.0;
            s.xs.push_back(x);
            s.ys.push_back(x * x * x + 0.2 * rng.normal());
        }
        const auto cmp = regress::bic_linear_vs_spline(s);
        CHECK(cmp.verdict == regress::ModelClass::Nonlinear);
        CHECK(cmp.bic_spline < cmp.bic_linear);
    }
    SUBCASE("too-short sample rejected") {
        const Sample s = testutil::linear_gaussian_pair(12, 1);
        CHECK_THROWS_AS(regress::bic_linear_vs_spline(s), InputError);
    }
}

TEST_CASE("spline precondition errors") {
    const Sample s = testutil::linear_gaussian_pair(30, 3);
    CHECK_THROWS_AS(regress::spline_fit(s, 4, 1.0), InputError);
    CHECK_THROWS_AS(regress::spline_fit(s, 40, 1.0), InputError);
    Sample ties;
    for (int i = 0; i < 30; ++i) {
        ties.xs.push_back(static_cast<double>(i % 3));
        ties.ys.push_back(static_cast<double>(i));
    }
    CHECK_THROWS_AS(regress::spline_fit(ties, 10, 1.0), DegenerateError);
}
