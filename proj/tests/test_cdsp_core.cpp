#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cdsp_core.hpp"
#include "helpers.hpp"

using namespace cdsp;

TEST_CASE("support categories hit the documented bin edges") {
    using core::SupportCategory;
    CHECK(core::support_category(0.50) == SupportCategory::NoLittle);
    CHECK(core::support_category(0.55) == SupportCategory::Weak);
    CHECK(core::support_category(0.70) == SupportCategory::Moderate);
    CHECK(core::support_category(0.80) == SupportCategory::Strong);
    CHECK(core::support_category(0.90) == SupportCategory::VeryStrong);
    CHECK(core::support_category(1.00) == SupportCategory::VeryStrong);
    CHECK(core::support_category(0.549) == SupportCategory::NoLittle);
    CHECK(core::support_category(0.699) == SupportCategory::Weak);
    CHECK(core::support_category(0.799) == SupportCategory::Moderate);
    CHECK(core::support_category(0.899) == SupportCategory::Strong);
    // below a coin flip: possible when the full-sample pick loses the
    // bootstrap majority
    CHECK(core::support_category(0.2) == SupportCategory::NoLittle);
    CHECK_THROWS_AS(core::support_category(-0.01), InputError);
    CHECK_THROWS_AS(core::support_category(1.01), InputError);
}

TEST_CASE("point estimate on an easy forward pair") {
    const Sample s = testutil::nonlinear_noise_pair(120, 3);
    const auto pe = core::cdsp_point_estimate(s, 0.05, 60, 42);
    CHECK(pe.direction == Verdict::XtoY);
    CHECK(pe.estimates_ytox.index_hat > pe.estimates_xtoy.index_hat);
    CHECK(pe.estimates_xtoy.sigma_hat > 0.0);
    CHECK(pe.estimates_ytox.sigma_hat > 0.0);
    CHECK(pe.estimates_xtoy.index_hat ==
          doctest::Approx((pe.estimates_xtoy.theta_hat -
                           pe.estimates_xtoy.c_hat_over_n) /
                          pe.estimates_xtoy.sigma_hat)
              .epsilon(1e-14));
}

TEST_CASE("direction flips with the column order") {
    const Sample fwd = testutil::nonlinear_noise_pair(120, 5);
    Sample rev;
    rev.xs = fwd.ys;
    rev.ys = fwd.xs;
    const auto a = core::cdsp_point_estimate(fwd, 0.05, 60, 7);
    const auto b = core::cdsp_point_estimate(rev, 0.05, 60, 7);
    CHECK(a.direction == Verdict::XtoY);
    CHECK(b.direction == Verdict::YtoX);
}

TEST_CASE("support probability equals favorable count over B exactly") {
    const Sample s = testutil::nonlinear_noise_pair(80, 11);
    const auto res = core::cdsp_support_probability(s, 0.05, 60, 50, 99);
    REQUIRE(res.boot_index_x.size() == 60);
    REQUIRE(res.boot_index_y.size() == 60);
    int favorable = 0;
    for (std::size_t b = 0; b < 60; ++b) {
        const Verdict v = res.boot_index_x[b] > res.boot_index_y[b]
                              ? Verdict::XtoY
                              : (res.boot_index_y[b] > res.boot_index_x[b]
                                     ? Verdict::YtoX
                                     : Verdict::Inconclusive);
        if (v != Verdict::Inconclusive && v == res.direction) ++favorable;
    }
    CHECK(res.p_cdsp == static_cast<double>(favorable) / 60.0);
    CHECK(res.p_cdsp >= 0.0);
    CHECK(res.p_cdsp <= 1.0);
}

TEST_CASE("nested bootstrap is deterministic in the seed") {
    const Sample s = testutil::nonlinear_noise_pair(80, 13);
    const auto a = core::cdsp_support_probability(s, 0.05, 50, 50, 5);
    const auto b = core::cdsp_support_probability(s, 0.05, 50, 50, 5);
    CHECK(a.p_cdsp == b.p_cdsp);
    CHECK(a.direction == b.direction);
    CHECK(a.estimates_xtoy.index_hat == b.estimates_xtoy.index_hat);
    CHECK(a.boot_index_x == b.boot_index_x);
    const auto c = core::cdsp_support_probability(s, 0.05, 50, 50, 6);
    CHECK(a.boot_index_x != c.boot_index_x);
}

TEST_CASE("scale invariance of the decision") {
    // multiplying both columns by the same positive constant re-adapts the
    // bandwidths; the decision should survive on easy data
    const Sample s = testutil::nonlinear_noise_pair(120, 17);
    Sample scaled;
    for (std::size_t i = 0; i < s.n(); ++i) {
        scaled.xs.push_back(100.0 * s.xs[i]);
        scaled.ys.push_back(100.0 * s.ys[i]);
    }
    const auto a = core::cdsp_point_estimate(s, 0.05, 50, 21);
    const auto b = core::cdsp_point_estimate(scaled, 0.05, 50, 21);
    CHECK(a.direction == b.direction);
}

TEST_CASE("precondition errors") {
    const Sample tiny = testutil::nonlinear_noise_pair(19, 1);
    CHECK_THROWS_AS(core::cdsp_point_estimate(tiny, 0.05, 60, 1), InputError);
    const Sample s = testutil::nonlinear_noise_pair(40, 1);
    CHECK_THROWS_AS(core::cdsp_point_estimate(s, 0.05, 49, 1), InputError);
    CHECK_THROWS_AS(core::cdsp_support_probability(s, 0.05, 49, 50, 1), InputError);
    CHECK_THROWS_AS(core::cdsp_point_estimate(s, 1.5, 60, 1), InputError);
}

TEST_CASE("degenerate data surfaces as DegenerateError") {
    Sample s;
    for (int i = 0; i < 40; ++i) {
        s.xs.push_back(1.0);
        s.ys.push_back(static_cast<double>(i));
    }
    CHECK_THROWS_AS(core::cdsp_point_estimate(s, 0.05, 60, 1), DegenerateError);
}
