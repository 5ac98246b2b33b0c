#include "cdsp_core.hpp"

#include <cmath>

#include "kernel_hsic.hpp"
#include "parallel.hpp"
#include "regress.hpp"
#include "rng.hpp"

namespace cdsp::core {

namespace {

constexpr std::uint64_t kPairBootTag = 0x5ca1ab1e;
constexpr std::uint64_t kOuterBootTag = 0x07e4b001;
constexpr int kMaxResampleRetries = 10;

std::uint64_t dir_bit(Direction d) { return d == Direction::XtoY ? 0 : 1; }

Sample paired_resample(const Sample& sample, Rng& rng) {
    const std::size_t n = sample.n();
    Sample out;
    out.xs.resize(n);
    out.ys.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = rng.index(n);
        out.xs[i] = sample.xs[k];
        out.ys[i] = sample.ys[k];
    }
    return out;
}

struct SideEstimates {
    DirectionalEstimates est;
    gof::CriticalValue crit;
    kernel::HsicStatistic original;
};

SideEstimates estimate_side(const Sample& sample, Direction direction,
                            double alpha, int n_boot, std::uint64_t seed) {
    validate_sample(sample);
    if (sample.n() < 20)
        throw InputError("estimate_direction_quantities: need n >= 20");
    if (n_boot < 50)
        throw InputError("estimate_direction_quantities: need n_boot >= 50");

    SideEstimates out;
    out.crit = gof::null_bootstrap_critical(sample, direction, alpha, n_boot, seed);
    out.original = kernel::directional_statistic(sample, direction);

    std::vector<double> stats(static_cast<std::size_t>(n_boot));
    parallel_for(static_cast<std::size_t>(n_boot), [&](std::size_t b) {
        for (int attempt = 0;; ++attempt) {
            Rng rng(substream(seed, kPairBootTag + static_cast<std::uint64_t>(attempt),
                              b, dir_bit(direction)));
            const Sample res = paired_resample(sample, rng);
            try {
                stats[b] = kernel::directional_statistic(res, direction).value;
                return;
            } catch (const DegenerateError&) {
                if (attempt + 1 >= kMaxResampleRetries) throw;
            }
        }
    });

    double mean = 0.0;
    for (double s : stats) mean += s;
    mean /= static_cast<double>(n_boot);
    double var = 0.0;
    for (double s : stats) var += (s - mean) * (s - mean);
    var /= static_cast<double>(n_boot - 1);
    const double sd = std::sqrt(var);
    if (!(sd > 0.0))
        throw DegenerateError(
            "estimate_direction_quantities: bootstrap statistics are constant");

    out.est.theta_hat = mean;
    out.est.sigma_hat = sd;
    out.est.c_hat_over_n = out.crit.c_alpha_over_n;
    out.est.index_hat = (mean - out.crit.c_alpha_over_n) / sd;
    return out;
}

Verdict ordering_verdict(double index_x, double index_y) {
    if (index_x > index_y) return Verdict::XtoY;
    if (index_y > index_x) return Verdict::YtoX;
    return Verdict::Inconclusive;
}

}  // namespace

DirectionalEstimates estimate_direction_quantities(const Sample& sample,
                                                   Direction direction,
                                                   double alpha, int n_boot,
                                                   std::uint64_t seed) {
    return estimate_side(sample, direction, alpha, n_boot, seed).est;
}

PointEstimate cdsp_point_estimate(const Sample& sample, double alpha, int n_boot,
                                  std::uint64_t seed) {
    const SideEstimates side_y = estimate_side(sample, Direction::XtoY, alpha, n_boot, seed);
    const SideEstimates side_x = estimate_side(sample, Direction::YtoX, alpha, n_boot, seed);

    PointEstimate pe;
    pe.estimates_xtoy = side_y.est;
    pe.estimates_ytox = side_x.est;
    pe.reject_y = gof::decide(side_y.original, side_y.crit) == gof::TestDecision::Reject;
    pe.reject_x = gof::decide(side_x.original, side_x.crit) == gof::TestDecision::Reject;
    pe.direction = ordering_verdict(side_x.est.index_hat, side_y.est.index_hat);
    return pe;
}

CdspResult cdsp_support_probability(const Sample& sample, double alpha,
                                    int n_boot_outer, int n_boot_inner,
                                    std::uint64_t seed) {
    if (n_boot_outer < 50)
        throw InputError("cdsp_support_probability: need n_boot_outer >= 50");

    const PointEstimate pe = cdsp_point_estimate(sample, alpha, n_boot_inner, seed);

    CdspResult result;
    result.direction = pe.direction;
    result.estimates_xtoy = pe.estimates_xtoy;
    result.estimates_ytox = pe.estimates_ytox;
    result.reject_y = pe.reject_y;
    result.reject_x = pe.reject_x;
    result.n_boot_outer = n_boot_outer;
    result.n_boot_inner = n_boot_inner;
    result.seed = seed;
    result.boot_index_y.resize(static_cast<std::size_t>(n_boot_outer));
    result.boot_index_x.resize(static_cast<std::size_t>(n_boot_outer));

    parallel_for(static_cast<std::size_t>(n_boot_outer), [&](std::size_t b) {
        Rng rng(substream(seed, kOuterBootTag, b));
        const Sample res = paired_resample(sample, rng);
        const std::uint64_t inner_seed = substream(seed, kOuterBootTag, b, 1);
        result.boot_index_y[b] =
            estimate_side(res, Direction::XtoY, alpha, n_boot_inner, inner_seed)
                .est.index_hat;
        result.boot_index_x[b] =
            estimate_side(res, Direction::YtoX, alpha, n_boot_inner, inner_seed)
                .est.index_hat;
    });

    int favorable = 0;
    for (int b = 0; b < n_boot_outer; ++b) {
        const Verdict v = ordering_verdict(result.boot_index_x[static_cast<std::size_t>(b)],
                                           result.boot_index_y[static_cast<std::size_t>(b)]);
        if (v != Verdict::Inconclusive && v == pe.direction) ++favorable;
    }
    result.p_cdsp =
        static_cast<double>(favorable) / static_cast<double>(n_boot_outer);
    return result;
}

const char* to_string(SupportCategory c) {
    switch (c) {
        case SupportCategory::NoLittle: return "no_little";
        case SupportCategory::Weak: return "weak";
        case SupportCategory::Moderate: return "moderate";
        case SupportCategory::Strong: return "strong";
        default: return "very_strong";
    }
}

SupportCategory support_category(double p) {
    if (p < 0.0 || p > 1.0)
        throw InputError("support_category: p must lie in [0,1]");
    if (p < 0.55) return SupportCategory::NoLittle;
    if (p < 0.70) return SupportCategory::Weak;
    if (p < 0.80) return SupportCategory::Moderate;
    if (p < 0.90) return SupportCategory::Strong;
    return SupportCategory::VeryStrong;
}

}  // namespace cdsp::core
