#include "lingam.hpp"

#include <cmath>

#include "kernel_hsic.hpp"
#include "parallel.hpp"
#include "regress.hpp"
#include "rng.hpp"

namespace cdsp::lingam {

namespace {

constexpr std::uint64_t kLingamBootTag = 0x11a64a11;

std::vector<double> standardized(const std::vector<double>& v) {
    const double m = mean_of(v);
    const double sd = std::sqrt(variance_of(v));
    if (!(sd > 0.0))
        throw DegenerateError("lingam: column has zero variance");
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m) / sd;
    return out;
}

LingamResult decide_once(const Sample& sample) {
    validate_sample(sample);
    Sample std_sample{standardized(sample.xs), standardized(sample.ys)};

    LingamResult r;
    r.dep_xtoy = kernel::directional_statistic(std_sample, Direction::XtoY).value;
    r.dep_ytox = kernel::directional_statistic(std_sample, Direction::YtoX).value;
    r.direction = r.dep_xtoy <= r.dep_ytox ? Direction::XtoY : Direction::YtoX;
    return r;
}

}  // namespace

LingamResult lingam_direction(const Sample& sample) { return decide_once(sample); }

LingamResult lingam_bootstrap_rate(const Sample& sample, int n_boot,
                                   std::uint64_t seed) {
    if (n_boot < 50)
        throw InputError("lingam_bootstrap_rate: need n_boot >= 50");

    LingamResult full = decide_once(sample);
    const std::size_t n = sample.n();

    std::vector<char> agree(static_cast<std::size_t>(n_boot), 0);
    parallel_for(static_cast<std::size_t>(n_boot), [&](std::size_t b) {
        Rng rng(substream(seed, kLingamBootTag, b));
        Sample res;
        res.xs.resize(n);
        res.ys.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = rng.index(n);
            res.xs[i] = sample.xs[k];
            res.ys[i] = sample.ys[k];
        }
        agree[b] = decide_once(res).direction == full.direction ? 1 : 0;
    });

    int count = 0;
    for (char a : agree) count += a;
    full.bootstrap_rate = static_cast<double>(count) / static_cast<double>(n_boot);
    full.n_boot = n_boot;
    return full;
}

}  // namespace cdsp::lingam
