#pragma once

#include <cmath>
#include <cstdint>

#include "common.hpp"
#include "rng.hpp"

namespace testutil {

// x from a truncated Exp(1) on (0,3), y = beta*x + cubed Gaussian noise:
// linear conditional mean with strongly non-Gaussian additive noise, so the
// causal direction is identifiable and easy at moderate n.
inline cdsp::Sample nonlinear_noise_pair(std::size_t n, std::uint64_t seed,
                                         double beta = 0.8) {
    cdsp::Rng rng(seed);
    cdsp::Sample s;
    const double flo = 1.0 - std::exp(-3.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = -std::log(1.0 - rng.uniform01() * flo);
        const double e = 0.5 * rng.normal();
        s.xs.push_back(x);
        s.ys.push_back(beta * x + e * e * e);
    }
    return s;
}

// Exactly linear with independent Gaussian noise: the null world of the
// goodness-of-fit test in the XtoY direction.
inline cdsp::Sample linear_gaussian_pair(std::size_t n, std::uint64_t seed,
                                         double beta = 1.0, double sd = 0.5) {
    cdsp::Rng rng(seed);
    cdsp::Sample s;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.normal();
        s.xs.push_back(x);
        s.ys.push_back(beta * x + sd * rng.normal());
    }
    return s;
}

}  // namespace testutil
