#pragma once

#include <cstdint>

#include "common.hpp"

namespace cdsp::lingam {

struct LingamResult {
    Direction direction = Direction::XtoY;
    double dep_xtoy = 0.0;  // HSIC(predictor, residual) for the X->Y fit
    double dep_ytox = 0.0;
    double bootstrap_rate = 0.0;
    int n_boot = 0;
};

// Bivariate DirectLiNGAM with HSIC as the dependence measure: standardize
// both columns, fit OLS both ways, keep the direction with the smaller
// predictor-residual dependence. Ties resolve to XtoY.
LingamResult lingam_direction(const Sample& sample);

// Adds the bootstrap selection rate: the fraction of paired nonparametric
// resamples whose decision matches the full-sample decision.
LingamResult lingam_bootstrap_rate(const Sample& sample, int n_boot,
                                   std::uint64_t seed);

}  // namespace cdsp::lingam
