#pragma once

#include <cstdint>
#include <vector>

#include "common.hpp"
#include "gof_test.hpp"

namespace cdsp::core {

// Bootstrap-estimated quantities for one directional test.
// index_hat = (theta_hat - c_hat_over_n) / sigma_hat on the raw statistic
// scale; the sqrt(n) factor common to both directions cancels in the
// comparison that drives the direction estimate.
struct DirectionalEstimates {
    double theta_hat = 0.0;
    double sigma_hat = 0.0;
    double c_hat_over_n = 0.0;
    double index_hat = 0.0;
};

// Quantities for the test whose regression runs in `direction`:
// XtoY yields the H_Y^0 side (I_Y), YtoX the H_X^0 side (I_X).
// theta/sigma from n_boot paired resamples, c from a null bootstrap on the
// original sample. Deterministic given seed.
DirectionalEstimates estimate_direction_quantities(const Sample& sample,
                                                   Direction direction,
                                                   double alpha, int n_boot,
                                                   std::uint64_t seed);

struct PointEstimate {
    Verdict direction = Verdict::Inconclusive;
    DirectionalEstimates estimates_xtoy;  // I_Y side
    DirectionalEstimates estimates_ytox;  // I_X side
    bool reject_y = false;
    bool reject_x = false;
};

// Direction is XtoY iff I_X > I_Y, YtoX iff I_Y > I_X, inconclusive on an
// exact tie. The per-direction reject flags are diagnostics at level alpha.
PointEstimate cdsp_point_estimate(const Sample& sample, double alpha, int n_boot,
                                  std::uint64_t seed);

struct CdspResult {
    Verdict direction = Verdict::Inconclusive;
    double p_cdsp = 0.0;
    DirectionalEstimates estimates_xtoy;
    DirectionalEstimates estimates_ytox;
    bool reject_y = false;
    bool reject_x = false;
    int n_boot_outer = 0;
    int n_boot_inner = 0;
    std::uint64_t seed = 0;
    // Per-outer-replicate index estimates, for histogram output.
    std::vector<double> boot_index_y;
    std::vector<double> boot_index_x;
};

// Full nested-bootstrap run: point estimate plus the directional support
// probability (fraction of outer replicates whose recomputed index ordering
// agrees with the point estimate; ties count as disagreement).
CdspResult cdsp_support_probability(const Sample& sample, double alpha,
                                    int n_boot_outer, int n_boot_inner,
                                    std::uint64_t seed);

enum class SupportCategory { NoLittle, Weak, Moderate, Strong, VeryStrong };

const char* to_string(SupportCategory c);

// Interpretation bins: [0.5,0.55) no/little, [0.55,0.7) weak, [0.7,0.8)
// moderate, [0.8,0.9) strong, [0.9,1] very strong. Values below 0.5 (possible
// only for a direction chosen by the full sample but not the bootstrap
// majority) map to no/little.
SupportCategory support_category(double p);

}  // namespace cdsp::core
