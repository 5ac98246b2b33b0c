#pragma once

#include <span>
#include <vector>

#include "common.hpp"
#include "regress.hpp"

namespace cdsp::kernel {

struct GramMatrix {
    std::vector<double> values;  // row-major n x n
    std::size_t n = 0;
    double bandwidth = 0.0;

    double at(std::size_t i, std::size_t j) const { return values[i * n + j]; }
};

struct HsicStatistic {
    double value = 0.0;
    std::size_t n = 0;
};

// Median of pairwise absolute differences |v_i - v_j| over i < j, divided by
// sqrt(2). Falls back to 1.0 when the median is zero (all entries identical,
// or a majority of ties); with allow_fallback = false that case throws.
double median_heuristic_bandwidth(std::span<const double> v,
                                  bool allow_fallback = true);

// Gaussian RBF Gram matrix: exp(-(v_i - v_j)^2 / (2 bw^2)).
GramMatrix gaussian_gram(std::span<const double> v, double bandwidth);

// Three-term V-statistic
//   (1/n^2) sum k_ij h_ij + (1/n^4) sum k_ij h_qr - (2/n^3) sum k_ij h_iq
// evaluated in O(n^2) via row-mean centering identities.
HsicStatistic hsic_vstat(const GramMatrix& K, const GramMatrix& H);

// Fused O(n^2) path: median-heuristic bandwidths for both arguments plus the
// V-statistic in one pass, without materializing Gram matrices. Equal to
// hsic_vstat over gaussian_gram matrices up to float roundoff.
HsicStatistic hsic_gaussian(std::span<const double> u, std::span<const double> v);

// Directional test statistic: HSIC between the predictor and the OLS
// residuals of the stated direction. `fit` must come from the same sample
// and direction.
HsicStatistic directional_statistic(const Sample& sample, Direction direction,
                                    const regress::LinearFit& fit);

// Convenience: fits OLS internally.
HsicStatistic directional_statistic(const Sample& sample, Direction direction);

}  // namespace cdsp::kernel
