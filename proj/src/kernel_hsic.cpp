#include "kernel_hsic.hpp"

#include <algorithm>
#include <cmath>

namespace cdsp::kernel {

namespace {

// Samples become "large" when the pairwise-distance buffer would dominate
// memory; beyond this the bandwidth median uses a deterministic strided
// subsample and the Gram sums are streamed row by row.
constexpr std::size_t kLargeSampleThreshold = 6000;
constexpr std::size_t kBandwidthSubsample = 2000;

// Median of the squared pairwise distances, returned on the distance scale.
// `d2` is consumed (reordered in place).
double median_distance(std::vector<double>& d2) {
    const std::size_t m = d2.size();
    const std::size_t mid = m / 2;
    std::nth_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(mid), d2.end());
    const double upper = d2[mid];
    if (m % 2 == 1) return std::sqrt(upper);
    const double lower =
        *std::max_element(d2.begin(), d2.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (std::sqrt(lower) + std::sqrt(upper));
}

double bandwidth_from_d2(std::vector<double>& d2, bool allow_fallback) {
    const double med = median_distance(d2);
    if (med <= 0.0) {
        if (!allow_fallback)
            throw DegenerateError("median bandwidth is zero and fallback is disabled");
        return 1.0;
    }
    return med / std::sqrt(2.0);
}

std::vector<double> squared_pair_distances(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<double> d2;
    d2.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = v[i] - v[j];
            d2.push_back(d * d);
        }
    return d2;
}

double subsampled_bandwidth(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<double> sub;
    sub.reserve(kBandwidthSubsample);
    for (std::size_t i = 0; i < kBandwidthSubsample; ++i)
        sub.push_back(v[i * n / kBandwidthSubsample]);
    auto d2 = squared_pair_distances(sub);
    return bandwidth_from_d2(d2, true);
}

struct HsicSums {
    double sum_kh = 0.0;    // sum_ij k_ij h_ij
    double sum_k = 0.0;     // sum_ij k_ij
    double sum_h = 0.0;
    double sum_rows = 0.0;  // sum_i (row mean product numerator) k_i. h_i.
};

double assemble(const HsicSums& s, std::size_t n) {
    const double dn = static_cast<double>(n);
    const double term1 = s.sum_kh / (dn * dn);
    const double term2 = (s.sum_k / (dn * dn)) * (s.sum_h / (dn * dn));
    const double term3 = 2.0 * s.sum_rows / (dn * dn * dn);
    return term1 + term2 - term3;
}

// Streams the Gaussian kernel sums for one (u, v) pair without storing the
// matrices. O(n) memory, O(n^2) time.
HsicStatistic hsic_streamed(std::span<const double> u, std::span<const double> v,
                            double bw_u, double bw_v) {
    const std::size_t n = u.size();
    const double cu = 1.0 / (2.0 * bw_u * bw_u);
    const double cv = 1.0 / (2.0 * bw_v * bw_v);

    std::vector<double> row_k(n, 1.0), row_h(n, 1.0);  // diagonal entries
    double off_kh = 0.0, off_k = 0.0, off_h = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ui = u[i];
        const double vi = v[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            const double du = ui - u[j];
            const double dv = vi - v[j];
            const double k = std::exp(-du * du * cu);
            const double h = std::exp(-dv * dv * cv);
            off_kh += k * h;
            off_k += k;
            off_h += h;
            row_k[i] += k;
            row_k[j] += k;
            row_h[i] += h;
            row_h[j] += h;
        }
    }

    HsicSums s;
    s.sum_kh = 2.0 * off_kh + static_cast<double>(n);
    s.sum_k = 2.0 * off_k + static_cast<double>(n);
    s.sum_h = 2.0 * off_h + static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) s.sum_rows += row_k[i] * row_h[i];
    return {assemble(s, n), n};
}

}  // namespace

double median_heuristic_bandwidth(std::span<const double> v, bool allow_fallback) {
    if (v.size() < 2)
        throw InputError("median_heuristic_bandwidth: need at least 2 entries");
    if (v.size() > kLargeSampleThreshold) return subsampled_bandwidth(v);
    auto d2 = squared_pair_distances(v);
    return bandwidth_from_d2(d2, allow_fallback);
}

GramMatrix gaussian_gram(std::span<const double> v, double bandwidth) {
    if (bandwidth <= 0.0)
        throw InputError("gaussian_gram: bandwidth must be positive");
    const std::size_t n = v.size();
    GramMatrix g;
    g.n = n;
    g.bandwidth = bandwidth;
    g.values.resize(n * n);
    const double c = 1.0 / (2.0 * bandwidth * bandwidth);
    for (std::size_t i = 0; i < n; ++i) {
        g.values[i * n + i] = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = v[i] - v[j];
            const double k = std::exp(-d * d * c);
            g.values[i * n + j] = k;
            g.values[j * n + i] = k;
        }
    }
    return g;
}

HsicStatistic hsic_vstat(const GramMatrix& K, const GramMatrix& H) {
    if (K.n != H.n)
        throw InputError("hsic_vstat: Gram matrices differ in size");
    const std::size_t n = K.n;
    if (n == 0) throw InputError("hsic_vstat: empty Gram matrices");

    HsicSums s;
    for (std::size_t i = 0; i < n; ++i) {
        double rk = 0.0, rh = 0.0;
        const double* krow = K.values.data() + i * n;
        const double* hrow = H.values.data() + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            s.sum_kh += krow[j] * hrow[j];
            rk += krow[j];
            rh += hrow[j];
        }
        s.sum_k += rk;
        s.sum_h += rh;
        s.sum_rows += rk * rh;
    }
    return {assemble(s, n), n};
}

HsicStatistic hsic_gaussian(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size() || u.size() < 2)
        throw InputError("hsic_gaussian: need matched arguments with n >= 2");
    const std::size_t n = u.size();

    if (n > kLargeSampleThreshold)
        return hsic_streamed(u, v, subsampled_bandwidth(u), subsampled_bandwidth(v));

    // Shared pass: pairwise squared distances feed both the bandwidth median
    // and the kernel evaluations.
    auto d2u = squared_pair_distances(u);
    auto d2v = squared_pair_distances(v);
    std::vector<double> scratch = d2u;
    const double bw_u = bandwidth_from_d2(scratch, true);
    scratch = d2v;
    const double bw_v = bandwidth_from_d2(scratch, true);

    const double cu = 1.0 / (2.0 * bw_u * bw_u);
    const double cv = 1.0 / (2.0 * bw_v * bw_v);
    std::vector<double> row_k(n, 1.0), row_h(n, 1.0);
    double off_kh = 0.0, off_k = 0.0, off_h = 0.0;
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j, ++p) {
            const double k = std::exp(-d2u[p] * cu);
            const double h = std::exp(-d2v[p] * cv);
            off_kh += k * h;
            off_k += k;
            off_h += h;
            row_k[i] += k;
            row_k[j] += k;
            row_h[i] += h;
            row_h[j] += h;
        }
    }
    HsicSums s;
    s.sum_kh = 2.0 * off_kh + static_cast<double>(n);
    s.sum_k = 2.0 * off_k + static_cast<double>(n);
    s.sum_h = 2.0 * off_h + static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) s.sum_rows += row_k[i] * row_h[i];
    return {assemble(s, n), n};
}

HsicStatistic directional_statistic(const Sample& sample, Direction direction,
                                    const regress::LinearFit& fit) {
    if (fit.direction != direction)
        throw InputError("directional_statistic: fit direction mismatch");
    if (fit.residuals.size() != sample.n())
        throw InputError("directional_statistic: fit size mismatch");
    const std::vector<double>& predictor =
        direction == Direction::XtoY ? sample.xs : sample.ys;
    return hsic_gaussian(predictor, fit.residuals);
}

HsicStatistic directional_statistic(const Sample& sample, Direction direction) {
    return directional_statistic(sample, direction,
                                 regress::ols_fit(sample, direction));
}

}  // namespace cdsp::kernel
