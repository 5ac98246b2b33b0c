#include "regress.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace cdsp::regress {

LinearFit ols_fit(std::span<const double> predictor,
                  std::span<const double> response, Direction direction) {
    const std::size_t n = predictor.size();
    if (n != response.size() || n < 3)
        throw InputError("ols_fit: need matched columns with n >= 3");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += predictor[i];
        my += response[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = predictor[i] - mx;
        sxx += dx * dx;
        sxy += dx * (response[i] - my);
    }
    if (sxx <= 0.0)
        throw DegenerateError("ols_fit: predictor has zero variance");

    LinearFit fit;
    fit.direction = direction;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.residuals.resize(n);
    fit.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = response[i] - fit.intercept - fit.slope * predictor[i];
        fit.residuals[i] = r;
        fit.rss += r * r;
    }
    return fit;
}

LinearFit ols_fit(const Sample& sample, Direction direction) {
    if (direction == Direction::XtoY)
        return ols_fit(sample.xs, sample.ys, direction);
    return ols_fit(sample.ys, sample.xs, direction);
}

namespace {

// Knot vector for `k` cubic B-splines: boundary knots repeated 4 times,
// k-4 interior knots at type-7 quantiles of the distinct predictor values.
std::vector<double> build_knots(const std::vector<double>& x, int k) {
    std::vector<double> distinct(x);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) < k)
        throw DegenerateError("spline_fit: fewer distinct predictor values than basis functions");

    const double lo = distinct.front();
    const double hi = distinct.back();
    std::vector<double> knots;
    knots.reserve(static_cast<std::size_t>(k) + 4);
    for (int i = 0; i < 4; ++i) knots.push_back(lo);
    const int interior = k - 4;
    for (int j = 1; j <= interior; ++j) {
        double q = quantile_type7(distinct, static_cast<double>(j) /
                                                static_cast<double>(interior + 1));
        // keep the knot sequence strictly increasing inside the range
        q = std::min(std::max(q, lo), hi);
        if (!knots.empty() && q <= knots.back())
            q = std::nextafter(knots.back(), hi);
        knots.push_back(q);
    }
    for (int i = 0; i < 4; ++i) knots.push_back(hi);
    return knots;
}

// Cox-de Boor evaluation of all k cubic basis functions at point x.
void eval_basis_row(const std::vector<double>& knots, int k, double x,
                    Eigen::RowVectorXd& row) {
    row.setZero();
    const double lo = knots[3];
    const double hi = knots[knots.size() - 4];
    const double xc = std::min(std::max(x, lo), hi);

    // span index mu with knots[mu] <= xc < knots[mu+1], clamped at the end
    int mu = 3;
    while (mu < k - 1 && xc >= knots[mu + 1]) ++mu;

    double b[4] = {1.0, 0.0, 0.0, 0.0};  // degree-0 seed, triangular scheme
    for (int d = 1; d <= 3; ++d) {
        double saved = 0.0;
        for (int r = 0; r < d; ++r) {
            const int i = mu - d + 1 + r;
            const double denom = knots[i + d] - knots[i];
            const double alpha = denom > 0.0 ? (xc - knots[i]) / denom : 0.0;
            const double tmp = b[r];
            b[r] = saved + (1.0 - alpha) * tmp;
            saved = alpha * tmp;
        }
        b[d] = saved;
    }
    for (int r = 0; r <= 3; ++r) {
        const int idx = mu - 3 + r;
        if (idx >= 0 && idx < k) row(idx) = b[r];
    }
}

struct SplineWorkspace {
    Eigen::MatrixXd basis;    // n x k
    Eigen::MatrixXd penalty;  // k x k, D^T D
    Eigen::MatrixXd btb;      // k x k
    Eigen::VectorXd bty;
};

SplineWorkspace build_workspace(const Sample& sample, int k) {
    validate_sample(sample);
    const std::size_t n = sample.n();
    if (static_cast<int>(n) <= k)
        throw InputError("spline_fit: need n > basis_dim");

    const std::vector<double> knots = build_knots(sample.xs, k);

    SplineWorkspace ws;
    ws.basis.resize(static_cast<Eigen::Index>(n), k);
    Eigen::RowVectorXd row(k);
    for (std::size_t i = 0; i < n; ++i) {
        eval_basis_row(knots, k, sample.xs[i], row);
        ws.basis.row(static_cast<Eigen::Index>(i)) = row;
    }

    // Greville abscissae; second divided differences of the coefficients
    // with respect to them vanish exactly on linear functions.
    std::vector<double> greville(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        greville[static_cast<std::size_t>(i)] =
            (knots[static_cast<std::size_t>(i) + 1] +
             knots[static_cast<std::size_t>(i) + 2] +
             knots[static_cast<std::size_t>(i) + 3]) / 3.0;

    Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(k - 2, k);
    for (int i = 0; i + 2 < k; ++i) {
        const double h1 = greville[static_cast<std::size_t>(i) + 1] - greville[static_cast<std::size_t>(i)];
        const double h2 = greville[static_cast<std::size_t>(i) + 2] - greville[static_cast<std::size_t>(i) + 1];
        diff(i, i) = 1.0 / h1;
        diff(i, i + 1) = -1.0 / h1 - 1.0 / h2;
        diff(i, i + 2) = 1.0 / h2;
    }
    ws.penalty = diff.transpose() * diff;
    ws.btb = ws.basis.transpose() * ws.basis;
    ws.bty = ws.basis.transpose() *
             Eigen::Map<const Eigen::VectorXd>(sample.ys.data(),
                                               static_cast<Eigen::Index>(n));
    return ws;
}

SplineFit solve_spline(const Sample& sample, const SplineWorkspace& ws, int k,
                       double lambda) {
    const std::size_t n = sample.n();
    Eigen::MatrixXd m = ws.btb + lambda * ws.penalty;
    // tiny ridge keeps the unpenalized interpolation limit solvable
    m.diagonal().array() += 1e-10 * ws.btb.trace() / static_cast<double>(k);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(m);
    if (ldlt.info() != Eigen::Success)
        throw NumericError("spline_fit: normal-equation solve failed");

    const Eigen::VectorXd coef = ldlt.solve(ws.bty);
    const Eigen::VectorXd fitted = ws.basis * coef;

    SplineFit fit;
    fit.basis_dim = k;
    fit.smoothing_param = lambda;
    fit.edf = ldlt.solve(ws.btb).trace();
    fit.fitted.assign(fitted.data(), fitted.data() + fitted.size());
    fit.rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = sample.ys[i] - fit.fitted[i];
        fit.rss += r * r;
    }
    return fit;
}

}  // namespace

SplineFit spline_fit(const Sample& sample, int basis_dim, double smoothing_param) {
    if (basis_dim < 5) throw InputError("spline_fit: basis_dim must be >= 5");
    const SplineWorkspace ws = build_workspace(sample, basis_dim);
    return solve_spline(sample, ws, basis_dim, smoothing_param);
}

SplineFit select_smoothing(const Sample& sample, int basis_dim) {
    if (basis_dim < 5) throw InputError("select_smoothing: basis_dim must be >= 5");
    const SplineWorkspace ws = build_workspace(sample, basis_dim);
    const double n = static_cast<double>(sample.n());

    // Grid scaled by the basis cross-product so lambda is commensurate with
    // the least-squares term across sample sizes and data scales.
    const double scale = ws.btb.trace() / ws.penalty.trace();
    constexpr int kGridPoints = 37;
    const double lo = std::log(1e-6 * scale);
    const double hi = std::log(1e6 * scale);

    SplineFit best;
    double best_ll = -std::numeric_limits<double>::infinity();
    int best_idx = -1;
    for (int g = 0; g < kGridPoints; ++g) {
        const double lambda =
            std::exp(lo + (hi - lo) * static_cast<double>(g) / (kGridPoints - 1));
        SplineFit fit = solve_spline(sample, ws, basis_dim, lambda);
        const double dof = std::max(n - fit.edf, 1.0);
        const double sigma2 = std::max(fit.rss / dof, 1e-300);
        const double ll = -0.5 * n * std::log(sigma2);
        if (ll > best_ll) {
            best_ll = ll;
            best = std::move(fit);
            best_idx = g;
        }
    }
    if (best_idx == 0 || best_idx == kGridPoints - 1)
        std::fprintf(stderr,
                     "cdsp: warning: smoothing grid endpoint selected (lambda=%g)\n",
                     best.smoothing_param);
    return best;
}

BicComparison bic_linear_vs_spline(const Sample& sample, int basis_dim) {
    validate_sample(sample);
    const double n = static_cast<double>(sample.n());
    if (sample.n() <= 12)
        throw InputError("bic_linear_vs_spline: need n > 12");

    const LinearFit line = ols_fit(sample, Direction::XtoY);
    const SplineFit spline = select_smoothing(sample, basis_dim);

    const double rss_floor = 1e-300;
    BicComparison cmp;
    cmp.bic_linear =
        n * std::log(std::max(line.rss / n, rss_floor)) + 2.0 * std::log(n);
    cmp.bic_spline = n * std::log(std::max(spline.rss / n, rss_floor)) +
                     (spline.edf + 1.0) * std::log(n);
    cmp.verdict = cmp.bic_linear <= cmp.bic_spline ? ModelClass::Linear
                                                   : ModelClass::Nonlinear;
    return cmp;
}

}  // namespace cdsp::regress
