#pragma once

#include <span>
#include <vector>

#include "common.hpp"

namespace cdsp::regress {

struct LinearFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::vector<double> residuals;  // input order
    double rss = 0.0;
    Direction direction = Direction::XtoY;
};

// Simple linear regression of `response` on `predictor`, intercept included.
// Throws DegenerateError when the predictor has zero variance.
LinearFit ols_fit(std::span<const double> predictor,
                  std::span<const double> response, Direction direction);

// Directional convenience: XtoY regresses ys on xs, YtoX regresses xs on ys.
LinearFit ols_fit(const Sample& sample, Direction direction);

struct SplineFit {
    int basis_dim = 0;
    double smoothing_param = 0.0;
    std::vector<double> fitted;
    double edf = 0.0;  // trace of the hat matrix
    double rss = 0.0;
};

// Cubic B-spline fit of ys on xs with `basis_dim` basis functions (interior
// knots at predictor quantiles) and a second-divided-difference penalty on
// the coefficients. The penalty null space is exactly the linear functions,
// so lambda -> infinity collapses onto the OLS line.
SplineFit spline_fit(const Sample& sample, int basis_dim, double smoothing_param);

// Profiles the smoothing parameter over a log-spaced grid and returns the fit
// maximizing the Gaussian profile log-likelihood with edf-adjusted variance.
SplineFit select_smoothing(const Sample& sample, int basis_dim);

enum class ModelClass { Linear, Nonlinear };

struct BicComparison {
    ModelClass verdict = ModelClass::Linear;
    double bic_linear = 0.0;
    double bic_spline = 0.0;
};

// BIC = n ln(rss/n) + p ln(n) with p = 2 for the line and p = edf + 1 for the
// spline. Linear wins ties.
BicComparison bic_linear_vs_spline(const Sample& sample, int basis_dim = 10);

}  // namespace cdsp::regress
