#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cdsp {

// Regression/test orientation. XtoY means "regress Y on X"; the associated
// null is H_Y^0 (independence of X and the residual, plus linearity).
enum class Direction { XtoY, YtoX };

enum class Verdict { XtoY, YtoX, Inconclusive };

inline Direction flip(Direction d) {
    return d == Direction::XtoY ? Direction::YtoX : Direction::XtoY;
}

inline const char* to_string(Direction d) {
    return d == Direction::XtoY ? "x_to_y" : "y_to_x";
}

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::XtoY: return "x_to_y";
        case Verdict::YtoX: return "y_to_x";
        default: return "inconclusive";
    }
}

// Malformed or unusable input (files, configs, short samples). Maps to exit 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Structurally valid data on which the procedure is undefined
// (zero predictor variance, all-identical values). Maps to exit 3.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal numeric failure. Maps to exit 4.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Paired observations (x_i, y_i). The universal input.
struct Sample {
    std::vector<double> xs;
    std::vector<double> ys;

    std::size_t n() const { return xs.size(); }
};

inline void validate_sample(const Sample& s) {
    if (s.xs.size() != s.ys.size())
        throw InputError("sample columns have unequal length");
    if (s.xs.size() < 3)
        throw InputError("sample needs at least 3 observations");
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i]))
            throw InputError("sample contains a non-finite value at row " +
                             std::to_string(i + 1));
    }
}

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

// Type-7 empirical quantile (linear interpolation), matching the usual
// statistical-software default. `sorted` must be ascending.
inline double quantile_type7(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw NumericError("quantile of empty vector");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace cdsp
