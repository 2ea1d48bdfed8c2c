#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "cdlab/errors.hpp"

namespace cdlab {

/// Ordinary least squares y = slope*x + intercept with the slope's
/// standard error and the sup-norm of the residual.
struct OlsFit {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;
    double residual_sup = 0.0;
    std::size_t n = 0;
};

inline OlsFit ols(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2) throw InsufficientData("ols: need >= 2 paired samples");
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0) throw InsufficientData("ols: degenerate abscissae");
    OlsFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
        f.residual_sup = std::max(f.residual_sup, std::abs(r));
    }
    f.stderr_slope = (n > 2) ? std::sqrt(ss / double(n - 2) / sxx) : 0.0;
    return f;
}

/// Log-linear fit q ~ A e^{rate t} over samples with q > 0.
/// Returns rate (slope of ln q) and amplitude A.
struct ExpFit {
    double rate = 0.0;
    double amplitude = 0.0;
    double residual_sup = 0.0; ///< sup residual in log space
    std::size_t n = 0;
};

inline ExpFit fit_exponential(std::span<const double> t, std::span<const double> q,
                              std::size_t min_samples = 5) {
    std::vector<double> ts, ls;
    for (std::size_t i = 0; i < t.size() && i < q.size(); ++i) {
        if (q[i] > 0.0 && std::isfinite(q[i])) {
            ts.push_back(t[i]);
            ls.push_back(std::log(q[i]));
        }
    }
    if (ts.size() < min_samples)
        throw InsufficientData("fit_exponential: fewer than required positive samples");
    const OlsFit f = ols(ts, ls);
    return {f.slope, std::exp(f.intercept), f.residual_sup, f.n};
}

} // namespace cdlab
