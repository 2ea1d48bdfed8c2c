#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/fit.hpp"

namespace cdlab {

enum class Species { U, V };
enum class CrossDir { Rightmost, Leftmost };

inline const char* species_name(Species s) { return s == Species::U ? "u" : "v"; }

/// One level set to track during a run.
struct LevelSpec {
    Species species = Species::U;
    double level = 0.5;
    CrossDir direction = CrossDir::Rightmost;
};

/// Time series of a level-set position. Absence of the level at a sample
/// time is data, recorded as NaN.
struct FrontTrace {
    Species species = Species::U;
    double level = 0.5;
    CrossDir direction = CrossDir::Rightmost;
    std::vector<double> times;
    std::vector<double> positions;

    static constexpr double absent = std::numeric_limits<double>::quiet_NaN();
};

/// Rightmost (or leftmost) theta-crossing of a sampled field, linearly
/// interpolated inside the bracketing cell; nullopt when no crossing exists.
inline std::optional<double> crossing_position(std::span<const double> x,
                                               std::span<const double> f, double theta,
                                               CrossDir dir) {
    const std::ptrdiff_t n = std::ssize(x);
    if (n < 2) return std::nullopt;
    auto cell = [&](std::ptrdiff_t i) -> std::optional<double> {
        const double a = f[i] - theta, b = f[i + 1] - theta;
        if (a == 0.0) return x[i];
        if (b == 0.0) return x[i + 1];
        if ((a > 0.0) != (b > 0.0)) return x[i] + (x[i + 1] - x[i]) * a / (a - b);
        return std::nullopt;
    };
    if (dir == CrossDir::Rightmost) {
        for (std::ptrdiff_t i = n - 2; i >= 0; --i)
            if (auto c = cell(i)) return c;
    } else {
        for (std::ptrdiff_t i = 0; i < n - 1; ++i)
            if (auto c = cell(i)) return c;
    }
    return std::nullopt;
}

/// Front speed by ordinary least squares of position against time on
/// [t0, t1]. Requires >= 20 finite samples and a window of >= 20 time units.
struct SpeedFit {
    double speed = 0.0;
    double intercept = 0.0;
    double stderr_speed = 0.0;
    double t0 = 0.0, t1 = 0.0;
    std::size_t n = 0;
};

inline SpeedFit fit_speed(const FrontTrace& trace, double t0, double t1) {
    if (!(t1 - t0 >= 20.0))
        throw InsufficientData("fit_speed: window must span at least 20 time units");
    std::vector<double> ts, xs;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        if (trace.times[i] >= t0 && trace.times[i] <= t1 && std::isfinite(trace.positions[i])) {
            ts.push_back(trace.times[i]);
            xs.push_back(trace.positions[i]);
        }
    }
    if (ts.size() < 20) throw InsufficientData("fit_speed: fewer than 20 samples in window");
    const OlsFit f = ols(ts, xs);
    return {f.slope, f.intercept, f.stderr_slope, t0, t1, f.n};
}

/// Bramson-type drift fit: regress (c_fixed t - x(t)) against ln t on
/// [t0, t1] (t0 >= 50), so x(t) ~ c_fixed t - kappa ln t + C.
struct DriftFit {
    double c_fixed = 0.0;
    double kappa = 0.0;
    double C = 0.0;
    double residual_sup = 0.0;
    double t0 = 0.0, t1 = 0.0;
    std::size_t n = 0;
};

inline DriftFit fit_log_drift(const FrontTrace& trace, double c_fixed, double t0, double t1) {
    if (!(t0 >= 50.0)) throw DomainError("fit_log_drift: window must start at t >= 50");
    if (!(c_fixed > 0.0)) throw DomainError("fit_log_drift: c_fixed must be positive");
    std::vector<double> lnt, y;
    for (std::size_t i = 0; i < trace.times.size(); ++i) {
        const double t = trace.times[i];
        if (t >= t0 && t <= t1 && std::isfinite(trace.positions[i])) {
            lnt.push_back(std::log(t));
            y.push_back(c_fixed * t - trace.positions[i]);
        }
    }
    if (lnt.size() < 20) throw InsufficientData("fit_log_drift: fewer than 20 samples in window");
    const OlsFit f = ols(lnt, y);
    return {c_fixed, f.slope, -f.intercept, f.residual_sup, t0, t1, f.n};
}

} // namespace cdlab
