#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/fronts.hpp"
#include "cdlab/regime.hpp"
#include "cdlab/simulate.hpp"
#include "cdlab/wave_fit.hpp"

namespace cdlab {

/// Level-set trace from stored snapshots.
inline FrontTrace track_level_set(const Trajectory& traj, Species species, double theta,
                                  CrossDir dir) {
    if (!(theta > 0.0 && theta < 1.0))
        throw DomainError("track_level_set: level must lie in (0,1)");
    FrontTrace tr;
    tr.species = species;
    tr.level = theta;
    tr.direction = dir;
    const std::vector<double> xs = traj.cfg.grid.points();
    for (const FieldState& s : traj.snapshots) {
        const auto& f = (species == Species::U) ? s.u : s.v;
        const auto pos = crossing_position(xs, f, theta, dir);
        tr.times.push_back(s.t);
        tr.positions.push_back(pos ? *pos : FrontTrace::absent);
    }
    return tr;
}

/// Densest available trace: a matching run-recorded observable if present,
/// otherwise recomputed from snapshots.
inline FrontTrace trace_for(const Trajectory& traj, Species species, double theta,
                            CrossDir dir) {
    for (const FrontTrace& tr : traj.obs.traces)
        if (tr.species == species && tr.direction == dir && std::abs(tr.level - theta) < 1e-12)
            return tr;
    return track_level_set(traj, species, theta, dir);
}

struct RegimeOptions {
    double level = 0.5;
    double fast_tol = 0.03;        ///< relative tolerance on the fast-front speed
    double slow_tol = 0.05;        ///< relative tolerance on the slow-front speed
    double v_dies_threshold = 0.01;///< FasterU: sup_{x>=0} v at the final time
    double plateau_required = 0.95;
    double plateau_eps_frac = 0.125; ///< inset of the plateau window within (script_c, c_v)
    double fit_window_frac = 0.4;    ///< fit speeds on the last fraction of the run
};

/// Measured two-front structure checked against the predicted regime.
/// A mismatch is a failing check (pass = false), never an exception.
struct RegimeReport {
    RegimeTag tag = RegimeTag::Degenerate;
    double fast_speed = FrontTrace::absent, fast_predicted = FrontTrace::absent;
    double slow_speed = FrontTrace::absent, slow_predicted = FrontTrace::absent;
    double v_sup_right = FrontTrace::absent;
    double plateau_min = FrontTrace::absent;
    bool fast_ok = true, slow_ok = true, v_dies_ok = true, plateau_ok = true;
    bool pass = true;
    std::string detail;
};

inline RegimeReport detect_regimes(const Trajectory& traj, const Params& p,
                                   const SpeedRegime& regime, RegimeOptions opts = {}) {
    if (traj.cfg.t_end < 300.0)
        throw DomainError("detect_regimes: needs t_end >= 300 for a developed structure");
    RegimeReport rep;
    rep.tag = regime.tag;

    if (regime.tag == RegimeTag::Degenerate) {
        rep.detail = "c_v = c_u: degenerate, no classification claimed";
        return rep;
    }

    const double t1 = traj.cfg.t_end;
    const double t0 = std::max(50.0, (1.0 - opts.fit_window_frac) * t1);
    const FieldState& last = traj.final_state();
    const std::vector<double> xs = traj.cfg.grid.points();

    if (regime.tag == RegimeTag::FasterU) {
        const FrontTrace tu = trace_for(traj, Species::U, opts.level, CrossDir::Rightmost);
        const SpeedFit fit = fit_speed(tu, t0, t1);
        rep.fast_speed = fit.speed;
        rep.fast_predicted = regime.c_u;
        rep.fast_ok = std::abs(fit.speed - regime.c_u) <= opts.fast_tol * regime.c_u;
        double vmax = 0.0;
        for (int i = 0; i < traj.cfg.grid.n; ++i)
            if (xs[i] >= 0.0) vmax = std::max(vmax, last.v[i]);
        rep.v_sup_right = vmax;
        rep.v_dies_ok = vmax < opts.v_dies_threshold;
        rep.pass = rep.fast_ok && rep.v_dies_ok;
        rep.detail = "c_u > c_v: v extinct ahead, u front at c_u";
        return rep;
    }

    // c_v > c_u: fast v-front at c_v, slow u-front at script_c, plateau between
    const double script_c = *regime.script_c;
    const FrontTrace tv = trace_for(traj, Species::V, opts.level, CrossDir::Rightmost);
    const FrontTrace tu = trace_for(traj, Species::U, opts.level, CrossDir::Rightmost);
    const SpeedFit fv = fit_speed(tv, t0, t1);
    const SpeedFit fu = fit_speed(tu, t0, t1);
    rep.fast_speed = fv.speed;
    rep.fast_predicted = regime.c_v;
    rep.slow_speed = fu.speed;
    rep.slow_predicted = script_c;
    rep.fast_ok = std::abs(fv.speed - regime.c_v) <= opts.fast_tol * regime.c_v;
    rep.slow_ok = std::abs(fu.speed - script_c) <= opts.slow_tol * script_c;

    const double eps = opts.plateau_eps_frac * (regime.c_v - script_c);
    const double lo = (script_c + eps) * last.t, hi = (regime.c_v - eps) * last.t;
    double vmin = 1.0;
    bool seen = false;
    for (int i = 0; i < traj.cfg.grid.n; ++i) {
        if (xs[i] >= lo && xs[i] <= hi) {
            vmin = std::min(vmin, last.v[i]);
            seen = true;
        }
    }
    rep.plateau_min = seen ? vmin : FrontTrace::absent;
    rep.plateau_ok = seen && vmin >= opts.plateau_required;
    rep.pass = rep.fast_ok && rep.slow_ok && rep.plateau_ok;
    rep.detail = (regime.tag == RegimeTag::SlowFrontCStarStar)
                     ? "c_v in (2, f(c*)): nonlocal pulling, slow front at c_**"
                     : "c_v >= f(c*): slow front at c*";
    return rep;
}

/// sup over x in [x_lo, x_hi] of |u - U(x - c t - shift)| + |v - V(...)|.
inline double sup_distance_to_wave(const FieldState& s, const Grid1D& grid,
                                   const WaveInterpolant& w, double c, double shift,
                                   double x_lo, double x_hi) {
    double worst = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        if (x < x_lo || x > x_hi) continue;
        const double xi = x - c * s.t - shift;
        worst = std::max(worst, std::abs(s.u[i] - w.u(xi)) + std::abs(s.v[i] - w.v(xi)));
    }
    return worst;
}

enum class ConvergenceWindow {
    RightHalfLine,    ///< x in [0, domain margin]
    BetweenZeroAndC0T ///< x in [0, c0 t), fast-front regime
};

struct ConvergenceSeries {
    std::vector<double> t;
    std::vector<double> sup_dist;
    std::vector<double> shift; ///< fitted translation (houses the limit constants)
};

/// Distance of each developed snapshot to the traveling wave, after aligning
/// the wave by the rightmost u = 1/2 crossing. The fitted shift series
/// converging to a constant is the empirical signature of locking onto a wave.
inline ConvergenceSeries profile_convergence(const Trajectory& traj, const WaveInterpolant& w,
                                             double c,
                                             ConvergenceWindow window = ConvergenceWindow::RightHalfLine,
                                             double c0 = 0.0, double t_min = 100.0) {
    ConvergenceSeries out;
    const Grid1D& grid = traj.cfg.grid;
    const std::vector<double> xs = grid.points();
    const double x_margin = grid.x_max - 0.1 * grid.length();
    for (const FieldState& s : traj.snapshots) {
        if (s.t < t_min) continue;
        const auto pos = crossing_position(xs, s.u, 0.5, CrossDir::Rightmost);
        if (!pos) continue;
        const double shift = *pos - c * s.t; // wave is normalized by U(0) = 1/2
        double hi = x_margin;
        if (window == ConvergenceWindow::BetweenZeroAndC0T) hi = std::min(hi, c0 * s.t);
        out.t.push_back(s.t);
        out.shift.push_back(shift);
        out.sup_dist.push_back(sup_distance_to_wave(s, grid, w, c, shift, 0.0, hi));
    }
    if (out.t.empty())
        throw NoFront("profile_convergence: u never crosses 1/2 after t_min");
    return out;
}

} // namespace cdlab
