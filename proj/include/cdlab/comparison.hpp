#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/simulate.hpp"
#include "cdlab/subsuper.hpp"

namespace cdlab {

struct SandwichOptions {
    double t_min = 20.0;    ///< first trajectory time entering the comparison
    double x_min = 0.0;     ///< Scenario-A check lives on the right half-line
    double x_max = std::numeric_limits<double>::infinity();
    double shift_max = 200.0;
    double slack = 0.02; ///< discretization credit on the ordering
};

/// Result of the two-sided trapping search: time shifts T* (sub) and T**
/// (super) under which the trajectory stays between the pair fields.
struct SandwichReport {
    bool found_sub = false, found_super = false;
    double T_sub = std::numeric_limits<double>::quiet_NaN();
    double T_super = std::numeric_limits<double>::quiet_NaN();
    double worst_sub = std::numeric_limits<double>::infinity();
    double worst_super = std::numeric_limits<double>::infinity();
    double best_seen_sub = std::numeric_limits<double>::infinity();
    double best_seen_super = std::numeric_limits<double>::infinity();
    bool pass = false;
};

/// Search bounded shifts such that u(t+T*, x) >= u_(t, x), v(t+T*, x) <= v^(t, x)
/// (sub pair) and u(t, x) <= u^(t+T**, x), v(t, x) >= v_(t+T**, x) (super pair)
/// hold on the checked region up to the slack. Shifts are multiples of the
/// snapshot spacing. NoShiftFound is reported as pass = false with the best
/// violation seen.
inline SandwichReport check_sandwich(const Trajectory& traj, const SubSuperPair& sub,
                                     const SubSuperPair& sup, SandwichOptions opts = {}) {
    if (sub.spec().kind != PairKind::Sub || sup.spec().kind != PairKind::Super)
        throw SpecInvalid("check_sandwich: pass (sub, super) in that order");
    const Grid1D& grid = traj.cfg.grid;
    const std::vector<double> xs = grid.points();
    const double x_hi = std::min(opts.x_max, grid.x_max - 0.1 * grid.length());
    const std::size_t N = traj.snapshots.size();
    if (N < 2) throw InsufficientData("check_sandwich: trajectory has no evolution");
    const double snap_dt = traj.snapshots[1].t - traj.snapshots[0].t;
    const long max_shift_steps = std::lround(opts.shift_max / snap_dt);

    SandwichReport rep;

    // sub side: trajectory shifted forward by T against the pair at t
    for (long k = 0; k <= max_shift_steps && !rep.found_sub; ++k) {
        double worst = 0.0;
        for (std::size_t i = 0; i + k < N; ++i) {
            const FieldState& ref = traj.snapshots[i];
            if (ref.t < opts.t_min) continue;
            const FieldState& cur = traj.snapshots[i + k];
            for (int j = 0; j < grid.n; ++j) {
                const double x = xs[j];
                if (x < opts.x_min || x > x_hi) continue;
                const double du = sub.u(ref.t, x) - cur.u[j];
                const double dv = cur.v[j] - sub.v(ref.t, x);
                worst = std::max({worst, du, dv});
                if (worst > opts.slack) break;
            }
            if (worst > opts.slack) break;
        }
        rep.best_seen_sub = std::min(rep.best_seen_sub, worst);
        if (worst <= opts.slack) {
            rep.found_sub = true;
            rep.T_sub = k * snap_dt;
            rep.worst_sub = worst;
        }
    }

    // super side: pair shifted forward by T against the trajectory at t
    for (long k = 0; k <= max_shift_steps && !rep.found_super; ++k) {
        double worst = 0.0;
        const double T = k * snap_dt;
        for (std::size_t i = 0; i < N; ++i) {
            const FieldState& cur = traj.snapshots[i];
            if (cur.t < opts.t_min) continue;
            for (int j = 0; j < grid.n; ++j) {
                const double x = xs[j];
                if (x < opts.x_min || x > x_hi) continue;
                const double du = cur.u[j] - sup.u(cur.t + T, x);
                const double dv = sup.v(cur.t + T, x) - cur.v[j];
                worst = std::max({worst, du, dv});
                if (worst > opts.slack) break;
            }
            if (worst > opts.slack) break;
        }
        rep.best_seen_super = std::min(rep.best_seen_super, worst);
        if (worst <= opts.slack) {
            rep.found_super = true;
            rep.T_super = T;
            rep.worst_super = worst;
        }
    }

    rep.pass = rep.found_sub && rep.found_super;
    return rep;
}

/// Discrete comparison-principle check on an ordered pair of runs.
struct OrderingReport {
    double max_u_violation = 0.0; ///< max of u_low - u_high over all snapshots
    double max_v_violation = 0.0; ///< max of v_high - v_low
    double first_violation_t = std::numeric_limits<double>::quiet_NaN();
    double tolerance = 1e-8;
    bool pass = true;
};

/// Run both configurations in lockstep and assert that the partial order
/// u_low <= u_high, v_low >= v_high is preserved at every snapshot within
/// the tolerance. A violation signals the time step is too large for the
/// discrete scheme to be order-preserving.
inline OrderingReport check_comparison_principle(const SimConfig& cfg_low,
                                                 const SimConfig& cfg_high,
                                                 FieldState init_low, FieldState init_high,
                                                 double tol = 1e-8) {
    if (cfg_low.grid.n != cfg_high.grid.n || cfg_low.grid.x_min != cfg_high.grid.x_min ||
        cfg_low.grid.x_max != cfg_high.grid.x_max || cfg_low.dt != cfg_high.dt ||
        cfg_low.t_end != cfg_high.t_end)
        throw DomainError("check_comparison_principle: grids and steps must be identical");

    for (int i = 0; i < cfg_low.grid.n; ++i) {
        if (init_low.u[i] > init_high.u[i] + 1e-12 || init_low.v[i] < init_high.v[i] - 1e-12)
            throw DomainError("check_comparison_principle: initial data not ordered");
    }

    Simulator lo(cfg_low, std::move(init_low));
    Simulator hi(cfg_high, std::move(init_high));
    const long total = std::lround(cfg_low.t_end / cfg_low.dt);
    const long every = std::max<long>(1, std::lround(cfg_low.snapshot_dt / cfg_low.dt));

    OrderingReport rep;
    rep.tolerance = tol;
    auto inspect = [&]() {
        const FieldState& a = lo.state();
        const FieldState& b = hi.state();
        for (int i = 0; i < cfg_low.grid.n; ++i) {
            const double vu = a.u[i] - b.u[i];
            const double vv = b.v[i] - a.v[i];
            if (vu > rep.max_u_violation) rep.max_u_violation = vu;
            if (vv > rep.max_v_violation) rep.max_v_violation = vv;
            if ((vu > tol || vv > tol) && std::isnan(rep.first_violation_t))
                rep.first_violation_t = a.t;
        }
    };
    inspect();
    for (long k = 1; k <= total; ++k) {
        lo.step();
        hi.step();
        if (k % every == 0 || k == total) inspect();
    }
    rep.pass = rep.max_u_violation <= tol && rep.max_v_violation <= tol;
    return rep;
}

/// Convenience overload building both initial states from the configs.
inline OrderingReport check_comparison_principle(const SimConfig& cfg_low,
                                                 const SimConfig& cfg_high, double tol = 1e-8) {
    return check_comparison_principle(cfg_low, cfg_high,
                                      make_initial_data(cfg_low.ic, cfg_low.grid),
                                      make_initial_data(cfg_high.ic, cfg_high.grid), tol);
}

} // namespace cdlab
