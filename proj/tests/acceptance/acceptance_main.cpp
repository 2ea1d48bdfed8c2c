// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
// Fixtures (waves, long Cauchy runs) are shared across criteria and computed
// on first use.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cdlab/comparison.hpp"
#include "cdlab/determinacy.hpp"
#include "cdlab/fit.hpp"
#include "cdlab/regime.hpp"
#include "cdlab/simulate.hpp"
#include "cdlab/spreading.hpp"
#include "cdlab/subsuper.hpp"
#include "cdlab/wave.hpp"
#include "cdlab/wave_fit.hpp"

using namespace cdlab;

namespace {

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << (detail.str().empty() ? "" : "; ") << "FAILED: " << what;
        }
    }
    void note(const std::string& what) {
        detail << (detail.str().empty() ? "" : "; ") << what;
    }
};

std::string fmt(double v, int prec = 6) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    return buf;
}

// ------------------------------------------------------------- fixtures

const Params kLlw{0.5, 1.5, 1.0, 1.0};
const Params kPushed{0.9, 5.0, 1.0, 1.0};
const Params kFasterU{0.5, 1.5, 0.5, 1.0};
const Params kD4{0.5, 1.5, 4.0, 1.0};
const Params kPull{0.25, 1.5, 1.21, 1.0};

template <class T>
const T& cached(std::optional<T>& slot, const std::function<T()>& make) {
    if (!slot) slot = make();
    return *slot;
}

std::optional<MinimalSpeedResult> g_w_llw, g_w_pushed, g_w_d4, g_w_pull;
std::optional<Trajectory> g_run_llw, g_run_pushed, g_run_fasteru, g_run_d4, g_run_pull;

const MinimalSpeedResult& wave_llw() {
    return cached<MinimalSpeedResult>(g_w_llw, [] { return minimal_speed(kLlw, 1e-3); });
}
const MinimalSpeedResult& wave_pushed() {
    return cached<MinimalSpeedResult>(g_w_pushed, [] { return minimal_speed(kPushed, 1e-3); });
}
const MinimalSpeedResult& wave_d4() {
    return cached<MinimalSpeedResult>(g_w_d4, [] { return minimal_speed(kD4, 1e-3); });
}
const MinimalSpeedResult& wave_pull() {
    return cached<MinimalSpeedResult>(g_w_pull, [] { return minimal_speed(kPull, 1e-3); });
}

SimConfig scenario_config(const Params& p, ICKind kind, double t_end, double x_min,
                          double x_max, double dt, double snapshot_dt) {
    SimConfig sc;
    sc.params = p;
    sc.ic.kind = kind;
    sc.t_end = t_end;
    sc.dt = dt;
    sc.snapshot_dt = snapshot_dt;
    sc.obs_dt = 0.5;
    sc.grid = Grid1D::with_spacing(x_min, x_max, 0.1);
    return sc;
}

const Trajectory& run_llw() { // criterion 3: h = 0.1, dt = 0.05 as stated
    return cached<Trajectory>(g_run_llw, [] {
        return run(scenario_config(kLlw, ICKind::ScenarioA, 200.0, -150.0, 400.0, 0.05, 10.0));
    });
}
const Trajectory& run_pushed() {
    return cached<Trajectory>(g_run_pushed, [] {
        return run(scenario_config(kPushed, ICKind::ScenarioA, 300.0, -150.0, 450.0, 0.05, 5.0));
    });
}
const Trajectory& run_fasteru() {
    return cached<Trajectory>(g_run_fasteru, [] {
        return run(
            scenario_config(kFasterU, ICKind::ScenarioB, 500.0, -1300.0, 1300.0, 0.05, 50.0));
    });
}
const Trajectory& run_d4() {
    return cached<Trajectory>(g_run_d4, [] {
        return run(scenario_config(kD4, ICKind::ScenarioB, 500.0, -2550.0, 2550.0, 0.025, 50.0));
    });
}
const Trajectory& run_pull() {
    return cached<Trajectory>(g_run_pull, [] {
        return run(scenario_config(kPull, ICKind::ScenarioB, 500.0, -1400.0, 1400.0, 0.05, 50.0));
    });
}

const FieldState& snapshot_at(const Trajectory& traj, double t) {
    for (const FieldState& s : traj.snapshots)
        if (std::abs(s.t - t) < 1e-9) return s;
    throw Error("acceptance: no snapshot at t = " + fmt(t));
}

// ------------------------------------------------------------- criteria

Check criterion_1_formula_suite() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();

    for (double a : {0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.75, 0.9, 0.95})
        c.require(std::abs(aux_f(2.0, a) - 2.0) <= 1e-10, "f(2) = 2 at a = " + fmt(a));

    for (double a : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const double lo = 2.0 * std::sqrt(1.0 - a) + 1e-6;
        for (int k = 0; k <= 200; ++k) {
            const double cc = lo + (10.0 - lo) * k / 200.0;
            const double cp = aux_f(cc, a);
            if (std::abs(aux_f_inverse(cp, a) - cc) > 1e-10) {
                c.require(false, "f^-1(f(c)) = c at a = " + fmt(a) + ", c = " + fmt(cc));
                break;
            }
        }
    }

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> ua(0.05, 0.95), ub(1.1, 6.0), ud(0.3, 4.0),
        ur(0.3, 4.0);
    bool quad_ok = true;
    for (int k = 0; k < 500 && quad_ok; ++k) {
        const Params p{ua(rng), ub(rng), ud(rng), ur(rng)};
        const double cc = p.c_lin() + 1e-3 + 3.0 * std::generate_canonical<double, 53>(rng);
        const SpectralExponents se = spectral_exponents(cc, p);
        auto check_rel = [&](double poly, double scale) { return std::abs(poly) / scale <= 1e-12; };
        for (double s : {se.lambda_u_minus, se.lambda_u_plus})
            quad_ok &= check_rel(s * s + cc * s + (1.0 - p.a),
                                 s * s + cc * std::abs(s) + (1.0 - p.a));
        for (double s : {se.lambda_v_minus, se.lambda_v_plus})
            quad_ok &= check_rel(p.d * s * s + cc * s - p.r,
                                 p.d * s * s + cc * std::abs(s) + p.r);
        for (double s : {se.mu_u_minus, se.mu_u_plus})
            quad_ok &= check_rel(s * s + cc * s - 1.0, s * s + cc * std::abs(s) + 1.0);
        for (double s : {se.mu_v_minus, se.mu_v_plus})
            quad_ok &= check_rel(p.d * s * s + cc * s - p.r * (p.b - 1.0),
                                 p.d * s * s + cc * std::abs(s) + p.r * (p.b - 1.0));
    }
    c.require(quad_ok, "spectral exponents satisfy their quadratics to 1e-12 relative");

    const double css = aux_f_inverse(2.0 * std::sqrt(1.21), 0.25);
    c.require(std::abs(css - 1.85) <= 1e-12, "c_**(a=0.25, rd=1.21) = 1.85 to 1e-12");
    const SpeedRegime reg = speed_regime(kPull, kPull.c_lin());
    c.require(reg.c_star_star && std::abs(*reg.c_star_star - 1.85) <= 1e-12,
              "speed_regime reproduces c_** = 1.85");

    const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(el < 1.0, "runtime < 1 s");
    c.note("runtime " + fmt(el, 3) + " s");
    return c;
}

Check criterion_2_kan_on_interval() {
    Check c;
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ua(0.1, 0.9), ub(1.3, 4.0), ud(0.4, 3.0),
        ur(0.4, 3.0);
    FreezeOptions coarse;
    coarse.h = 0.1;
    coarse.dt = 0.05;
    coarse.window = 40.0;
    coarse.t_max = 900.0;
    int failures = 0;
    double worst_gap = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Params p{ua(rng), ub(rng), ud(rng), ur(rng)};
        try {
            const MinimalSpeedResult ms = minimal_speed(p, 5e-3, {}, coarse);
            const bool inside = ms.c_star >= p.c_lin() - 1e-9 && ms.c_star <= 2.0 + 1e-9;
            // the raw comoving estimate must already sit essentially inside
            const bool raw_near = ms.c_hat_raw >= p.c_lin() - 0.05 && ms.c_hat_raw <= 2.05;
            if (!inside || !raw_near || !ms.profile.converged) {
                ++failures;
                c.note("point " + std::to_string(k) + " (a=" + fmt(p.a, 3) + ",b=" +
                       fmt(p.b, 3) + ",d=" + fmt(p.d, 3) + ",r=" + fmt(p.r, 3) +
                       "): c*=" + fmt(ms.c_star) + " raw=" + fmt(ms.c_hat_raw));
            }
            worst_gap = std::max(worst_gap, ms.c_star - 2.0);
            worst_gap = std::max(worst_gap, p.c_lin() - ms.c_star);
        } catch (const std::exception& e) {
            ++failures;
            c.note(std::string("point ") + std::to_string(k) + " threw: " + e.what());
        }
    }
    c.require(failures == 0, "all 50 random (H1) draws give c* in [2 sqrt(1-a), 2]");
    c.note("worst signed distance outside interval " + fmt(worst_gap, 3));
    return c;
}

Check criterion_3_linear_selection() {
    Check c;
    const DeterminacyVerdict dv = classify_determinacy(kLlw);
    c.require(dv.llw_holds, "Lewis-Li-Weinberger condition holds at (0.5, 1.5, 1, 1)");
    const MinimalSpeedResult& ms = wave_llw();
    c.require(std::abs(ms.c_star - std::sqrt(2.0)) <= 5e-3,
              "|c* - sqrt(2)| <= 5e-3 (got " + fmt(ms.c_star, 8) + ")");
    const FrontTrace tr = trace_for(run_llw(), Species::U, 0.5, CrossDir::Rightmost);
    const SpeedFit fit = fit_speed(tr, 100.0, 200.0);
    const double rel = std::abs(fit.speed - ms.c_star) / ms.c_star;
    c.require(rel <= 0.03, "front speed on [100,200] within 3% of c*");
    c.note("c* = " + fmt(ms.c_star, 8) + ", measured " + fmt(fit.speed, 6) + " (" +
           fmt(100 * rel, 2) + "%)");
    return c;
}

Check criterion_4_nonlinear_selection() {
    Check c;
    const DeterminacyVerdict dv = classify_determinacy(kPushed);
    c.require(dv.ao_nonlinear_holds, "Alhasanat-Ou inequality holds at (0.9, 5, 1, 1)");
    const MinimalSpeedResult& ms = wave_pushed();
    const double lin = kPushed.c_lin();
    c.require(ms.c_star >= lin + 0.02,
              "c* >= 2 sqrt(0.1) + 0.02 (got " + fmt(ms.c_star, 8) + ")");
    const FrontTrace tr = trace_for(run_pushed(), Species::U, 0.5, CrossDir::Rightmost);
    const SpeedFit fit = fit_speed(tr, 100.0, 300.0);
    const double rel = std::abs(fit.speed - ms.c_star) / ms.c_star;
    c.require(rel <= 0.03, "front speed on [100,300] within 3% of c*");
    c.note("c* = " + fmt(ms.c_star, 8) + " (gap " + fmt(ms.c_star - lin, 3) + "), measured " +
           fmt(fit.speed, 6) + " (" + fmt(100 * rel, 2) + "%)");
    return c;
}

Check criterion_5_wave_convergence() {
    Check c;
    const MinimalSpeedResult& ms = wave_pushed();
    const WaveInterpolant w(ms.profile, kPushed);
    const ConvergenceSeries conv = profile_convergence(run_pushed(), w, ms.c_star);
    double d200 = -1.0, d300 = -1.0;
    for (std::size_t i = 0; i < conv.t.size(); ++i) {
        if (std::abs(conv.t[i] - 200.0) < 1e-9) d200 = conv.sup_dist[i];
        if (std::abs(conv.t[i] - 300.0) < 1e-9) d300 = conv.sup_dist[i];
    }
    c.require(d300 >= 0.0 && d200 >= 0.0, "distances sampled at t = 200 and t = 300");
    c.require(d300 < 0.05, "sup |u-U| + |v-V| < 0.05 at t = 300");
    // decreasing over the last 100 units, or already at the converged floor
    c.require(d300 <= d200 || d300 < 5e-3,
              "distance decreasing over the last 100 time units");
    c.note("dist(200) = " + fmt(d200, 3) + ", dist(300) = " + fmt(d300, 3) + ", shift " +
           fmt(conv.shift.back(), 4));
    return c;
}

Check criterion_6_regimes() {
    Check c;
    { // (i) c_u > c_v: v dies out ahead, u invades at c_u
        const FieldState& s300 = snapshot_at(run_fasteru(), 300.0);
        double vmax = 0.0;
        for (int i = 0; i < run_fasteru().cfg.grid.n; ++i)
            if (run_fasteru().cfg.grid.x(i) >= 0.0) vmax = std::max(vmax, s300.v[i]);
        c.require(vmax < 0.01, "sup_{x>=0} v < 0.01 by t = 300 (got " + fmt(vmax, 3) + ")");
        const FrontTrace tu = trace_for(run_fasteru(), Species::U, 0.5, CrossDir::Rightmost);
        const SpeedFit fu = fit_speed(tu, 300.0, 500.0);
        c.require(std::abs(fu.speed - 2.0) <= 0.03 * 2.0,
                  "u-front speed within 3% of c_u = 2 (got " + fmt(fu.speed) + ")");
        const SpeedRegime reg = speed_regime(kFasterU, std::sqrt(2.0));
        const RegimeReport rep = detect_regimes(run_fasteru(), kFasterU, reg);
        c.require(rep.pass && rep.tag == RegimeTag::FasterU, "detect_regimes confirms case (1)");
    }
    { // (ii) c_v > c_u with c_v >= f(c*): fronts at c_v and c*, plateau between
        const MinimalSpeedResult& ms = wave_d4();
        const SpeedRegime reg = speed_regime(kD4, ms.c_star);
        c.require(reg.tag == RegimeTag::SlowFrontCStar, "c_v = 4 >= f(c*): no pulling");
        const FrontTrace tv = trace_for(run_d4(), Species::V, 0.5, CrossDir::Rightmost);
        const FrontTrace tu = trace_for(run_d4(), Species::U, 0.5, CrossDir::Rightmost);
        const SpeedFit fv = fit_speed(tv, 300.0, 500.0);
        const SpeedFit fu = fit_speed(tu, 300.0, 500.0);
        c.require(std::abs(fv.speed - 4.0) <= 0.03 * 4.0,
                  "fast v-front within 3% of c_v = 4 (got " + fmt(fv.speed) + ")");
        c.require(std::abs(fu.speed - ms.c_star) <= 0.05 * ms.c_star,
                  "slow u-front within 5% of c* (got " + fmt(fu.speed) + " vs " +
                      fmt(ms.c_star) + ")");
        const FieldState& s300 = snapshot_at(run_d4(), 300.0);
        const double eps = 0.125 * (4.0 - ms.c_star);
        double vmin = 1.0;
        for (int i = 0; i < run_d4().cfg.grid.n; ++i) {
            const double x = run_d4().cfg.grid.x(i);
            if (x >= (ms.c_star + eps) * 300.0 && x <= (4.0 - eps) * 300.0)
                vmin = std::min(vmin, s300.v[i]);
        }
        c.require(vmin >= 0.95, "inter-front v-plateau >= 0.95 (got " + fmt(vmin, 4) + ")");
        const RegimeReport rep = detect_regimes(run_d4(), kD4, reg);
        c.require(rep.pass, "detect_regimes confirms case (2)");
    }
    return c;
}

Check criterion_7_nonlocal_pulling() {
    Check c;
    const MinimalSpeedResult& ms = wave_pull();
    const double cv = kPull.c_v();
    c.require(std::abs(cv - 2.2) <= 1e-12, "c_v = 2.2");
    const double fc = aux_f(ms.c_star, kPull.a);
    c.require(cv > 2.0 && cv < fc,
              "2 sqrt(rd) in (2, f(c*)) verified numerically (f(c*) = " + fmt(fc) + ")");
    const SpeedRegime reg = speed_regime(kPull, ms.c_star);
    c.require(reg.tag == RegimeTag::SlowFrontCStarStar && reg.c_star_star.has_value(),
              "regime selects the accelerated speed");
    const double css = *reg.c_star_star;
    const FrontTrace tu = trace_for(run_pull(), Species::U, 0.5, CrossDir::Rightmost);
    const SpeedFit fu = fit_speed(tu, 300.0, 500.0);
    c.require(std::abs(fu.speed - css) < std::abs(fu.speed - ms.c_star),
              "slow front closer to c_** than to c*");
    c.require(std::abs(fu.speed - css) <= 0.05 * css, "slow front within 5% of c_**");
    c.note("measured " + fmt(fu.speed) + ", c_** = " + fmt(css) + ", c* = " + fmt(ms.c_star));
    return c;
}

Check criterion_8_log_drift() {
    Check c;
    { // synthetic oracle is exact
        FrontTrace tr;
        for (double t = 50.0; t <= 500.0; t += 0.5) {
            tr.times.push_back(t);
            tr.positions.push_back(2.0 * t - 1.5 * std::log(t) + 0.3);
        }
        const DriftFit f = fit_log_drift(tr, 2.0, 50.0, 500.0);
        c.require(std::abs(f.kappa - 1.5) <= 1e-8 && std::abs(f.C - 0.3) <= 1e-8 &&
                      f.residual_sup <= 1e-8,
                  "synthetic drift fit exact to 1e-8");
    }
    { // c_u > c_v: u-front kappa ~ 3/c_u
        const FrontTrace tu = trace_for(run_fasteru(), Species::U, 0.5, CrossDir::Rightmost);
        const DriftFit f = fit_log_drift(tu, 2.0, 50.0, 500.0);
        const double pred = 3.0 / 2.0;
        c.require(f.kappa >= 0.7 * pred && f.kappa <= 1.3 * pred,
                  "u-front kappa in [0.7, 1.3] x 3/c_u (got " + fmt(f.kappa, 4) + ")");
    }
    { // fast-v regime: v-front kappa ~ 3d/c_v
        const FrontTrace tv = trace_for(run_d4(), Species::V, 0.5, CrossDir::Rightmost);
        const DriftFit f = fit_log_drift(tv, 4.0, 50.0, 500.0);
        const double pred = 3.0 * 4.0 / 4.0;
        c.require(f.kappa >= 0.7 * pred && f.kappa <= 1.3 * pred,
                  "v-front kappa in [0.7, 1.3] x 3d/c_v (got " + fmt(f.kappa, 4) + ")");
    }
    return c;
}

Check criterion_9_sub_super_residuals() {
    Check c;
    const MinimalSpeedResult& ms = wave_pushed();
    const WaveInterpolant w(ms.profile, kPushed);
    ResidualRegion base;
    const double slack = residual_slack(kPushed, w, base);

    const SteepRefineResult fine =
        refine_steep_speed(kPushed, ms.c_star, WaveOptions::with_domain(60.0, 0.01));
    const WaveInterpolant wf(fine.wave.profile, kPushed);
    const double slack_fine = residual_slack(kPushed, wf, base);
    const double order = std::log2(slack / slack_fine);
    c.require(order >= 1.9, "exact-wave residual refinement order >= 1.9 (got " +
                                fmt(order, 3) + ")");
    c.note("baseline " + fmt(slack / 10.0, 3) + " -> " + fmt(slack_fine / 10.0, 3));

    const SubSuperPair sub(kPushed, w, choose_parameters(kPushed, w, PairKind::Sub));
    const ResidualReport rs = find_activation_time(sub, slack);
    c.require(rs.pass, "sub-solution signs hold on [T, T+100] x [c*t-40, c*t+40]");
    c.note("sub T = " + fmt(rs.T_star) + ", N1 max " + fmt(rs.n1_max, 3) + ", N2 min " +
           fmt(rs.n2_min, 3));

    const SubSuperPair sup(kPushed, w, choose_parameters(kPushed, w, PairKind::Super));
    const ResidualReport rp = find_activation_time(sup, slack);
    c.require(rp.pass, "super-solution signs hold on [T, T+100] x [c*t-40, c*t+40]");
    c.note("super T = " + fmt(rp.T_star) + ", N1 min " + fmt(rp.n1_min, 3) + ", N2 max " +
           fmt(rp.n2_max, 3));
    return c;
}

Check criterion_10_comparison_and_sandwich() {
    Check c;
    SimConfig sc;
    sc.params = kLlw;
    sc.grid = Grid1D::with_spacing(-60.0, 60.0, 0.1);
    sc.dt = 0.01;
    sc.t_end = 50.0;
    sc.snapshot_dt = 1.0;
    sc.ic.kind = ICKind::ScenarioB;
    { // identical pair: equality to round-off
        const OrderingReport rep = check_comparison_principle(sc, sc);
        c.require(rep.pass && rep.max_u_violation <= 1e-12,
                  "identical runs stay equal (violation " + fmt(rep.max_u_violation, 3) + ")");
    }
    { // lifted pair
        FieldState low = make_initial_data(sc.ic, sc.grid);
        FieldState high = low;
        for (double& u : high.u) u = std::min(u + 0.1, 1.0);
        const OrderingReport rep = check_comparison_principle(sc, sc, low, high);
        c.require(rep.pass, "lifted pair ordered to 1e-8 at all snapshots (worst " +
                                fmt(std::max(rep.max_u_violation, rep.max_v_violation), 3) +
                                ")");
    }
    { // Scenario-B vs Scenario-A with a v-floor
        FieldState high = make_initial_data(sc.ic, sc.grid);
        FieldState low = high;
        for (double& v : low.v) v = std::max(v, 0.5);
        const OrderingReport rep = check_comparison_principle(sc, sc, low, high);
        c.require(rep.pass, "Scenario-A u dominated by Scenario-B u (worst " +
                                fmt(std::max(rep.max_u_violation, rep.max_v_violation), 3) +
                                ")");
    }
    { // two-sided trapping on the Scenario-A pushed run
        const MinimalSpeedResult& ms = wave_pushed();
        const WaveInterpolant w(ms.profile, kPushed);
        const SubSuperPair sub(kPushed, w, choose_parameters(kPushed, w, PairKind::Sub));
        const SubSuperPair sup(kPushed, w, choose_parameters(kPushed, w, PairKind::Super));
        SandwichOptions opts;
        opts.t_min = 30.0;
        const SandwichReport rep = check_sandwich(run_pushed(), sub, sup, opts);
        c.require(rep.found_sub && rep.T_sub <= 200.0,
                  "sub shift T* <= 200 found (T* = " + fmt(rep.T_sub) + ")");
        c.require(rep.found_super && rep.T_super <= 200.0,
                  "super shift T** <= 200 found (T** = " + fmt(rep.T_super) + ")");
        c.note("worst violations " + fmt(rep.worst_sub, 3) + " / " + fmt(rep.worst_super, 3) +
               " vs slack " + fmt(opts.slack, 3));
    }
    return c;
}

Check criterion_11_transient_and_interior_rates() {
    Check c;
    { // overshoot above 1 decays at rate >= 0.9
        SimConfig sc;
        sc.params = kLlw;
        sc.grid = Grid1D::with_spacing(-30.0, 30.0, 0.1);
        sc.dt = 0.02;
        sc.t_end = 12.0;
        sc.snapshot_dt = 1.0;
        sc.obs_dt = 0.1;
        FieldState init;
        init.t = 0.0;
        init.u.resize(sc.grid.n);
        init.v.resize(sc.grid.n);
        for (int i = 0; i < sc.grid.n; ++i) {
            const double x = sc.grid.x(i);
            init.u[i] = 1.0 + 0.49 * std::exp(-x * x / 50.0);
            init.v[i] = 1.0;
        }
        const Trajectory traj = run(sc, init);
        std::vector<double> ts, qu;
        for (std::size_t i = 0; i < traj.obs.t.size(); ++i) {
            const double du = traj.obs.sup_u[i] - 1.0;
            if (du > 1e-10 && du < 0.5) {
                ts.push_back(traj.obs.t[i]);
                qu.push_back(du);
            }
        }
        const ExpFit f = fit_exponential(ts, qu);
        c.require(-f.rate >= 0.9,
                  "(sup u - 1)+ decays at rate >= 0.9 (got " + fmt(-f.rate, 4) + ")");
    }
    { // interior convergence at x = 0 in the Scenario-A run
        std::vector<double> ts, qu, qv;
        const Grid1D& g = run_pushed().cfg.grid;
        const int i0 = static_cast<int>(std::lround((0.0 - g.x_min) / g.h()));
        for (const FieldState& s : run_pushed().snapshots) {
            if (s.t < 50.0) continue;
            ts.push_back(s.t);
            qu.push_back(1.0 - s.u[i0]);
            qv.push_back(s.v[i0]);
        }
        const ExpFit fu = fit_exponential(ts, qu);
        const ExpFit fv = fit_exponential(ts, qv);
        c.require(-fu.rate > 0.0, "1 - u(t, 0) decays exponentially (rate " +
                                      fmt(-fu.rate, 4) + ")");
        c.require(-fv.rate > 0.0, "v(t, 0) decays exponentially (rate " + fmt(-fv.rate, 4) +
                                      ")");
    }
    return c;
}

} // namespace

int main() {
    struct Entry {
        int id;
        const char* name;
        std::function<Check()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "formula suite (f, f^-1, spectral quadratics, c_**)", criterion_1_formula_suite},
        {2, "Kan-on interval for 50 random (H1) parameter sets", criterion_2_kan_on_interval},
        {3, "linear selection at (0.5, 1.5, 1, 1)", criterion_3_linear_selection},
        {4, "nonlinear selection at (0.9, 5, 1, 1)", criterion_4_nonlinear_selection},
        {5, "convergence to the traveling wave (Scenario A)", criterion_5_wave_convergence},
        {6, "two-front spreading regimes", criterion_6_regimes},
        {7, "nonlocal pulling speed c_**", criterion_7_nonlocal_pulling},
        {8, "Bramson logarithmic drift", criterion_8_log_drift},
        {9, "sub/super-solution differential inequalities", criterion_9_sub_super_residuals},
        {10, "comparison principle and two-sided trapping", criterion_10_comparison_and_sandwich},
        {11, "transient bound and interior rates", criterion_11_transient_and_interior_rates},
    };

    int failed = 0;
    const auto suite_t0 = std::chrono::steady_clock::now();
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            c = e.fn();
        } catch (const std::exception& ex) {
            c.pass = false;
            c.detail << "exception: " << ex.what();
        }
        const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d: %s (%.1fs)%s%s\n", c.pass ? "PASS" : "FAIL", e.id,
                    e.name, el, c.detail.str().empty() ? "" : " -- ",
                    c.detail.str().c_str());
        std::fflush(stdout);
        if (!c.pass) ++failed;
    }
    const double total =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - suite_t0).count();
    std::printf("%d/%zu criteria passed in %.0f s\n", static_cast<int>(entries.size()) - failed,
                entries.size(), total);
    return failed == 0 ? 0 : 1;
}
