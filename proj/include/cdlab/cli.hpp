#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdlab/comparison.hpp"
#include "cdlab/csv.hpp"
#include "cdlab/determinacy.hpp"
#include "cdlab/ini.hpp"
#include "cdlab/manifest.hpp"
#include "cdlab/regime.hpp"
#include "cdlab/spreading.hpp"
#include "cdlab/subsuper.hpp"
#include "cdlab/svg.hpp"
#include "cdlab/wave.hpp"

namespace cdlab::cli {

inline Params params_from(const Config& cfg) {
    Params p;
    p.a = cfg.get_double("params", "a", 0.5);
    p.b = cfg.get_double("params", "b", 1.5);
    p.d = cfg.get_double("params", "d", 1.0);
    p.r = cfg.get_double("params", "r", 1.0);
    return p;
}

inline InitialDataSpec ic_from(const Config& cfg) {
    InitialDataSpec ic;
    const std::string kind = cfg.get_string("ic", "kind", "A");
    ic.kind = (kind == "B" || kind == "b") ? ICKind::ScenarioB : ICKind::ScenarioA;
    ic.u_left = cfg.get_double("ic", "u_left", -5.0);
    ic.u_right = cfg.get_double("ic", "u_right", 5.0);
    ic.u_amp = cfg.get_double("ic", "u_amp", 1.0);
    ic.v_left = cfg.get_double("ic", "v_left", -5.0);
    ic.v_right = cfg.get_double("ic", "v_right", 5.0);
    ic.v_amp = cfg.get_double("ic", "v_amp", 1.0);
    ic.v_floor = cfg.get_double("ic", "v_floor", 1.0);
    ic.ramp_cells = static_cast<int>(cfg.get_long("ic", "ramp_cells", 2));
    return ic;
}

inline SimConfig sim_config_from(const Config& cfg) {
    SimConfig sc;
    sc.params = params_from(cfg);
    sc.ic = ic_from(cfg);
    sc.t_end = cfg.get_double("time", "t_end", 100.0);
    sc.dt = cfg.get_double("time", "dt", default_dt(sc.params));
    sc.snapshot_dt = cfg.get_double("time", "snapshot_dt", 1.0);
    sc.obs_dt = cfg.get_double("time", "obs_dt", 0.5);
    const double h = cfg.get_double("grid", "h", 0.1);
    if (cfg.has("grid", "x_min") && cfg.has("grid", "x_max")) {
        sc.grid = Grid1D::with_spacing(cfg.get_double("grid", "x_min", -50.0),
                                       cfg.get_double("grid", "x_max", 50.0), h);
    } else {
        const double smin = std::min(sc.ic.u_left, sc.ic.v_left);
        const double smax = std::max(sc.ic.u_right, sc.ic.v_right);
        sc.grid = suggest_grid(sc.params, smin, smax, sc.t_end, h);
    }
    return sc;
}

inline std::string run_id_for(const std::string& cmd, const Config& cfg) {
    const std::string explicit_id = cfg.get_string("run", "id", "");
    if (!explicit_id.empty()) return explicit_id;
    return cmd + "-" + cfg.hash().substr(0, 8);
}

// ---------------------------------------------------------------- classify

inline int cmd_classify(Config cfg) {
    const Params p = params_from(cfg);
    RunDir dir(run_id_for("classify", cfg), cfg);
    const DeterminacyVerdict dv = classify_determinacy(p);

    nlohmann::json j;
    j["params"] = {{"a", p.a}, {"b", p.b}, {"d", p.d}, {"r", p.r}};
    j["llw_holds"] = dv.llw_holds;
    j["huang_holds"] = dv.huang_holds;
    j["ao_nonlinear_holds"] = dv.ao_nonlinear_holds;
    j["verdict"] = dv.verdict_name();
    j["c_u"] = p.c_u();
    j["c_v"] = p.c_v();
    j["c_lin"] = p.c_lin();
    std::ofstream(dir.file("data/classify.json")) << j.dump(2) << "\n";

    dir.verdict("classified", true);
    dir.note("verdict", dv.verdict_name());
    dir.write_manifest(&p);
    std::cout << "classify: " << dv.verdict_name() << " (llw=" << dv.llw_holds
              << " huang=" << dv.huang_holds << " ao=" << dv.ao_nonlinear_holds << ") run "
              << dir.id() << "\n";
    return 0;
}

// -------------------------------------------------------------------- wave

inline int cmd_wave(Config cfg) {
    const Params p = params_from(cfg);
    RunDir dir(run_id_for("wave", cfg), cfg);
    const double tol = cfg.get_double("wave", "tol", 1e-3);
    WaveOptions opts;
    opts.L = cfg.get_double("wave", "L", 60.0);
    opts.n = static_cast<int>(cfg.get_long("wave", "n", 6001));

    const MinimalSpeedResult ms = minimal_speed(p, tol, opts);
    {
        CsvWriter csv(dir.file("data/profile.csv"));
        csv.header({"xi", "U", "V"});
        for (int i = 0; i < ms.profile.n(); ++i)
            csv.row({ms.profile.xi[i], ms.profile.U[i], ms.profile.V[i]});
    }

    nlohmann::json j;
    j["c_star"] = ms.c_star;
    j["bracket"] = {ms.bracket_lo, ms.bracket_hi};
    j["c_lin"] = p.c_lin();
    j["kan_on_interval"] = {p.c_lin(), 2.0};
    j["comoving_estimate"] = ms.c_hat_raw;
    j["tol"] = tol;
    try {
        const WaveAsymptoticsReport ar = verify_asymptotics(ms.profile, p);
        auto tail = [](const TailFit& t) {
            return nlohmann::json{{"fitted_rate", t.fitted_rate},
                                  {"predicted_rate", t.predicted_rate},
                                  {"amplitude", t.amplitude},
                                  {"secular_preferred", t.secular_preferred},
                                  {"samples", t.samples}};
        };
        j["asymptotics"] = {{"u_plus", tail(ar.u_plus)},
                            {"v_plus", tail(ar.v_plus)},
                            {"v_minus", tail(ar.v_minus)},
                            {"u_minus", tail(ar.u_minus)}};
    } catch (const WindowTooShort& e) {
        j["asymptotics"] = {{"error", e.what()}};
    }
    std::ofstream(dir.file("data/wave.json")) << j.dump(2) << "\n";

    SvgPlot plot("traveling wave c* = " + format_double(ms.c_star).substr(0, 8), "xi", "density");
    plot.add_series("U", ms.profile.xi, ms.profile.U);
    plot.add_series("V", ms.profile.xi, ms.profile.V);
    plot.write(dir.file("plots/profile.svg"));

    const bool in_interval = ms.c_star >= p.c_lin() - 1e-9 && ms.c_star <= 2.0 + 1e-9;
    dir.verdict("c_star_in_kan_on_interval", in_interval);
    dir.note("c_star", ms.c_star);
    dir.write_manifest(&p);
    std::cout << "wave: c* = " << format_double(ms.c_star) << " bracket ["
              << format_double(ms.bracket_lo) << ", " << format_double(ms.bracket_hi)
              << "] run " << dir.id() << "\n";
    return in_interval ? 0 : 1;
}

// ---------------------------------------------------------------- simulate

inline void write_snapshot_csv(CsvWriter& csv, const Grid1D& grid, const FieldState& s) {
    csv.header({"x", "u", "v"});
    for (int i = 0; i < grid.n; ++i) csv.row({grid.x(i), s.u[i], s.v[i]});
}

inline void write_observables_csv(const std::string& path, const Trajectory& traj) {
    CsvWriter csv(path);
    std::vector<std::string> cols{"t", "sup_u", "sup_v", "min_u", "min_v"};
    for (const FrontTrace& tr : traj.obs.traces)
        cols.push_back(std::string("front_") + species_name(tr.species) + "_" +
                       format_double(tr.level).substr(0, 4) +
                       (tr.direction == CrossDir::Rightmost ? "_right" : "_left"));
    csv.header(cols);
    for (std::size_t i = 0; i < traj.obs.t.size(); ++i) {
        std::vector<double> row{traj.obs.t[i], traj.obs.sup_u[i], traj.obs.sup_v[i],
                                traj.obs.min_u[i], traj.obs.min_v[i]};
        for (const FrontTrace& tr : traj.obs.traces) row.push_back(tr.positions[i]);
        csv.row(row);
    }
}

inline int cmd_simulate(Config cfg) {
    const SimConfig sc = sim_config_from(cfg);
    RunDir dir(run_id_for("simulate", cfg), cfg);
    const Trajectory traj = run(sc);

    nlohmann::json meta;
    meta["grid"] = {{"x_min", sc.grid.x_min}, {"x_max", sc.grid.x_max}, {"n", sc.grid.n}};
    meta["dt"] = sc.dt;
    meta["t_end"] = sc.t_end;
    meta["warnings"] = traj.warnings;
    nlohmann::json snaps = nlohmann::json::array();
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        char name[64];
        std::snprintf(name, sizeof(name), "data/snap_%04zu.csv", k);
        CsvWriter csv(dir.file(name));
        write_snapshot_csv(csv, sc.grid, traj.snapshots[k]);
        snaps.push_back({{"file", name}, {"t", traj.snapshots[k].t}});
    }
    meta["snapshots"] = snaps;
    write_observables_csv(dir.file("data/observables.csv"), traj);
    std::ofstream(dir.file("data/metadata.json")) << meta.dump(2) << "\n";

    SvgPlot plot("front positions", "t", "x");
    for (const FrontTrace& tr : traj.obs.traces)
        plot.add_series(std::string(species_name(tr.species)) + "@" +
                            format_double(tr.level).substr(0, 4),
                        tr.times, tr.positions);
    plot.write(dir.file("plots/fronts.svg"));

    dir.verdict("completed", true);
    dir.verdict("no_boundary_warnings", traj.warnings.empty());
    dir.write_manifest(&sc.params);
    std::cout << "simulate: " << traj.snapshots.size() << " snapshots to t = "
              << format_double(traj.final_state().t) << ", " << traj.warnings.size()
              << " warning(s), run " << dir.id() << "\n";
    return 0;
}

// ------------------------------------------------------------------- track

inline int cmd_track(Config cfg) {
    const SimConfig sc = sim_config_from(cfg);
    RunDir dir(run_id_for("track", cfg), cfg);
    const Trajectory traj = run(sc);

    const std::string spec_name = cfg.get_string("track", "species", "u");
    const Species species = (spec_name == "v" || spec_name == "V") ? Species::V : Species::U;
    const double level = cfg.get_double("track", "level", 0.5);
    const CrossDir dirn = cfg.get_string("track", "direction", "right") == "left"
                              ? CrossDir::Leftmost
                              : CrossDir::Rightmost;
    const FrontTrace trace = trace_for(traj, species, level, dirn);

    {
        CsvWriter csv(dir.file("data/trace.csv"));
        csv.header({"t", "position"});
        for (std::size_t i = 0; i < trace.times.size(); ++i)
            csv.row({trace.times[i], trace.positions[i]});
    }

    const double t1 = cfg.get_double("track", "fit_t1", sc.t_end);
    const double t0 = cfg.get_double("track", "fit_t0", std::max(0.6 * sc.t_end, t1 - 200.0));
    nlohmann::json j;
    j["species"] = species_name(species);
    j["level"] = level;
    bool ok = true;
    try {
        const SpeedFit fit = fit_speed(trace, t0, t1);
        j["speed_fit"] = {{"speed", fit.speed},
                          {"intercept", fit.intercept},
                          {"stderr", fit.stderr_speed},
                          {"window", {fit.t0, fit.t1}},
                          {"n", fit.n}};
        SvgPlot plot("front position, fitted speed " + format_double(fit.speed).substr(0, 8),
                     "t", "x");
        plot.add_series("trace", trace.times, trace.positions);
        std::vector<double> fx{t0, t1}, fy{fit.intercept + fit.speed * t0,
                                           fit.intercept + fit.speed * t1};
        plot.add_series("fit", fx, fy);
        plot.write(dir.file("plots/position.svg"));
    } catch (const Error& e) {
        j["speed_fit"] = {{"error", e.what()}};
        ok = false;
    }

    if (cfg.get_bool("track", "drift", false)) {
        const double c_fixed = cfg.get_double(
            "track", "c_fixed", species == Species::U ? sc.params.c_u() : sc.params.c_v());
        try {
            const DriftFit drift = fit_log_drift(trace, c_fixed, std::max(50.0, t0), t1);
            j["drift_fit"] = {{"c_fixed", drift.c_fixed},
                              {"kappa", drift.kappa},
                              {"C", drift.C},
                              {"residual_sup", drift.residual_sup},
                              {"window", {drift.t0, drift.t1}}};
            // diagnostics: y = c t - x against ln t with the fitted line
            std::vector<double> lx, ly, fy2;
            for (std::size_t i = 0; i < trace.times.size(); ++i) {
                const double t = trace.times[i];
                if (t >= drift.t0 && t <= drift.t1 && std::isfinite(trace.positions[i])) {
                    lx.push_back(std::log(t));
                    ly.push_back(c_fixed * t - trace.positions[i]);
                    fy2.push_back(drift.kappa * std::log(t) - drift.C);
                }
            }
            SvgPlot plot("log-drift fit, kappa = " + format_double(drift.kappa).substr(0, 8),
                         "ln t", "c t - x(t)");
            plot.add_series("data", lx, ly);
            plot.add_series("fit", lx, fy2);
            plot.write(dir.file("plots/drift.svg"));
        } catch (const Error& e) {
            j["drift_fit"] = {{"error", e.what()}};
            ok = false;
        }
    }

    if (cfg.get_bool("track", "convergence", false)) {
        // distance of the solution to the minimal traveling wave over time
        try {
            const MinimalSpeedResult ms = minimal_speed(sc.params, cfg.get_double("wave", "tol", 1e-3));
            const WaveInterpolant w(ms.profile, sc.params);
            const ConvergenceSeries conv = profile_convergence(
                traj, w, ms.c_star, ConvergenceWindow::RightHalfLine, 0.0,
                cfg.get_double("track", "convergence_t_min", 100.0));
            CsvWriter csv(dir.file("data/convergence.csv"));
            csv.header({"t", "sup_dist", "shift"});
            for (std::size_t i = 0; i < conv.t.size(); ++i)
                csv.row({conv.t[i], conv.sup_dist[i], conv.shift[i]});
            SvgPlot plot("distance to the traveling wave", "t", "sup |u-U| + |v-V|");
            plot.add_series("sup distance", conv.t, conv.sup_dist);
            plot.write(dir.file("plots/convergence.svg"));
            j["convergence"] = {{"c_star", ms.c_star},
                                {"final_dist", conv.sup_dist.back()},
                                {"final_shift", conv.shift.back()}};
        } catch (const Error& e) {
            j["convergence"] = {{"error", e.what()}};
            ok = false;
        }
    }

    std::ofstream(dir.file("data/track.json")) << j.dump(2) << "\n";
    dir.verdict("fits_computed", ok);
    dir.write_manifest(&sc.params);
    std::cout << "track: " << (ok ? "fits computed" : "fit failed") << ", run " << dir.id()
              << "\n";
    return ok ? 0 : 1;
}

// ------------------------------------------------------------------ verify

inline nlohmann::json spec_json(const SubSuperSpec& s) {
    return {{"kind", s.kind == PairKind::Sub ? "sub" : "super"},
            {"alpha", s.alpha},
            {"mu", s.mu},
            {"tau", s.tau},
            {"p", s.p},
            {"q", s.q},
            {"zeta0", s.zeta0},
            {"x0", s.x0},
            {"mirrored", s.mirrored}};
}

inline int cmd_verify_residuals(Config cfg, RunDir& dir) {
    const Params p = params_from(cfg);
    const double tol = cfg.get_double("wave", "tol", 1e-4);
    const MinimalSpeedResult ms = minimal_speed(p, tol);
    const WaveInterpolant interp(ms.profile, p);
    const PairKind kind =
        cfg.get_string("verify", "kind", "sub") == "super" ? PairKind::Super : PairKind::Sub;

    const SubSuperSpec spec = choose_parameters(p, interp, kind);
    const SubSuperPair pair(p, interp, spec);
    ResidualRegion base;
    const double slack = residual_slack(p, interp, base);
    const ResidualReport rep = find_activation_time(pair, slack);

    nlohmann::json j;
    j["c_star"] = ms.c_star;
    j["spec"] = spec_json(spec);
    j["slack"] = slack;
    j["T_star"] = rep.T_star;
    j["n1_min"] = rep.n1_min;
    j["n1_max"] = rep.n1_max;
    j["n2_min"] = rep.n2_min;
    j["n2_max"] = rep.n2_max;
    j["pass"] = rep.pass;
    std::ofstream(dir.file("data/residuals.json")) << j.dump(2) << "\n";

    if (cfg.get_bool("verify", "emit_csv", false)) {
        CsvWriter csv(dir.file("data/residuals.csv"));
        csv.header({"t", "x", "N1", "N2"});
        ResidualRegion rg = rep.region;
        for (int it = 0; it < rg.nt; it += 4) {
            const double t = rg.t_min + (rg.t_max - rg.t_min) * it / (rg.nt - 1);
            for (int ix = 0; ix < rg.nx; ix += 4) {
                const double w = rg.w_lo + (rg.w_hi - rg.w_lo) * ix / (rg.nx - 1);
                const double x = (spec.mirrored ? -1.0 : 1.0) * (pair.c() * t + w);
                csv.row({t, x, pair.n1(t, x), pair.n2(t, x)});
            }
        }
    }

    dir.verdict("residual_signs", rep.pass);
    dir.write_manifest(&p);
    std::cout << "verify residuals: " << (rep.pass ? "PASS" : "FAIL") << " (T = " << rep.T_star
              << ", N1 in [" << format_double(rep.n1_min) << ", " << format_double(rep.n1_max)
              << "], N2 in [" << format_double(rep.n2_min) << ", " << format_double(rep.n2_max)
              << "], slack " << format_double(slack) << ") run " << dir.id() << "\n";
    return rep.pass ? 0 : 1;
}

inline int cmd_verify_sandwich(Config cfg, RunDir& dir) {
    SimConfig sc = sim_config_from(cfg);
    sc.ic.kind = ICKind::ScenarioA; // trapping is formulated for invasion into v = 1
    const Params p = sc.params;
    const Trajectory traj = run(sc);

    const double tol = cfg.get_double("wave", "tol", 1e-4);
    const MinimalSpeedResult ms = minimal_speed(p, tol);
    const WaveInterpolant interp(ms.profile, p);
    const SubSuperPair sub(p, interp, choose_parameters(p, interp, PairKind::Sub));
    const SubSuperPair sup(p, interp, choose_parameters(p, interp, PairKind::Super));

    SandwichOptions opts;
    opts.t_min = cfg.get_double("verify", "t_min", 20.0);
    opts.shift_max = cfg.get_double("verify", "shift_max", 200.0);
    opts.slack = cfg.get_double("verify", "slack", 0.02);
    const SandwichReport rep = check_sandwich(traj, sub, sup, opts);

    nlohmann::json j;
    j["c_star"] = ms.c_star;
    j["found_sub"] = rep.found_sub;
    j["found_super"] = rep.found_super;
    j["T_sub"] = rep.T_sub;
    j["T_super"] = rep.T_super;
    j["worst_sub"] = rep.worst_sub;
    j["worst_super"] = rep.worst_super;
    j["pass"] = rep.pass;
    std::ofstream(dir.file("data/sandwich.json")) << j.dump(2) << "\n";

    dir.verdict("sandwich", rep.pass);
    dir.note("worst_violation_sub", rep.found_sub ? rep.worst_sub : rep.best_seen_sub);
    dir.note("worst_violation_super", rep.found_super ? rep.worst_super : rep.best_seen_super);
    dir.write_manifest(&p);
    std::cout << "verify sandwich: " << (rep.pass ? "PASS" : "FAIL") << " (T* = " << rep.T_sub
              << ", T** = " << rep.T_super << ") run " << dir.id() << "\n";
    return rep.pass ? 0 : 1;
}

inline int cmd_verify_cp(Config cfg, RunDir& dir) {
    SimConfig sc = sim_config_from(cfg);
    const double tol = cfg.get_double("verify", "tol", 1e-8);
    const std::string mode = cfg.get_string("verify", "mode", "lift");

    FieldState low, high;
    if (mode == "ab") {
        // Scenario-A data (v lifted to a floor) sits below the Scenario-B run in u
        SimConfig scb = sc;
        scb.ic.kind = ICKind::ScenarioB;
        high = make_initial_data(scb.ic, sc.grid);
        low = high;
        const double floor_v = cfg.get_double("verify", "v_floor", 0.5);
        for (double& v : low.v) v = std::max(v, floor_v);
    } else {
        const double lift = cfg.get_double("verify", "lift", 0.1);
        low = make_initial_data(sc.ic, sc.grid);
        high = low;
        for (double& u : high.u) u = std::min(u + lift, 1.0);
    }
    const OrderingReport rep = check_comparison_principle(sc, sc, low, high, tol);

    nlohmann::json j;
    j["mode"] = mode;
    j["max_u_violation"] = rep.max_u_violation;
    j["max_v_violation"] = rep.max_v_violation;
    j["tolerance"] = rep.tolerance;
    j["pass"] = rep.pass;
    std::ofstream(dir.file("data/cp.json")) << j.dump(2) << "\n";

    dir.verdict("comparison_principle", rep.pass);
    dir.write_manifest(&sc.params);
    std::cout << "verify cp: " << (rep.pass ? "PASS" : "FAIL") << " (max violations "
              << format_double(rep.max_u_violation) << ", "
              << format_double(rep.max_v_violation) << ") run " << dir.id() << "\n";
    return rep.pass ? 0 : 1;
}

// ------------------------------------------------------------------- sweep

inline int cmd_sweep(Config cfg) {
    RunDir dir(run_id_for("sweep", cfg), cfg);
    const std::string kind = cfg.get_string("sweep", "kind", "classify");
    auto axis = [&](const char* name, double fallback) {
        std::vector<double> v = cfg.get_list("sweep", name);
        if (v.empty()) v.push_back(cfg.get_double("params", std::string(1, name[0]), fallback));
        return v;
    };
    const std::vector<double> as = axis("a_values", 0.5), bs = axis("b_values", 1.5),
                              ds = axis("d_values", 1.0), rs = axis("r_values", 1.0);
    const long parallelism =
        std::max(1L, cfg.get_long("sweep", "parallelism",
                                  static_cast<long>(std::thread::hardware_concurrency())));

    struct Point {
        Params p;
        std::string status = "ok";
        double c_star = std::numeric_limits<double>::quiet_NaN();
        DeterminacyVerdict dv;
    };
    std::vector<Point> points;
    for (double a : as)
        for (double b : bs)
            for (double d : ds)
                for (double r : rs) points.push_back({Params{a, b, d, r}});

    const double tol = cfg.get_double("wave", "tol", 1e-3);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            Point& pt = points[i];
            if (!pt.p.strong_weak()) {
                pt.status = "skipped_H1";
                continue;
            }
            try {
                pt.dv = classify_determinacy(pt.p);
                if (kind == "wave") pt.c_star = minimal_speed(pt.p, tol).c_star;
            } catch (const std::exception& e) {
                pt.status = std::string("error: ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (long k = 0; k < std::min<long>(parallelism, points.size()); ++k)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    {
        CsvWriter csv(dir.file("data/sweep.csv"));
        if (kind == "wave")
            csv.header({"a", "b", "d", "r", "status", "verdict", "c_star", "c_lin", "gap"});
        else
            csv.header({"a", "b", "d", "r", "status", "llw", "huang", "ao", "verdict"});
        for (const Point& pt : points) {
            if (kind == "wave") {
                csv.raw_row({format_double(pt.p.a), format_double(pt.p.b),
                             format_double(pt.p.d), format_double(pt.p.r), pt.status,
                             pt.status == "ok" ? pt.dv.verdict_name() : "",
                             format_double(pt.c_star), format_double(pt.p.c_lin()),
                             format_double(pt.c_star - pt.p.c_lin())});
            } else {
                csv.raw_row({format_double(pt.p.a), format_double(pt.p.b),
                             format_double(pt.p.d), format_double(pt.p.r), pt.status,
                             pt.status == "ok" ? std::to_string(pt.dv.llw_holds) : "",
                             pt.status == "ok" ? std::to_string(pt.dv.huang_holds) : "",
                             pt.status == "ok" ? std::to_string(pt.dv.ao_nonlinear_holds) : "",
                             pt.status == "ok" ? pt.dv.verdict_name() : ""});
            }
        }
    }

    // regime map over the first two varying axes (defaults: a and b)
    if (kind == "wave") {
        std::vector<double> vals;
        for (double b : bs)
            for (double a : as) {
                double cell = std::numeric_limits<double>::quiet_NaN();
                for (const Point& pt : points)
                    if (pt.p.a == a && pt.p.b == b && pt.status == "ok" &&
                        std::isfinite(pt.c_star)) {
                        cell = pt.c_star - pt.p.c_lin();
                        break;
                    }
                vals.push_back(cell);
            }
        write_heatmap_svg(dir.file("plots/regime_map.svg"), "c* - 2 sqrt(1-a)", as, bs, vals,
                          "a", "b");
    }

    std::size_t failures = 0;
    for (const Point& pt : points)
        if (pt.status.rfind("error", 0) == 0) ++failures;
    dir.verdict("sweep_completed", true);
    dir.note("points", static_cast<double>(points.size()));
    dir.note("failures", static_cast<double>(failures));
    dir.write_manifest(nullptr);
    std::cout << "sweep: " << points.size() << " points, " << failures << " failure(s), run "
              << dir.id() << "\n";
    return 0;
}

// ------------------------------------------------------------------ report

inline int cmd_report(const std::string& run_id) {
    const nlohmann::json m = RunDir::load_manifest(run_id);
    std::ostringstream md;
    md << "# Run " << run_id << "\n\n";
    md << "- config hash: `" << m.value("config_hash", "") << "`\n";
    md << "- artifact version: " << m.value("artifact_version", "") << "\n";
    md << "- started: " << m.value("started", "") << ", finished: " << m.value("finished", "")
       << "\n";
    if (m.contains("params")) {
        const auto& p = m["params"];
        md << "- params: a=" << p.value("a", 0.0) << " b=" << p.value("b", 0.0)
           << " d=" << p.value("d", 0.0) << " r=" << p.value("r", 0.0) << "\n";
    }
    md << "\n## Verdicts\n\n";
    if (m.contains("verdicts"))
        for (const auto& [k, v] : m["verdicts"].items())
            md << "- " << (v.get<bool>() ? "PASS" : "FAIL") << ": " << k << "\n";
    if (m.contains("notes") && !m["notes"].empty()) {
        md << "\n## Notes\n\n";
        for (const auto& [k, v] : m["notes"].items())
            md << "- " << k << ": " << v.get<std::string>() << "\n";
    }
    md << "\n## Files\n\n";
    if (m.contains("files"))
        for (const auto& f : m["files"]) {
            const std::string name = f.get<std::string>();
            md << "- " << name << (name.rfind("plots/", 0) == 0 ? " (plot)" : "") << "\n";
        }
    const std::string text = md.str();
    std::ofstream(runs_root() / run_id / "report.md") << text;
    std::cout << text;
    return 0;
}

// ------------------------------------------------------------------ driver

inline void apply_flag_overrides(Config& cfg, const std::map<std::string, std::string>& kv) {
    for (const auto& [path, value] : kv) {
        const auto dot = path.find('.');
        cfg.set(path.substr(0, dot), path.substr(dot + 1), value);
    }
}

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"numerical laboratory for the two-species competition-diffusion system"};
    app.require_subcommand(1);

    std::string config_path, run_id;
    std::map<std::string, std::string> over;
    auto add_common = [&](CLI::App* sub, bool with_params = true) {
        sub->add_option("--config", config_path, "sectioned key=value config file");
        sub->add_option("--run-id", run_id, "override the derived run identifier");
        if (with_params) {
            sub->add_option_function<double>(
                "--a", [&](double v) { over["params.a"] = format_double(v); });
            sub->add_option_function<double>(
                "--b", [&](double v) { over["params.b"] = format_double(v); });
            sub->add_option_function<double>(
                "--d", [&](double v) { over["params.d"] = format_double(v); });
            sub->add_option_function<double>(
                "--r", [&](double v) { over["params.r"] = format_double(v); });
        }
    };

    CLI::App* classify = app.add_subcommand("classify", "determinacy sufficient conditions");
    add_common(classify);

    CLI::App* wave = app.add_subcommand("wave", "minimal traveling-wave speed and profile");
    add_common(wave);
    wave->add_option_function<double>("--tol",
                                      [&](double v) { over["wave.tol"] = format_double(v); });
    wave->add_option_function<double>("--L",
                                      [&](double v) { over["wave.L"] = format_double(v); });
    wave->add_option_function<long>("--n",
                                    [&](long v) { over["wave.n"] = std::to_string(v); });

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the Cauchy problem");
    add_common(simulate);
    simulate->add_option_function<double>(
        "--t-end", [&](double v) { over["time.t_end"] = format_double(v); });
    simulate->add_option_function<double>(
        "--dt", [&](double v) { over["time.dt"] = format_double(v); });
    simulate->add_option_function<std::string>("--ic",
                                               [&](std::string v) { over["ic.kind"] = v; });

    CLI::App* track = app.add_subcommand("track", "front traces, speed and drift fits");
    add_common(track);
    track->add_option_function<std::string>(
        "--species", [&](std::string v) { over["track.species"] = v; });
    track->add_option_function<double>(
        "--level", [&](double v) { over["track.level"] = format_double(v); });
    track->add_option_function<double>(
        "--t-end", [&](double v) { over["time.t_end"] = format_double(v); });
    track->add_flag_function("--drift",
                             [&](std::int64_t) { over["track.drift"] = "true"; });
    track->add_option_function<double>(
        "--c-fixed", [&](double v) { over["track.c_fixed"] = format_double(v); });

    CLI::App* verify = app.add_subcommand("verify", "sub/super-solution and ordering checks");
    verify->require_subcommand(1);
    CLI::App* vres = verify->add_subcommand("residuals", "differential inequality signs");
    add_common(vres);
    vres->add_option_function<std::string>("--kind",
                                           [&](std::string v) { over["verify.kind"] = v; });
    CLI::App* vsand = verify->add_subcommand("sandwich", "two-sided trapping shifts");
    add_common(vsand);
    vsand->add_option_function<double>(
        "--t-end", [&](double v) { over["time.t_end"] = format_double(v); });
    CLI::App* vcp = verify->add_subcommand("cp", "comparison principle on ordered runs");
    add_common(vcp);
    vcp->add_option_function<double>(
        "--lift", [&](double v) { over["verify.lift"] = format_double(v); });
    vcp->add_option_function<double>(
        "--t-end", [&](double v) { over["time.t_end"] = format_double(v); });
    vcp->add_option_function<double>(
        "--dt", [&](double v) { over["time.dt"] = format_double(v); });

    CLI::App* sweep = app.add_subcommand("sweep", "parameter grid experiments");
    add_common(sweep);
    sweep->add_option_function<std::string>("--kind",
                                            [&](std::string v) { over["sweep.kind"] = v; });

    std::string report_run;
    CLI::App* report = app.add_subcommand("report", "render a run summary");
    report->add_option("--run", report_run, "run identifier")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help() << "\n";
        return 2;
    }

    try {
        Config cfg = config_path.empty() ? Config() : Config::load(config_path);
        apply_flag_overrides(cfg, over);
        if (!run_id.empty()) cfg.set("run", "id", run_id);

        if (app.got_subcommand(classify)) return cmd_classify(cfg);
        if (app.got_subcommand(wave)) return cmd_wave(cfg);
        if (app.got_subcommand(simulate)) return cmd_simulate(cfg);
        if (app.got_subcommand(track)) return cmd_track(cfg);
        if (app.got_subcommand(verify)) {
            if (verify->got_subcommand(vres)) {
                RunDir dir(run_id_for("verify-residuals", cfg), cfg);
                return cmd_verify_residuals(cfg, dir);
            }
            if (verify->got_subcommand(vsand)) {
                RunDir dir(run_id_for("verify-sandwich", cfg), cfg);
                return cmd_verify_sandwich(cfg, dir);
            }
            RunDir dir(run_id_for("verify-cp", cfg), cfg);
            return cmd_verify_cp(cfg, dir);
        }
        if (app.got_subcommand(sweep)) return cmd_sweep(cfg);
        if (app.got_subcommand(report)) return cmd_report(report_run);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::filesystem::create_directories(runs_root());
        std::ofstream diag(runs_root() / "diagnostic.txt", std::ios::app);
        diag << e.what() << "\n";
        return 1;
    }
}

inline int run_cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

} // namespace cdlab::cli
