#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/fronts.hpp"
#include "cdlab/grid.hpp"
#include "cdlab/params.hpp"
#include "cdlab/tridiag.hpp"

namespace cdlab {

/// Grid snapshot of both densities at a time.
struct FieldState {
    double t = 0.0;
    std::vector<double> u, v;
};

/// The two canonical initial-data classes. Scenario A: u0 compactly supported
/// and nonzero, v0 with a positive lower bound (here constant v_floor,
/// default 1). Scenario B: both compactly supported, continuous, in [0,1].
enum class ICKind { ScenarioA, ScenarioB };

struct InitialDataSpec {
    ICKind kind = ICKind::ScenarioA;
    double u_left = -5.0, u_right = 5.0, u_amp = 1.0;
    double v_left = -5.0, v_right = 5.0, v_amp = 1.0; ///< Scenario B only
    double v_floor = 1.0;                             ///< Scenario A only
    int ramp_cells = 2; ///< indicator edges smoothed by a linear ramp this many cells wide
};

enum class BoundaryKind { Neumann };

struct SimConfig {
    Params params{0.5, 1.5, 1.0, 1.0};
    Grid1D grid{-50.0, 50.0, 1001};
    double dt = 0.05;
    double t_end = 100.0;
    double snapshot_dt = 1.0; ///< spacing of stored field snapshots
    double obs_dt = 0.5;      ///< spacing of recorded observables (sup norms, fronts)
    InitialDataSpec ic;
    BoundaryKind boundary = BoundaryKind::Neumann;
    std::vector<LevelSpec> tracked{{Species::U, 0.5, CrossDir::Rightmost},
                                   {Species::V, 0.5, CrossDir::Rightmost}};
};

/// RK4 stability limit for the reaction substeps; Crank-Nicolson diffusion
/// is unconditional, so this is the only dt restriction.
inline double stability_dt_bound(const Params& p) {
    const double ju = 1.0 + 2.0 * 1.2 + 1.2 * p.a;
    const double jv = p.r * (1.0 + 2.0 * 1.2 + 1.2 * p.b);
    return 2.5 / std::max(ju, jv);
}

inline void validate(const SimConfig& cfg) {
    cfg.params.require_positive();
    if (!(cfg.dt > 0.0)) throw DomainError("SimConfig: dt must be positive");
    if (cfg.dt > stability_dt_bound(cfg.params))
        throw DomainError("SimConfig: dt exceeds the reaction stability bound " +
                          std::to_string(stability_dt_bound(cfg.params)));
    if (cfg.t_end < 0.0) throw DomainError("SimConfig: t_end must be >= 0");
    if (cfg.grid.n < 3) throw DomainError("SimConfig: grid too small");
}

/// Default resolution h = 0.1, dt = 0.05, tightened when d > 2 or r > 2.
inline double default_dt(const Params& p) {
    double dt = 0.05;
    const double m = std::max(p.d, p.r);
    if (m > 2.0) dt = 0.025;
    if (m > 8.0) dt = 0.0125;
    return std::min(dt, 0.9 * stability_dt_bound(p));
}

/// Domain large enough that no front reaches the boundary by t_end:
/// pad = (max(c_u, c_v) + 1) t_end + 50 on both sides of the support.
inline Grid1D suggest_grid(const Params& p, double support_min, double support_max,
                           double t_end, double h = 0.1) {
    const double pad = (std::max(p.c_u(), p.c_v()) + 1.0) * t_end + 50.0;
    return Grid1D::with_spacing(support_min - pad, support_max + pad, h);
}

/// Build the initial state, enforcing the support margin (>= 20% of the
/// domain length from each edge) and the nonzero requirement.
inline FieldState make_initial_data(const InitialDataSpec& spec, const Grid1D& grid) {
    const double margin = 0.2 * grid.length();
    auto check_support = [&](double l, double r, const char* who) {
        if (!(r > l)) throw DomainError(std::string(who) + ": support must have positive width");
        if (l < grid.x_min + margin || r > grid.x_max - margin)
            throw SupportOutOfDomain(std::string(who) +
                                     ": support must keep a 20% margin inside the domain");
    };
    auto ramp_indicator = [&](double x, double l, double r, double amp) {
        const double w = std::max(1, spec.ramp_cells) * grid.h();
        const double rise = std::clamp((x - l) / w, 0.0, 1.0);
        const double fall = std::clamp((r - x) / w, 0.0, 1.0);
        return amp * std::min(rise, fall);
    };

    if (!(spec.u_amp > 0.0 && spec.u_amp <= 1.0))
        throw DomainError("make_initial_data: u0 must be nonzero with values in (0,1]");
    check_support(spec.u_left, spec.u_right, "make_initial_data: u0");

    FieldState s;
    s.t = 0.0;
    s.u.resize(grid.n);
    s.v.resize(grid.n);
    if (spec.kind == ICKind::ScenarioA) {
        if (!(spec.v_floor > 0.0 && spec.v_floor <= 1.0))
            throw DomainError("make_initial_data: Scenario A needs v_floor in (0,1]");
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.x(i);
            s.u[i] = ramp_indicator(x, spec.u_left, spec.u_right, spec.u_amp);
            s.v[i] = spec.v_floor;
        }
    } else {
        if (!(spec.v_amp > 0.0 && spec.v_amp <= 1.0))
            throw DomainError("make_initial_data: v0 must be nonzero with values in (0,1]");
        check_support(spec.v_left, spec.v_right, "make_initial_data: v0");
        for (int i = 0; i < grid.n; ++i) {
            const double x = grid.x(i);
            s.u[i] = ramp_indicator(x, spec.u_left, spec.u_right, spec.u_amp);
            s.v[i] = ramp_indicator(x, spec.v_left, spec.v_right, spec.v_amp);
        }
    }
    return s;
}

/// One time step of the coupled system: Strang splitting with an RK4 half
/// step of the pointwise reaction ODEs, a full Crank-Nicolson diffusion step
/// per species (prefactorized tridiagonal solves, homogeneous Neumann), and
/// another reaction half step. Preserves the spatially constant equilibria
/// (0,0), (1,0), (0,1) to round-off.
class Simulator {
public:
    explicit Simulator(const SimConfig& cfg) : cfg_(cfg) {
        validate(cfg_);
        state_ = make_initial_data(cfg_.ic, cfg_.grid);
        factor(lu_u_, 1.0);
        factor(lu_v_, cfg_.params.d);
        rhs_.resize(cfg_.grid.n);
    }

    /// Start from a caller-built state instead of the configured scenario
    /// (used for wave-initialized runs and transient-bound experiments).
    Simulator(const SimConfig& cfg, FieldState initial) : cfg_(cfg) {
        validate(cfg_);
        if (static_cast<int>(initial.u.size()) != cfg_.grid.n ||
            static_cast<int>(initial.v.size()) != cfg_.grid.n)
            throw DomainError("Simulator: initial state size does not match the grid");
        state_ = std::move(initial);
        factor(lu_u_, 1.0);
        factor(lu_v_, cfg_.params.d);
        rhs_.resize(cfg_.grid.n);
    }

    const FieldState& state() const { return state_; }
    const SimConfig& config() const { return cfg_; }

    void step() {
        react_half();
        diffuse(state_.u, lu_u_, 1.0);
        diffuse(state_.v, lu_v_, cfg_.params.d);
        react_half();
        ++steps_;
        state_.t = steps_ * cfg_.dt;
        guard();
    }

    long steps() const { return steps_; }

private:
    void factor(TridiagLU& lu, double D) {
        const int n = cfg_.grid.n;
        const double k = 0.5 * D * cfg_.dt / (cfg_.grid.h() * cfg_.grid.h());
        std::vector<double> lower(n - 1, -k), diag(n, 1.0 + 2.0 * k), upper(n - 1, -k);
        // Neumann: mirrored ghost nodes fold into doubled off-diagonals
        upper[0] = -2.0 * k;
        lower[n - 2] = -2.0 * k;
        lu.factor(lower, diag, upper);
    }

    void diffuse(std::vector<double>& f, const TridiagLU& lu, double D) {
        const int n = cfg_.grid.n;
        const double k = 0.5 * D * cfg_.dt / (cfg_.grid.h() * cfg_.grid.h());
        rhs_[0] = f[0] + 2.0 * k * (f[1] - f[0]);
        for (int i = 1; i < n - 1; ++i)
            rhs_[i] = f[i] + k * (f[i - 1] - 2.0 * f[i] + f[i + 1]);
        rhs_[n - 1] = f[n - 1] + 2.0 * k * (f[n - 2] - f[n - 1]);
        lu.solve(rhs_);
        f.swap(rhs_);
    }

    void react_half() {
        const Params& p = cfg_.params;
        const double tau = 0.5 * cfg_.dt;
        const int n = cfg_.grid.n;
        for (int i = 0; i < n; ++i) {
            double u = state_.u[i], v = state_.v[i];
            const auto [f1, g1] = reaction_terms(u, v, p);
            const auto [f2, g2] = reaction_terms(u + 0.5 * tau * f1, v + 0.5 * tau * g1, p);
            const auto [f3, g3] = reaction_terms(u + 0.5 * tau * f2, v + 0.5 * tau * g2, p);
            const auto [f4, g4] = reaction_terms(u + tau * f3, v + tau * g3, p);
            state_.u[i] = u + tau / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
            state_.v[i] = v + tau / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        }
    }

    void guard() const {
        for (int i = 0; i < cfg_.grid.n; ++i) {
            const double u = state_.u[i], v = state_.v[i];
            if (!std::isfinite(u) || !std::isfinite(v) || std::abs(u) > 10.0 ||
                std::abs(v) > 10.0)
                throw Blowup("Simulator: sample exceeded the blow-up guard at t = " +
                             std::to_string(state_.t));
        }
    }

    SimConfig cfg_;
    FieldState state_;
    TridiagLU lu_u_, lu_v_;
    std::vector<double> rhs_;
    long steps_ = 0;
};

/// Per-run observable record, sampled every obs_dt.
struct Observables {
    std::vector<double> t;
    std::vector<double> sup_u, sup_v, min_u, min_v;
    std::vector<FrontTrace> traces; ///< parallel to SimConfig::tracked
};

struct Trajectory {
    SimConfig cfg;
    std::vector<FieldState> snapshots;
    Observables obs;
    std::vector<std::string> warnings;

    const FieldState& final_state() const { return snapshots.back(); }
};

/// Deterministic full run: stores sparse field snapshots, dense lightweight
/// observables, and a FrontNearBoundary warning (not an error) when a
/// tracked front comes within 10% of the domain edge.
inline Trajectory run(const SimConfig& cfg, std::optional<FieldState> initial = std::nullopt) {
    Trajectory traj;
    traj.cfg = cfg;
    Simulator sim = initial ? Simulator(cfg, std::move(*initial)) : Simulator(cfg);

    const long total = std::lround(cfg.t_end / cfg.dt);
    const long snap_every = std::max<long>(1, std::lround(cfg.snapshot_dt / cfg.dt));
    const long obs_every = std::max<long>(1, std::lround(cfg.obs_dt / cfg.dt));
    const std::vector<double> xs = cfg.grid.points();
    const double guard_lo = cfg.grid.x_min + 0.1 * cfg.grid.length();
    const double guard_hi = cfg.grid.x_max - 0.1 * cfg.grid.length();

    traj.obs.traces.resize(cfg.tracked.size());
    std::vector<bool> warned(cfg.tracked.size(), false);
    for (std::size_t k = 0; k < cfg.tracked.size(); ++k) {
        traj.obs.traces[k].species = cfg.tracked[k].species;
        traj.obs.traces[k].level = cfg.tracked[k].level;
        traj.obs.traces[k].direction = cfg.tracked[k].direction;
    }

    auto record_obs = [&]() {
        const FieldState& s = sim.state();
        traj.obs.t.push_back(s.t);
        auto [umin, umax] = std::minmax_element(s.u.begin(), s.u.end());
        auto [vmin, vmax] = std::minmax_element(s.v.begin(), s.v.end());
        traj.obs.sup_u.push_back(*umax);
        traj.obs.sup_v.push_back(*vmax);
        traj.obs.min_u.push_back(*umin);
        traj.obs.min_v.push_back(*vmin);
        for (std::size_t k = 0; k < cfg.tracked.size(); ++k) {
            const LevelSpec& ls = cfg.tracked[k];
            const auto& field = (ls.species == Species::U) ? s.u : s.v;
            const auto pos = crossing_position(xs, field, ls.level, ls.direction);
            traj.obs.traces[k].times.push_back(s.t);
            traj.obs.traces[k].positions.push_back(pos ? *pos : FrontTrace::absent);
            if (pos && !warned[k] && (*pos < guard_lo || *pos > guard_hi)) {
                warned[k] = true;
                traj.warnings.push_back("FrontNearBoundary: " +
                                        std::string(species_name(ls.species)) + " level " +
                                        std::to_string(ls.level) + " at t = " +
                                        std::to_string(s.t));
            }
        }
    };

    record_obs();
    traj.snapshots.push_back(sim.state());
    for (long k = 1; k <= total; ++k) {
        sim.step();
        if (k % obs_every == 0 || k == total) record_obs();
        if (k % snap_every == 0 || k == total) traj.snapshots.push_back(sim.state());
    }
    return traj;
}

/// Comoving-frame profile over xi = x - c t (optionally re-anchored so the
/// rightmost u = theta crossing sits at xi = 0).
enum class ComovingAnchor { Origin, FrontU };

struct ComovingProfile {
    std::vector<double> xi, u, v;
};

inline double interp_linear(std::span<const double> xs, std::span<const double> f, double x) {
    const std::size_t n = xs.size();
    if (x < xs.front() || x > xs.back()) return std::numeric_limits<double>::quiet_NaN();
    const double h = xs[1] - xs[0];
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>((x - xs.front()) / h), n - 2);
    const double s = (x - xs[i]) / h;
    if (s <= 1e-9) return f[i]; // exact on nodes (identity reframings stay exact)
    if (s >= 1.0 - 1e-9) return f[i + 1];
    return (1.0 - s) * f[i] + s * f[i + 1];
}

inline ComovingProfile comoving_extract(const FieldState& s, const Grid1D& grid, double c,
                                        ComovingAnchor anchor = ComovingAnchor::Origin,
                                        double theta = 0.5) {
    const std::vector<double> xs = grid.points();
    double shift = c * s.t;
    if (anchor == ComovingAnchor::FrontU) {
        const auto pos = crossing_position(xs, s.u, theta, CrossDir::Rightmost);
        if (!pos) throw NoFront("comoving_extract: u never crosses the anchor level");
        shift = *pos;
    }
    ComovingProfile out;
    out.xi.resize(grid.n);
    out.u.resize(grid.n);
    out.v.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) {
        out.xi[i] = xs[i] - shift;
        const double x = out.xi[i] + shift; // = xs[i]; sampled exactly on nodes
        out.u[i] = interp_linear(xs, s.u, x);
        out.v[i] = interp_linear(xs, s.v, x);
    }
    return out;
}

/// Sample (u,v) at prescribed comoving coordinates xi (linear interpolation,
/// NaN outside the domain).
inline ComovingProfile comoving_sample(const FieldState& s, const Grid1D& grid, double c,
                                       const std::vector<double>& xi) {
    const std::vector<double> xs = grid.points();
    ComovingProfile out;
    out.xi = xi;
    out.u.resize(xi.size());
    out.v.resize(xi.size());
    for (std::size_t i = 0; i < xi.size(); ++i) {
        const double x = xi[i] + c * s.t;
        out.u[i] = interp_linear(xs, s.u, x);
        out.v[i] = interp_linear(xs, s.v, x);
    }
    return out;
}

} // namespace cdlab
