#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/params.hpp"
#include "cdlab/spectral.hpp"
#include "cdlab/wave_fit.hpp"

namespace cdlab {

enum class PairKind { Sub, Super };

/// Parameter bundle of one sub/super-solution construction:
///   sub:   u = U(xi) - P(t) min{e^{-alpha (x - c t + x0)}, 1},  v = V(xi) + Q(t)
///   super: u = U(xi) + P(t) min{e^{-alpha (x - c t + x0)}, 1},  v = V(xi) - Q(t)
/// with xi = x - c t + zeta(t) (sub) or x - c t - zeta(t) (super),
/// P = p e^{-mu t}, Q = q e^{-mu t}, zeta = zeta0 - e^{-tau t}.
/// `mirrored` replaces x by -x throughout (the x <= 0 variants).
struct SubSuperSpec {
    PairKind kind = PairKind::Sub;
    double alpha = 0.0;
    double mu = 0.0;
    double tau = 0.0;
    double p = 0.0;
    double q = 0.0;
    double zeta0 = 0.0;
    double x0 = 0.0;
    bool mirrored = false;
    bool zeta_frozen = false; ///< hold zeta == zeta0 (exact-wave baseline)
};

/// Admissibility conditions on the bundle; amplitude-free baselines (p = q = 0)
/// only need the tail-exponent window.
inline void validate_spec(const SubSuperSpec& s, const Params& p, double c_star) {
    const SpectralExponents se = spectral_exponents(c_star, p);
    if (!(s.alpha > -se.lambda_u_plus && s.alpha < -se.lambda_u_minus))
        throw SpecInvalid("SubSuperSpec: alpha outside (-lambda_u^+, -lambda_u^-)");
    if (s.p < 0.0 || s.q < 0.0) throw SpecInvalid("SubSuperSpec: amplitudes must be >= 0");
    if (s.p > 0.0 || s.q > 0.0) {
        const double mu_cap = std::min({1.0 - p.a, p.r * (p.b - 1.0), 0.5 * p.r});
        if (!(s.tau < s.mu && s.mu < mu_cap))
            throw SpecInvalid("SubSuperSpec: need tau < mu < min{1-a, r(b-1), r/2}");
        if (!(s.x0 - s.zeta0 > 0.0))
            throw SpecInvalid("SubSuperSpec: need x0 - zeta0 > 0");
    }
}

enum class Branch { Auto, Exp, One };

/// Closed-form evaluable field pair built on a wave interpolant. Residuals
/// N1 = u_t - u_xx - F and N2 = v_t - d v_xx - G use the analytic time
/// derivative (wave derivatives from the profile, tails extended) and a
/// 5-point fourth-order difference in x; with a forced branch the formulas
/// are smooth, so the kink of min{W,1} never enters a stencil.
class SubSuperPair {
public:
    SubSuperPair(const Params& p, const WaveInterpolant& wave, const SubSuperSpec& spec)
        : p_(p), w_(wave), s_(spec), fd_h_(wave.grid_h()) {
        validate_spec(s_, p_, w_.c());
    }

    const SubSuperSpec& spec() const { return s_; }
    double c() const { return w_.c(); }
    double fd_step() const { return fd_h_; }
    void set_fd_step(double h) { fd_h_ = h; }

    double P(double t) const { return s_.p * std::exp(-s_.mu * t); }
    double Q(double t) const { return s_.q * std::exp(-s_.mu * t); }
    double zeta(double t) const { return s_.zeta_frozen ? s_.zeta0 : s_.zeta0 - std::exp(-s_.tau * t); }
    double dzeta(double t) const { return s_.zeta_frozen ? 0.0 : s_.tau * std::exp(-s_.tau * t); }

    /// Kink curve of min{W,1} in the x coordinate: W(t, Gamma) = 1.
    double gamma_x(double t) const {
        const double y = c() * t - s_.x0;
        return s_.mirrored ? -y : y;
    }

    /// The exponential branch applies on the side W <= 1.
    Branch side_branch(double t, double x) const {
        const double y = s_.mirrored ? -x : x;
        return (y >= c() * t - s_.x0) ? Branch::Exp : Branch::One;
    }

    double u(double t, double x, Branch br = Branch::Auto) const {
        double U, dU, V, dV;
        fields(t, x, br, U, dU, V, dV);
        return U;
    }
    double v(double t, double x, Branch br = Branch::Auto) const {
        double U, dU, V, dV;
        fields(t, x, br, U, dU, V, dV);
        return V;
    }

    double n1(double t, double x, Branch br = Branch::Auto) const {
        if (br == Branch::Auto) br = side_branch(t, x);
        const double uxx = fd2([&](double xx) { return u(t, xx, br); }, x);
        return u_t(t, x, br) - uxx - reaction_f(u(t, x, br), v(t, x, br), p_);
    }

    double n2(double t, double x, Branch br = Branch::Auto) const {
        if (br == Branch::Auto) br = side_branch(t, x);
        const double vxx = fd2([&](double xx) { return v(t, xx, br); }, x);
        return v_t(t, x, br) - p_.d * vxx - reaction_g(u(t, x, br), v(t, x, br), p_);
    }

private:
    void fields(double t, double x, Branch br, double& U, double& dU, double& V,
                double& dV) const {
        const double y = s_.mirrored ? -x : x;
        const double sgn = (s_.kind == PairKind::Sub) ? 1.0 : -1.0;
        const double xi = y - c() * t + sgn * zeta(t);
        w_.eval(xi, U, dU, V, dV);
        const double m = branch_value(t, y, br);
        if (s_.kind == PairKind::Sub) {
            U -= P(t) * m;
            V += Q(t);
        } else {
            U += P(t) * m;
            V -= Q(t);
        }
    }

    double branch_value(double t, double y, Branch br) const {
        const double W = std::exp(-s_.alpha * (y - c() * t + s_.x0));
        if (br == Branch::Exp) return W;
        if (br == Branch::One) return 1.0;
        return std::min(W, 1.0);
    }

    /// Analytic time derivative of the u component (branch forced).
    double u_t(double t, double x, Branch br) const {
        const double y = s_.mirrored ? -x : x;
        const double sgn = (s_.kind == PairKind::Sub) ? 1.0 : -1.0;
        const double xi = y - c() * t + sgn * zeta(t);
        double U, dU, V, dV;
        w_.eval(xi, U, dU, V, dV);
        const double xi_t = -c() + sgn * dzeta(t);
        const double m = branch_value(t, y, br);
        const double m_t = (br == Branch::Exp || (br == Branch::Auto && m < 1.0))
                               ? s_.alpha * c() * m
                               : 0.0;
        const double amp_t = -s_.mu * P(t) * m + P(t) * m_t;
        return dU * xi_t + (s_.kind == PairKind::Sub ? -amp_t : amp_t);
    }

    double v_t(double t, double x, Branch br) const {
        (void)br;
        const double y = s_.mirrored ? -x : x;
        const double sgn = (s_.kind == PairKind::Sub) ? 1.0 : -1.0;
        const double xi = y - c() * t + sgn * zeta(t);
        double U, dU, V, dV;
        w_.eval(xi, U, dU, V, dV);
        const double xi_t = -c() + sgn * dzeta(t);
        const double q_t = -s_.mu * Q(t);
        return dV * xi_t + (s_.kind == PairKind::Sub ? q_t : -q_t);
    }

    template <class F>
    double fd2(F&& f, double x) const {
        const double e = fd_h_;
        return (-f(x - 2 * e) + 16.0 * f(x - e) - 30.0 * f(x) + 16.0 * f(x + e) -
                f(x + 2 * e)) /
               (12.0 * e * e);
    }

    Params p_;
    WaveInterpolant w_;
    SubSuperSpec s_;
    double fd_h_;
};

inline SubSuperPair build_sub_pair(const Params& p, const WaveInterpolant& w,
                                   const SubSuperSpec& s) {
    if (s.kind != PairKind::Sub) throw SpecInvalid("build_sub_pair: spec.kind must be Sub");
    return SubSuperPair(p, w, s);
}

inline SubSuperPair build_super_pair(const Params& p, const WaveInterpolant& w,
                                     const SubSuperSpec& s) {
    if (s.kind != PairKind::Super) throw SpecInvalid("build_super_pair: spec.kind must be Super");
    return SubSuperPair(p, w, s);
}

/// Exact-wave baseline (amplitudes zero, zeta frozen): the pair is the wave
/// itself and the measured residual is pure discretization credit.
inline SubSuperSpec exact_wave_spec(PairKind kind, double c_star, double zeta0 = 2.0,
                                    double x0 = 12.0, bool mirrored = false) {
    SubSuperSpec s;
    s.kind = kind;
    s.alpha = 0.5 * c_star; // midpoint of (-lambda_u^+, -lambda_u^-)
    s.mu = 0.0;
    s.tau = 0.0;
    s.p = 0.0;
    s.q = 0.0;
    s.zeta0 = zeta0;
    s.x0 = x0;
    s.mirrored = mirrored;
    s.zeta_frozen = true;
    return s;
}

/// Constructive parameter choice meeting the admissibility conditions with factor-2
/// margins: alpha at the midpoint of the admissible window (= c*/2), mu at
/// half its cap (also kept below the boundary-compatibility cap
/// min{1, c* mu_u^+, c* mu_v^+}), tau = mu/2, and the smallest
/// x0 - zeta0 = M in {10, 20, 40, 80} whose amplitude inequalities admit the
/// margin. Requires the pushed-front predicate c* > 2 sqrt(1-a).
inline SubSuperSpec choose_parameters(const Params& p, const WaveInterpolant& w, PairKind kind,
                                      double mu_factor = 0.5, bool mirrored = false) {
    p.require_strong_weak();
    const double c = w.c();
    if (!(c > p.c_lin() + 1e-6))
        throw Infeasible("choose_parameters: pushed-front predicate c* > 2 sqrt(1-a) fails");
    const SpectralExponents se = spectral_exponents(c, p);

    SubSuperSpec s;
    s.kind = kind;
    s.mirrored = mirrored;
    s.alpha = 0.5 * (-se.lambda_u_plus - se.lambda_u_minus);
    const double mu_cap = std::min({1.0 - p.a, p.r * (p.b - 1.0), 0.5 * p.r});
    const double bc_cap = std::min({1.0, c * se.mu_u_plus, c * se.mu_v_plus});
    s.mu = std::min(mu_factor * mu_cap, 0.45 * bc_cap);
    s.tau = 0.5 * s.mu;
    s.zeta0 = 2.0;

    for (double M : {10.0, 20.0, 40.0, 80.0}) {
        s.x0 = s.zeta0 + M;
        const double tail = std::exp(-2.0 * s.alpha * M);
        if (kind == PairKind::Sub) {
            s.q = 0.5 * s.mu;
            s.p = 2.0 * s.q; // p > q and p > a q with margin 2
            const double lhs = 0.5 * (1.0 - 2.0 * s.mu / p.r) * s.q;
            if (lhs >= 2.0 * p.b * s.p * tail) {
                validate_spec(s, p, c);
                return s;
            }
        } else {
            s.p = 0.5 * s.mu;
            const double c2 = c * s.alpha - s.alpha * s.alpha - s.mu; // > 0 for interior alpha
            const double q_hi = std::min(s.p, c2 * s.p / (2.0 * p.a));
            const double q_lo = 8.0 * p.b * s.p * tail;
            if (q_lo <= q_hi) {
                s.q = q_hi;
                validate_spec(s, p, c);
                return s;
            }
        }
    }
    throw Infeasible(kind == PairKind::Sub
                         ? "choose_parameters: (1/2)(1-2mu/r) q > 2 b p e^{-2 alpha M} "
                           "unsatisfiable up to M = 80"
                         : "choose_parameters: q window between 8 b p e^{-2 alpha M} and "
                           "min{p, C2 p / 2a} empty up to M = 80");
}

/// Comoving rectangle t in [t_min, t_max], x - c t in [w_lo, w_hi]
/// (x is mirrored automatically for mirrored pairs).
struct ResidualRegion {
    double t_min = 10.0, t_max = 110.0;
    double w_lo = -40.0, w_hi = 40.0;
    int nt = 81, nx = 321;
};

struct ResidualReport {
    double n1_min = 0.0, n1_max = 0.0;
    double n2_min = 0.0, n2_max = 0.0;
    double worst_t = 0.0, worst_x = 0.0; ///< location of the binding extremum
    ResidualRegion region;
    double slack = 0.0;
    double T_star = 0.0; ///< region start when signs hold (set by the activation search)
    bool pass = false;
};

/// Evaluate the differential inequalities over the region. Points are
/// checked with the branch of their own side of the kink curve, so every
/// stencil is smooth and the kink itself is covered one-sidedly from both
/// sides (the min/max of sub/super-solutions remains one).
inline ResidualReport check_residuals(const SubSuperPair& pair, const ResidualRegion& region,
                                      double slack) {
    ResidualReport rep;
    rep.region = region;
    rep.slack = slack;
    rep.n1_min = rep.n2_min = 1e300;
    rep.n1_max = rep.n2_max = -1e300;
    const bool sub = pair.spec().kind == PairKind::Sub;
    const double sgn = pair.spec().mirrored ? -1.0 : 1.0;

    for (int it = 0; it < region.nt; ++it) {
        const double t = region.t_min + (region.t_max - region.t_min) * it / (region.nt - 1);
        for (int ix = 0; ix < region.nx; ++ix) {
            const double w = region.w_lo + (region.w_hi - region.w_lo) * ix / (region.nx - 1);
            const double x = sgn * (pair.c() * t + w);
            const Branch br = pair.side_branch(t, x);
            const double r1 = pair.n1(t, x, br);
            const double r2 = pair.n2(t, x, br);
            const bool binding = sub ? (r1 > rep.n1_max || r2 < rep.n2_min)
                                     : (r1 < rep.n1_min || r2 > rep.n2_max);
            if (binding) {
                rep.worst_t = t;
                rep.worst_x = x;
            }
            rep.n1_min = std::min(rep.n1_min, r1);
            rep.n1_max = std::max(rep.n1_max, r1);
            rep.n2_min = std::min(rep.n2_min, r2);
            rep.n2_max = std::max(rep.n2_max, r2);
        }
    }
    rep.T_star = region.t_min;
    rep.pass = sub ? (rep.n1_max <= slack && rep.n2_min >= -slack)
                   : (rep.n1_min >= -slack && rep.n2_max <= slack);
    return rep;
}

/// Discretization credit from the exact-wave baseline over the same region:
/// 10x the worst baseline residual magnitude.
inline double residual_slack(const Params& p, const WaveInterpolant& w,
                             const ResidualRegion& region) {
    SubSuperSpec base = exact_wave_spec(PairKind::Sub, w.c());
    SubSuperPair pair(p, w, base);
    const ResidualReport rep = check_residuals(pair, region, 1e300);
    const double worst = std::max({std::abs(rep.n1_min), std::abs(rep.n1_max),
                                   std::abs(rep.n2_min), std::abs(rep.n2_max)});
    return 10.0 * worst + 1e-12;
}

/// Doubling search for the activation time T: first T in 10, 20, 40, ...
/// such that the signs hold on [T, T+100] x [c t - 40, c t + 40].
inline ResidualReport find_activation_time(const SubSuperPair& pair, double slack,
                                           double T_cap = 640.0) {
    ResidualReport last;
    for (double T = 10.0; T <= T_cap; T *= 2.0) {
        ResidualRegion region;
        region.t_min = T;
        region.t_max = T + 100.0;
        last = check_residuals(pair, region, slack);
        last.T_star = T;
        if (last.pass) return last;
    }
    last.pass = false;
    return last;
}

} // namespace cdlab
