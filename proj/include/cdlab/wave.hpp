#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/params.hpp"
#include "cdlab/spectral.hpp"
#include "cdlab/tridiag.hpp"

namespace cdlab {

/// Discretized monotone traveling wave (U decreasing, V increasing) at speed c,
/// connecting (1,0) at -L to (0,1) at +L, normalized by U(0) = 1/2.
/// dU, dV are grid derivatives (4th-order differences of the converged solution).
struct WaveProfile {
    double c = 0.0;
    std::vector<double> xi, U, V, dU, dV;
    bool converged = false;

    int n() const { return static_cast<int>(xi.size()); }
    double h() const { return xi.size() > 1 ? xi[1] - xi[0] : 0.0; }
    double L() const { return xi.empty() ? 0.0 : xi.back(); }
};

enum class WaveStatus { Converged, NoMonotoneConnection };

struct WaveSolveResult {
    WaveStatus status = WaveStatus::NoMonotoneConnection;
    WaveProfile profile;
    int iterations = 0;
    double residual = std::numeric_limits<double>::infinity();
    std::string reason;

    bool converged() const { return status == WaveStatus::Converged; }
};

struct WaveOptions {
    double L = 60.0; ///< half-domain length
    int n = 6001;    ///< grid points (forced odd so xi = 0 is a node)
    int max_iterations = 50;
    int max_stagnation = 8;
    double bounds_lo = -0.05, bounds_hi = 1.05; ///< admissible band for a connection
    double monotone_slack = 1e-6;
    double containment = 0.1; ///< max distance of boundary values from (1,0)/(0,1)
    bool polish = false; ///< remove the phase-row defect and re-center (used at the steep dip)

    static WaveOptions with_domain(double L, double h) {
        WaveOptions o;
        o.L = L;
        o.n = static_cast<int>(std::lround(2.0 * L / h)) + 1;
        return o;
    }
};

namespace detail {

/// Robin rates used at the truncated boundaries. The right U condition uses
/// the slow rate lambda_u^+: the fast mode carries e^{lambda_u^- L} < eps for
/// every admissible c, so the condition constrains nothing it should not,
/// while a lambda_u^- condition would annihilate the generic tail and reject
/// all supercritical waves. Left conditions use the dominant decaying modes
/// of 1-U and V.
struct RobinRates {
    double right_u, right_v, left_u, left_v;
};

inline RobinRates robin_rates(double c, const Params& p) {
    const SpectralExponents se = spectral_exponents(c, p);
    RobinRates rr;
    rr.right_u = se.lambda_u_plus; // = -c/2 at the degenerate speed
    rr.right_v = std::max(se.lambda_v_minus, se.lambda_u_minus);
    rr.left_u = std::min(se.mu_u_plus, se.mu_v_plus);
    rr.left_v = se.mu_v_plus;
    return rr;
}

} // namespace detail

/// Solve the traveling-wave boundary-value problem
///   U'' + c U' + U(1-U-aV) = 0,  d V'' + c V' + r V(1-V-bU) = 0
/// on [-L, L] with Robin conditions from the linearization and the phase
/// normalization U(0) = 1/2 (which replaces the interior U-equation at xi=0,
/// keeping the Jacobian block-tridiagonal and nonsingular).
///
/// Returns NoMonotoneConnection when damped Newton stagnates, the iterate
/// leaves the admissible band, or the converged solution is not monotone:
/// that is the computable existence test driving the c*-bisection.
inline WaveSolveResult solve_wave_profile(double c, const Params& p,
                                          const WaveOptions& opts = {},
                                          const WaveProfile* warm_start = nullptr) {
    p.require_strong_weak();
    if (c < p.c_lin() - 1e-12)
        throw DiscriminantNegative("solve_wave_profile: c < 2 sqrt(1-a)");

    const int n = (opts.n % 2 == 0) ? opts.n + 1 : opts.n;
    const int mid = (n - 1) / 2;
    const double L = opts.L;
    const double h = 2.0 * L / double(n - 1);
    const detail::RobinRates rr = detail::robin_rates(c, p);

    WaveSolveResult out;
    out.profile.c = c;
    out.profile.xi.resize(n);
    for (int i = 0; i < n; ++i) out.profile.xi[i] = -L + i * h;

    // State vector interleaved as (U_0, V_0, U_1, V_1, ...).
    std::vector<double> z(2 * n);
    if (warm_start && warm_start->n() == n && std::abs(warm_start->L() - L) < 1e-9 &&
        warm_start->converged) {
        for (int i = 0; i < n; ++i) {
            z[2 * i] = warm_start->U[i];
            z[2 * i + 1] = warm_start->V[i];
        }
    } else {
        const double ku = 0.4;
        const double kv = 0.4 / std::sqrt(std::max(p.d, 0.25));
        for (int i = 0; i < n; ++i) {
            const double xi = out.profile.xi[i];
            z[2 * i] = 0.5 * (1.0 - std::tanh(ku * xi));
            z[2 * i + 1] = 0.5 * (1.0 + std::tanh(kv * xi));
        }
    }

    const double row_scale = 2.0 * (1.0 + p.d) / (h * h) + c / h + 10.0;
    const double tol_res = 1e-12 * row_scale;

    auto residual = [&](const std::vector<double>& s, std::vector<double>& R) {
        const double ih = 1.0 / h, ih2 = 1.0 / (h * h), c2h = c / (2.0 * h);
        // left boundary rows (Robin centered at xi_{1/2})
        R[0] = (s[2] - s[0]) * ih - rr.left_u * (0.5 * (s[0] + s[2]) - 1.0);
        R[1] = (s[3] - s[1]) * ih - rr.left_v * 0.5 * (s[1] + s[3]);
        for (int i = 1; i < n - 1; ++i) {
            const double Um = s[2 * (i - 1)], U0 = s[2 * i], Up = s[2 * (i + 1)];
            const double Vm = s[2 * (i - 1) + 1], V0 = s[2 * i + 1], Vp = s[2 * (i + 1) + 1];
            R[2 * i] = (i == mid)
                           ? U0 - 0.5
                           : (Um - 2.0 * U0 + Up) * ih2 + (Up - Um) * c2h +
                                 U0 * (1.0 - U0 - p.a * V0);
            R[2 * i + 1] = p.d * (Vm - 2.0 * V0 + Vp) * ih2 + (Vp - Vm) * c2h +
                           p.r * V0 * (1.0 - V0 - p.b * U0);
        }
        const int e = n - 1;
        R[2 * e] = (s[2 * e] - s[2 * e - 2]) * ih - rr.right_u * 0.5 * (s[2 * e] + s[2 * e - 2]);
        R[2 * e + 1] = (s[2 * e + 1] - s[2 * e - 1]) * ih -
                       rr.right_v * (0.5 * (s[2 * e + 1] + s[2 * e - 1]) - 1.0);
    };

    auto norm_inf = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double x : v) m = std::max(m, std::abs(x));
        return m;
    };
    auto norm_2 = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        return std::sqrt(s);
    };

    BlockTridiag2 J(n);
    std::vector<double> R(2 * n), Rtrial(2 * n), delta(2 * n), ztrial(2 * n);
    residual(z, R);
    double rnorm2 = norm_2(R);
    int stagnation = 0;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        out.iterations = iter;
        out.residual = norm_inf(R);
        if (out.residual < tol_res) break;
        if (norm_inf(z) > 5.0) {
            out.reason = "iterate left the admissible band";
            return out;
        }

        J.reset();
        const double ih = 1.0 / h, ih2 = 1.0 / (h * h), c2h = c / (2.0 * h);
        // left rows
        J.diag(0) = {-ih - 0.5 * rr.left_u, 0.0, 0.0, -ih - 0.5 * rr.left_v};
        J.upper(0) = {ih - 0.5 * rr.left_u, 0.0, 0.0, ih - 0.5 * rr.left_v};
        for (int i = 1; i < n - 1; ++i) {
            const double U0 = z[2 * i], V0 = z[2 * i + 1];
            if (i == mid) {
                J.lower(i)[0] = J.lower(i)[1] = 0.0;
                J.diag(i)[0] = 1.0;
                J.diag(i)[1] = 0.0;
                J.upper(i)[0] = J.upper(i)[1] = 0.0;
            } else {
                J.lower(i)[0] = ih2 - c2h;
                J.lower(i)[1] = 0.0;
                J.diag(i)[0] = -2.0 * ih2 + 1.0 - 2.0 * U0 - p.a * V0;
                J.diag(i)[1] = -p.a * U0;
                J.upper(i)[0] = ih2 + c2h;
                J.upper(i)[1] = 0.0;
            }
            J.lower(i)[2] = 0.0;
            J.lower(i)[3] = p.d * ih2 - c2h;
            J.diag(i)[2] = -p.r * p.b * V0;
            J.diag(i)[3] = -2.0 * p.d * ih2 + p.r * (1.0 - 2.0 * V0 - p.b * U0);
            J.upper(i)[2] = 0.0;
            J.upper(i)[3] = p.d * ih2 + c2h;
        }
        const int e = n - 1;
        J.lower(e) = {-ih - 0.5 * rr.right_u, 0.0, 0.0, -ih - 0.5 * rr.right_v};
        J.diag(e) = {ih - 0.5 * rr.right_u, 0.0, 0.0, ih - 0.5 * rr.right_v};
        for (int i = 0; i < n; ++i) {
            J.rhs(i) = {-R[2 * i], -R[2 * i + 1]};
        }

        bool solved = false;
        for (int attempt = 0; attempt < 3 && !solved; ++attempt) {
            try {
                J.solve(delta);
                solved = true;
            } catch (const IllConditioned&) {
                const double reg = 1e-8 * row_scale * std::pow(10.0, attempt);
                for (int i = 0; i < n; ++i) {
                    J.diag(i)[0] += reg;
                    J.diag(i)[3] += reg;
                }
            }
        }
        if (!solved) throw IllConditioned("solve_wave_profile: Jacobian singular beyond retries");

        // damped step: accept the first halving that decreases ||R||_2
        double step = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 14; ++ls) {
            for (int k = 0; k < 2 * n; ++k) ztrial[k] = z[k] + step * delta[k];
            residual(ztrial, Rtrial);
            const double tnorm = norm_2(Rtrial);
            if (tnorm < (1.0 - 1e-4 * step) * rnorm2) {
                z.swap(ztrial);
                R.swap(Rtrial);
                rnorm2 = tnorm;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted && ++stagnation >= opts.max_stagnation) {
            out.reason = "Newton stagnated";
            return out;
        }
    }

    out.residual = norm_inf(R);
    if (out.residual >= tol_res * 100.0) {
        out.reason = "did not reach tolerance in the iteration budget";
        return out;
    }

    // connection checks: bounds, monotonicity, containment
    double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
    double worst_u_incr = -1e300, worst_v_decr = -1e300;
    for (int i = 0; i < n; ++i) {
        umin = std::min(umin, z[2 * i]);
        umax = std::max(umax, z[2 * i]);
        vmin = std::min(vmin, z[2 * i + 1]);
        vmax = std::max(vmax, z[2 * i + 1]);
        if (i + 1 < n) {
            worst_u_incr = std::max(worst_u_incr, z[2 * (i + 1)] - z[2 * i]);
            worst_v_decr = std::max(worst_v_decr, z[2 * i + 1] - z[2 * (i + 1) + 1]);
        }
    }
    if (umin < opts.bounds_lo || umax > opts.bounds_hi || vmin < opts.bounds_lo ||
        vmax > opts.bounds_hi) {
        out.reason = "solution leaves [" + std::to_string(opts.bounds_lo) + ", " +
                     std::to_string(opts.bounds_hi) + "]^2";
        return out;
    }
    if (worst_u_incr > opts.monotone_slack || worst_v_decr > opts.monotone_slack) {
        out.reason = "monotonicity fails beyond slack";
        return out;
    }

    if (opts.polish) {
        // The phase row displaces one interior equation, and its defect rides
        // the slowly decaying tail mode, polluting downstream residual
        // measurements globally. A few lightly regularized Newton steps on
        // the phase-free system remove it; the translation drift this allows
        // is undone below by re-centering.
        const std::vector<double> z_backup = z;
        auto nat_residual = [&](const std::vector<double>& s, std::vector<double>& Rn) {
            residual(s, Rn);
            const double ih2 = 1.0 / (h * h), c2h = c / (2.0 * h);
            const double Um = s[2 * (mid - 1)], U0 = s[2 * mid], Up = s[2 * (mid + 1)];
            Rn[2 * mid] = (Um - 2.0 * U0 + Up) * ih2 + (Up - Um) * c2h +
                          U0 * (1.0 - U0 - p.a * s[2 * mid + 1]);
        };
        std::vector<double> best = z, Rn(2 * n), ztry(2 * n);
        nat_residual(z, Rn);
        double best_norm = norm_inf(Rn);
        for (int it = 0; it < 10; ++it) {
            bool improved = false;
            for (double reg_f : {1e-9, 1e-7, 1e-5}) {
                const double reg = reg_f * row_scale;
                J.reset();
                const double ih = 1.0 / h, ih2 = 1.0 / (h * h), c2h = c / (2.0 * h);
                J.diag(0) = {-ih - 0.5 * rr.left_u + reg, 0.0, 0.0,
                             -ih - 0.5 * rr.left_v + reg};
                J.upper(0) = {ih - 0.5 * rr.left_u, 0.0, 0.0, ih - 0.5 * rr.left_v};
                for (int i = 1; i < n - 1; ++i) {
                    const double U0 = z[2 * i], V0 = z[2 * i + 1];
                    J.lower(i) = {ih2 - c2h, 0.0, 0.0, p.d * ih2 - c2h};
                    J.diag(i) = {-2.0 * ih2 + 1.0 - 2.0 * U0 - p.a * V0 + reg, -p.a * U0,
                                 -p.r * p.b * V0,
                                 -2.0 * p.d * ih2 + p.r * (1.0 - 2.0 * V0 - p.b * U0) + reg};
                    J.upper(i) = {ih2 + c2h, 0.0, 0.0, p.d * ih2 + c2h};
                }
                const int e = n - 1;
                J.lower(e) = {-ih - 0.5 * rr.right_u, 0.0, 0.0, -ih - 0.5 * rr.right_v};
                J.diag(e) = {ih - 0.5 * rr.right_u + reg, 0.0, 0.0,
                             ih - 0.5 * rr.right_v + reg};
                for (int i = 0; i < n; ++i) J.rhs(i) = {-Rn[2 * i], -Rn[2 * i + 1]};
                try {
                    J.solve(delta);
                } catch (const IllConditioned&) {
                    continue;
                }
                double dn = norm_inf(delta);
                if (dn > 0.1)
                    for (double& x : delta) x *= 0.1 / dn;
                for (double step : {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125}) {
                    for (int i = 0; i < 2 * n; ++i) ztry[i] = z[i] + step * delta[i];
                    std::vector<double> Rt(2 * n);
                    nat_residual(ztry, Rt);
                    const double rn = norm_inf(Rt);
                    if (rn < best_norm) {
                        best_norm = rn;
                        best = ztry;
                        improved = true;
                        break;
                    }
                }
                if (improved) break;
            }
            if (!improved) break;
            z = best;
            nat_residual(z, Rn);
        }
        z = best;

        // re-center: cubic Hermite resample so the u = 1/2 crossing returns
        // to xi = 0 (the polish drifts the translation slightly)
        std::vector<double> U(n), V(n), dU(n), dV(n);
        for (int i = 0; i < n; ++i) {
            U[i] = z[2 * i];
            V[i] = z[2 * i + 1];
        }
        auto deriv4 = [&](const std::vector<double>& f, std::vector<double>& df) {
            df[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
            df[1] = (f[2] - f[0]) / (2.0 * h);
            for (int i = 2; i < n - 2; ++i)
                df[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
            df[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
            df[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
        };
        deriv4(U, dU);
        deriv4(V, dV);
        auto hermite_at = [&](const std::vector<double>& f, const std::vector<double>& df,
                              double xi) {
            if (xi <= -L) return f[0];
            if (xi >= L) return f[n - 1];
            int i = std::clamp(static_cast<int>((xi + L) / h), 0, n - 2);
            const double s = (xi - (-L + i * h)) / h, s2 = s * s, s3 = s2 * s;
            return (2 * s3 - 3 * s2 + 1) * f[i] + (s3 - 2 * s2 + s) * h * df[i] +
                   (-2 * s3 + 3 * s2) * f[i + 1] + (s3 - s2) * h * df[i + 1];
        };
        double lo_s = -0.6, hi_s = 0.6; // polish drift is a few cells at most
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (lo_s + hi_s);
            (hermite_at(U, dU, m) > 0.5 ? lo_s : hi_s) = m;
        }
        const double s0 = 0.5 * (lo_s + hi_s);
        if (std::abs(s0) < 0.55) {
            for (int i = 0; i < n; ++i) {
                const double xi = -L + i * h + s0;
                z[2 * i] = hermite_at(U, dU, xi);
                z[2 * i + 1] = hermite_at(V, dV, xi);
            }
        }

        // the polish must not break the connection; otherwise keep the
        // phase-swapped solution
        bool ok = true;
        for (int i = 0; i + 1 < n && ok; ++i) {
            if (z[2 * (i + 1)] - z[2 * i] > opts.monotone_slack ||
                z[2 * i + 1] - z[2 * (i + 1) + 1] > opts.monotone_slack)
                ok = false;
        }
        if (!ok) z = z_backup;
    }

    if (std::abs(z[0] - 1.0) > opts.containment || std::abs(z[2 * (n - 1)]) > opts.containment ||
        std::abs(z[1]) > opts.containment || std::abs(z[2 * (n - 1) + 1] - 1.0) > opts.containment)
        throw DomainTooSmall("solve_wave_profile: front not contained in [-L, L]");

    out.status = WaveStatus::Converged;
    out.profile.U.resize(n);
    out.profile.V.resize(n);
    for (int i = 0; i < n; ++i) {
        out.profile.U[i] = z[2 * i];
        out.profile.V[i] = z[2 * i + 1];
    }
    out.profile.converged = true;

    // grid derivatives of the converged solution (4th order inside)
    auto deriv = [&](const std::vector<double>& f, std::vector<double>& df) {
        df.resize(n);
        df[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        df[1] = (f[2] - f[0]) / (2.0 * h);
        for (int i = 2; i < n - 2; ++i)
            df[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
        df[n - 2] = (f[n - 1] - f[n - 3]) / (2.0 * h);
        df[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    };
    deriv(out.profile.U, out.profile.dU);
    deriv(out.profile.V, out.profile.dV);
    return out;
}

/// Centered-difference residual of the wave ODE system at the interior nodes
/// of a profile (the phase node included, where the swapped-out equation
/// carries the O(h^2) defect). Used by the grid-refinement order check.
inline double wave_ode_residual(const WaveProfile& w, const Params& p) {
    const int n = w.n();
    const double h = w.h(), ih2 = 1.0 / (h * h), c2h = w.c / (2.0 * h);
    double worst = 0.0;
    for (int i = 1; i < n - 1; ++i) {
        const double ru = (w.U[i - 1] - 2.0 * w.U[i] + w.U[i + 1]) * ih2 +
                          (w.U[i + 1] - w.U[i - 1]) * c2h + reaction_f(w.U[i], w.V[i], p);
        const double rv = p.d * (w.V[i - 1] - 2.0 * w.V[i] + w.V[i + 1]) * ih2 +
                          (w.V[i + 1] - w.V[i - 1]) * c2h + reaction_g(w.U[i], w.V[i], p);
        worst = std::max(worst, std::max(std::abs(ru), std::abs(rv)));
    }
    return worst;
}

/// Comoving-frame ("freezing") computation of the selected front speed for
/// the invasion of (0,1): the fixed-frame scheme runs on a window around the
/// front and the fields are re-anchored by whole grid cells whenever the
/// u = 1/2 crossing drifts one cell from the origin. Cell shifts are
/// lossless, so no advection term and no interpolation error enter; the
/// speed is the windowed slope of the accumulated displacement.
struct FreezeOptions {
    double xi_back = 120.0;  ///< window behind the front (wake relaxation)
    double xi_front = 180.0; ///< window ahead (contains the leading edge build-up)
    double h = 0.05;
    double dt = 0.025;
    double t_max = 1500.0;
    double window = 50.0; ///< slope/stability window
};

struct FreezeResult {
    double c_hat = 0.0;      ///< windowed front speed at stop time
    double stability = 0.0;  ///< |difference of the last two windowed estimates|
    double t_used = 0.0;
};

inline FreezeResult freezing_speed(const Params& p, double tol, FreezeOptions o = {}) {
    p.require_strong_weak();
    const int n = static_cast<int>(std::lround((o.xi_back + o.xi_front) / o.h)) + 1;
    const int i_front = static_cast<int>(std::lround(o.xi_back / o.h)); // xi = 0 node
    std::vector<double> u(n), v(n);
    for (int i = 0; i < n; ++i) {
        const double xi = -o.xi_back + i * o.h;
        u[i] = 0.5 * (1.0 - std::tanh(0.7 * xi));
        v[i] = 1.0 - u[i];
    }

    // Crank-Nicolson factors (homogeneous Neumann)
    auto make_lu = [&](double D) {
        const double k = 0.5 * D * o.dt / (o.h * o.h);
        std::vector<double> lower(n - 1, -k), diag(n, 1.0 + 2.0 * k), upper(n - 1, -k);
        upper[0] = -2.0 * k;
        lower[n - 2] = -2.0 * k;
        TridiagLU lu;
        lu.factor(lower, diag, upper);
        return lu;
    };
    const TridiagLU lu_u = make_lu(1.0), lu_v = make_lu(p.d);
    std::vector<double> rhs(n);
    auto diffuse = [&](std::vector<double>& f, const TridiagLU& lu, double D) {
        const double k = 0.5 * D * o.dt / (o.h * o.h);
        rhs[0] = f[0] + 2.0 * k * (f[1] - f[0]);
        for (int i = 1; i < n - 1; ++i) rhs[i] = f[i] + k * (f[i - 1] - 2.0 * f[i] + f[i + 1]);
        rhs[n - 1] = f[n - 1] + 2.0 * k * (f[n - 2] - f[n - 1]);
        lu.solve(rhs);
        f.swap(rhs);
    };
    auto react_half = [&]() {
        const double tau = 0.5 * o.dt;
        for (int i = 0; i < n; ++i) {
            double uu = u[i], vv = v[i];
            const auto [f1, g1] = reaction_terms(uu, vv, p);
            const auto [f2, g2] = reaction_terms(uu + 0.5 * tau * f1, vv + 0.5 * tau * g1, p);
            const auto [f3, g3] = reaction_terms(uu + 0.5 * tau * f2, vv + 0.5 * tau * g2, p);
            const auto [f4, g4] = reaction_terms(uu + tau * f3, vv + tau * g3, p);
            u[i] = uu + tau / 6.0 * (f1 + 2.0 * f2 + 2.0 * f3 + f4);
            v[i] = vv + tau / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
        }
    };
    auto crossing = [&]() -> double {
        for (int i = n - 2; i >= 0; --i) {
            if ((u[i] - 0.5) * (u[i + 1] - 0.5) <= 0.0 && u[i] != u[i + 1])
                return -o.xi_back + o.h * (i + (0.5 - u[i]) / (u[i + 1] - u[i]));
        }
        return 0.0;
    };

    double displacement = 0.0;
    const long steps = std::lround(o.t_max / o.dt);
    const long per_unit = std::lround(1.0 / o.dt);
    const long wlen = std::lround(o.window);
    std::vector<double> series{crossing()};
    double last_cw = std::numeric_limits<double>::quiet_NaN();
    FreezeResult out;
    out.stability = std::numeric_limits<double>::infinity();

    for (long k = 1; k <= steps; ++k) {
        react_half();
        diffuse(u, lu_u, 1.0);
        diffuse(v, lu_v, p.d);
        react_half();

        double pos = crossing();
        const int cells = static_cast<int>(std::lround(pos / o.h));
        if (cells != 0) {
            // re-anchor: shift by whole cells, fill from the limit states
            if (cells > 0) {
                for (int i = 0; i + cells < n; ++i) { u[i] = u[i + cells]; v[i] = v[i + cells]; }
                for (int i = n - cells; i < n; ++i) { u[i] = 0.0; v[i] = 1.0; }
            } else {
                for (int i = n - 1; i + cells >= 0; --i) { u[i] = u[i + cells]; v[i] = v[i + cells]; }
                for (int i = 0; i < -cells; ++i) { u[i] = 1.0; v[i] = 0.0; }
            }
            displacement += cells * o.h;
            pos -= cells * o.h;
        }
        if (!std::isfinite(u[i_front]) || std::abs(u[i_front]) > 10.0)
            throw Blowup("freezing_speed: scheme went unstable");

        if (k % per_unit == 0) {
            series.push_back(displacement + pos);
            const long t = static_cast<long>(series.size()) - 1;
            if (t >= 2 * wlen && t % (wlen / 2) == 0) {
                const double cw = (series[t] - series[t - wlen]) / o.window;
                out.c_hat = cw;
                out.t_used = static_cast<double>(t);
                if (std::isfinite(last_cw)) {
                    out.stability = std::abs(cw - last_cw);
                    if (out.stability < 0.25 * tol) return out;
                }
                last_cw = cw;
            }
        }
    }
    if (!(out.stability < 10.0 * tol))
        throw PredicateNonMonotone("freezing_speed: front speed did not stabilize by t_max");
    return out;
}

/// Local refinement of a pushed minimal speed: the polished ODE residual of
/// the steep truncated wave dips sharply (V-shaped) at the discrete steep
/// speed; ternary search on that landscape pins c to the grid's own minimal
/// speed and returns the matching clean profile.
struct SteepRefineResult {
    double c = 0.0;
    WaveSolveResult wave;
    double residual_floor = 0.0;
};

inline SteepRefineResult refine_steep_speed(const Params& p, double c_seed,
                                            const WaveOptions& opts, double half_width = 1e-3,
                                            double tol_c = 1e-6) {
    const double lo_limit = p.c_lin();
    double lo = std::max(lo_limit, c_seed - half_width);
    double hi = std::min(2.0, c_seed + half_width);
    WaveOptions popts = opts;
    popts.polish = true;
    WaveProfile warm;
    auto floor_at = [&](double c) -> std::pair<double, WaveSolveResult> {
        WaveSolveResult r = solve_wave_profile(c, p, popts, warm.converged ? &warm : nullptr);
        if (!r.converged()) return {1e300, std::move(r)};
        warm = r.profile;
        return {wave_ode_residual(r.profile, p), std::move(r)};
    };
    SteepRefineResult best;
    best.residual_floor = 1e300;
    auto consider = [&](double c, std::pair<double, WaveSolveResult>&& fr) {
        if (fr.first < best.residual_floor) {
            best.residual_floor = fr.first;
            best.c = c;
            best.wave = std::move(fr.second);
        }
        return fr.first;
    };
    consider(c_seed, floor_at(c_seed));
    while (hi - lo > tol_c) {
        const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
        const double f1 = consider(m1, floor_at(m1));
        const double f2 = consider(m2, floor_at(m2));
        if (f1 < f2)
            hi = m2;
        else
            lo = m1;
    }
    if (!(best.residual_floor < 1e300) || !best.wave.converged())
        throw PredicateNonMonotone("refine_steep_speed: no converged wave in the bracket");
    return best;
}

struct MinimalSpeedResult {
    double c_star = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    WaveProfile profile; ///< converged wave at c_star (profile.c may sit a few 1e-3
                         ///< above it when Newton's near-degenerate band intervenes)
    double c_hat_raw = 0.0; ///< unclamped freezing estimate
    double t_used = 0.0;
};

namespace detail {

/// Profile solve with fallbacks for the stagnation band just above the
/// degenerate speed: try the target, then the linear speed itself when the
/// target is near-degenerate, then a warm-started continuation ladder from
/// above, keeping the converged profile nearest the target.
inline WaveSolveResult solve_profile_robust(double c_star, const Params& p,
                                            const WaveOptions& opts) {
    auto attempt = [&](double c, const WaveProfile* warm) -> WaveSolveResult {
        try {
            return solve_wave_profile(c, p, opts, warm);
        } catch (const DomainTooSmall&) {
            WaveSolveResult r;
            r.reason = "domain too small";
            return r;
        }
    };
    WaveSolveResult r = attempt(c_star, nullptr);
    if (r.converged()) return r;
    const double c_lin = p.c_lin();
    if (c_star - c_lin <= 0.02 + 1e-12) {
        r = attempt(c_lin, nullptr);
        if (r.converged()) return r;
    }
    WaveProfile warm;
    WaveSolveResult best;
    for (double dc : {0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 0.0}) {
        WaveSolveResult rr = attempt(c_star + dc, warm.converged ? &warm : nullptr);
        if (rr.converged()) {
            warm = rr.profile;
            best = std::move(rr);
        }
    }
    if (best.converged()) return best;
    const WaveOptions bigger =
        WaveOptions::with_domain(opts.L * 1.5, 2.0 * opts.L / double(opts.n - 1));
    return solve_wave_profile(c_star, p, bigger);
}

} // namespace detail

/// Minimal wave speed: the comoving-frame spreading speed clamped to the
/// Kan-on interval [2 sqrt(1-a), 2]. Clamping also removes the Bramson
/// 3/(2 lambda t) underestimate in linear-determined cases, which converge
/// to exactly 2 sqrt(1-a). The returned profile is the truncated-BVP wave
/// at c*, where the steep branch is the minimal wave.
inline MinimalSpeedResult minimal_speed(const Params& p, double tol = 1e-3,
                                        WaveOptions opts = {}, FreezeOptions fopts = {}) {
    p.require_strong_weak();
    if (!(tol > 0.0)) throw DomainError("minimal_speed: tol must be positive");

    const FreezeResult fr = freezing_speed(p, tol, fopts);
    MinimalSpeedResult out;
    out.c_hat_raw = fr.c_hat;
    out.t_used = fr.t_used;
    out.c_star = std::clamp(fr.c_hat, p.c_lin(), 2.0);
    const double u_est = std::max(fr.stability * 2.0, 0.5 * tol);
    out.bracket_lo = std::clamp(fr.c_hat - u_est, p.c_lin(), 2.0);
    out.bracket_hi = std::clamp(fr.c_hat + u_est, p.c_lin(), 2.0);

    const double need_L = 27.7 / std::sqrt(1.0 - p.a); // resolve e^{-c/2 L} below 1e-12
    if (need_L > opts.L)
        opts = WaveOptions::with_domain(std::min(need_L, 300.0),
                                        2.0 * opts.L / double(opts.n - 1));

    // clearly pushed and a tight tolerance requested: pin c* to the grid's
    // own steep speed (sharpens the profile and the downstream residuals)
    if (out.c_star > p.c_lin() + 5e-3 && tol < 5e-3) {
        const SteepRefineResult rs = refine_steep_speed(p, out.c_star, opts);
        out.c_star = std::clamp(rs.c, p.c_lin(), 2.0);
        out.bracket_lo = std::min(out.bracket_lo, out.c_star);
        out.bracket_hi = std::max(out.bracket_hi, out.c_star);
        out.profile = rs.wave.profile;
        return out;
    }

    const WaveSolveResult ws = detail::solve_profile_robust(out.c_star, p, opts);
    if (!ws.converged())
        throw PredicateNonMonotone("minimal_speed: no wave profile at the measured c* (" +
                                   ws.reason + ")");
    out.profile = ws.profile;
    return out;
}

} // namespace cdlab
