#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "cdlab/errors.hpp"
#include "cdlab/fit.hpp"
#include "cdlab/params.hpp"
#include "cdlab/spectral.hpp"
#include "cdlab/wave.hpp"

namespace cdlab {

/// Which tail mechanism dominates:
/// the other species' mode, the species' own mode, or the resonant equality
/// case with a secular xi e^{rate xi} factor.
enum class TailCase { CrossDriven, OwnMode, Resonant };

struct TailFit {
    double fitted_rate = 0.0;
    double predicted_rate = 0.0;
    double amplitude = 0.0; ///< fitted prefactor of the leading tail term
    TailCase tail_case = TailCase::OwnMode;
    bool secular_preferred = false; ///< xi e^{rate xi} beats the pure exponential
    std::size_t samples = 0;

    double relative_error() const {
        return std::abs(fitted_rate - predicted_rate) / std::abs(predicted_rate);
    }
};

struct WaveAsymptoticsReport {
    TailFit u_plus;  ///< U near +inf
    TailFit v_plus;  ///< 1-V near +inf
    TailFit v_minus; ///< V near -inf
    TailFit u_minus; ///< 1-U near -inf
    SpectralExponents predicted{};
};

namespace detail {

inline TailFit fit_tail(const std::vector<double>& xi, const std::vector<double>& q,
                        double lo, double hi, bool try_secular) {
    std::vector<double> xs, ls, ls_sec;
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (q[i] > lo && q[i] < hi) {
            xs.push_back(xi[i]);
            ls.push_back(std::log(q[i]));
            if (try_secular && std::abs(xi[i]) > 1e-12)
                ls_sec.push_back(std::log(q[i] / std::abs(xi[i])));
        }
    }
    if (xs.size() < 20)
        throw WindowTooShort("fit_tail: fewer than 20 samples in the fitting window");
    const OlsFit f = ols(xs, ls);
    TailFit out;
    out.samples = xs.size();
    out.fitted_rate = f.slope;
    out.amplitude = std::exp(f.intercept);
    if (try_secular && ls_sec.size() == xs.size()) {
        const OlsFit g = ols(xs, ls_sec);
        if (g.residual_sup < f.residual_sup) {
            out.secular_preferred = true;
            out.fitted_rate = g.slope;
            out.amplitude = std::exp(g.intercept);
        }
    }
    return out;
}

} // namespace detail

/// Fit the four tail rates of a converged wave and compare them with the
/// spectral predictions. `minimal_wave` selects the steep rate lambda_u^-
/// for U ahead of the front (the pushed minimal wave); otherwise the generic
/// lambda_u^+ applies. Fitting windows take samples where the profile is
/// between `window_lo` and `window_hi` of its limit.
inline WaveAsymptoticsReport verify_asymptotics(const WaveProfile& w, const Params& p,
                                                bool minimal_wave = true,
                                                double window_lo = 1e-8,
                                                double window_hi = 1e-3) {
    if (!w.converged) throw DomainError("verify_asymptotics: profile not converged");
    const SpectralExponents se = spectral_exponents(w.c, p);
    const int n = w.n();

    std::vector<double> one_minus_V(n), one_minus_U(n);
    for (int i = 0; i < n; ++i) {
        one_minus_V[i] = 1.0 - w.V[i];
        one_minus_U[i] = 1.0 - w.U[i];
    }

    WaveAsymptoticsReport rep;
    rep.predicted = se;
    const double eq_tol = 1e-9;

    rep.u_plus = detail::fit_tail(w.xi, w.U, window_lo, window_hi, false);
    rep.u_plus.predicted_rate = minimal_wave ? se.lambda_u_minus : se.lambda_u_plus;
    rep.u_plus.tail_case = TailCase::OwnMode;

    const double dv_right = se.lambda_v_minus - se.lambda_u_minus;
    const bool v_right_res = std::abs(dv_right) < eq_tol;
    rep.v_plus = detail::fit_tail(w.xi, one_minus_V, window_lo, window_hi, v_right_res);
    rep.v_plus.predicted_rate = std::max(se.lambda_v_minus, se.lambda_u_minus);
    rep.v_plus.tail_case = v_right_res ? TailCase::Resonant
                            : (se.lambda_u_minus > se.lambda_v_minus ? TailCase::CrossDriven
                                                                     : TailCase::OwnMode);

    rep.v_minus = detail::fit_tail(w.xi, w.V, window_lo, window_hi, false);
    rep.v_minus.predicted_rate = se.mu_v_plus;
    rep.v_minus.tail_case = TailCase::OwnMode;

    const double du_left = se.mu_u_plus - se.mu_v_plus;
    const bool u_left_res = std::abs(du_left) < eq_tol;
    rep.u_minus = detail::fit_tail(w.xi, one_minus_U, window_lo, window_hi, u_left_res);
    rep.u_minus.predicted_rate = std::min(se.mu_u_plus, se.mu_v_plus);
    rep.u_minus.tail_case = u_left_res ? TailCase::Resonant
                             : (se.mu_v_plus < se.mu_u_plus ? TailCase::CrossDriven
                                                            : TailCase::OwnMode);
    return rep;
}

/// C^1 evaluation of a wave profile at arbitrary xi: cubic Hermite between
/// grid nodes, exponential tail extensions outside, matched in value and
/// log-derivative at the last node. Second derivatives come from the wave
/// ODE identities (U'' = -cU' - F, dV'' = -cV' - G), not from differencing.
class WaveInterpolant {
public:
    WaveInterpolant(const WaveProfile& w, const Params& p) : p_(p), c_(w.c) {
        if (!w.converged) throw DomainError("WaveInterpolant: profile not converged");
        xi0_ = w.xi.front();
        xiN_ = w.xi.back();
        h_ = w.h();
        U_ = w.U;
        V_ = w.V;
        dU_ = w.dU;
        dV_ = w.dV;

        const int n = w.n();
        const SpectralExponents se = spectral_exponents(c_, p_);
        uR_ = U_[n - 1];
        rate_uR_ = (uR_ > 1e-250) ? dU_[n - 1] / uR_ : se.lambda_u_minus;
        wR_ = 1.0 - V_[n - 1];
        rate_vR_ = (wR_ > 1e-250) ? -dV_[n - 1] / wR_
                                  : std::max(se.lambda_v_minus, se.lambda_u_minus);
        wL_ = 1.0 - U_[0];
        rate_uL_ = (wL_ > 1e-250) ? -dU_[0] / wL_ : std::min(se.mu_u_plus, se.mu_v_plus);
        vL_ = V_[0];
        rate_vL_ = (vL_ > 1e-250) ? dV_[0] / vL_ : se.mu_v_plus;
    }

    double c() const { return c_; }
    double xi_min() const { return xi0_; }
    double xi_max() const { return xiN_; }
    double grid_h() const { return h_; }

    void eval(double xi, double& U, double& dU, double& V, double& dV) const {
        if (xi > xiN_) {
            const double eu = std::exp(rate_uR_ * (xi - xiN_));
            U = uR_ * eu;
            dU = rate_uR_ * uR_ * eu;
            const double ev = std::exp(rate_vR_ * (xi - xiN_));
            V = 1.0 - wR_ * ev;
            dV = -rate_vR_ * wR_ * ev;
            return;
        }
        if (xi < xi0_) {
            const double eu = std::exp(rate_uL_ * (xi - xi0_));
            U = 1.0 - wL_ * eu;
            dU = -rate_uL_ * wL_ * eu;
            const double ev = std::exp(rate_vL_ * (xi - xi0_));
            V = vL_ * ev;
            dV = rate_vL_ * vL_ * ev;
            return;
        }
        const int n = static_cast<int>(U_.size());
        int i = static_cast<int>((xi - xi0_) / h_);
        i = std::clamp(i, 0, n - 2);
        const double s = (xi - (xi0_ + i * h_)) / h_;
        hermite(U_[i], U_[i + 1], dU_[i], dU_[i + 1], s, U, dU);
        hermite(V_[i], V_[i + 1], dV_[i], dV_[i + 1], s, V, dV);
    }

    double u(double xi) const {
        double U, dU, V, dV;
        eval(xi, U, dU, V, dV);
        return U;
    }
    double v(double xi) const {
        double U, dU, V, dV;
        eval(xi, U, dU, V, dV);
        return V;
    }

    /// U'' and V'' from the traveling-wave ODE identities.
    void eval2(double xi, double& U, double& dU, double& d2U, double& V, double& dV,
               double& d2V) const {
        eval(xi, U, dU, V, dV);
        d2U = -c_ * dU - reaction_f(U, V, p_);
        d2V = (-c_ * dV - reaction_g(U, V, p_)) / p_.d;
    }

    /// Location of the U = theta crossing (U strictly decreasing).
    double u_level(double theta) const {
        const int n = static_cast<int>(U_.size());
        if (theta >= U_[0] || theta <= U_[n - 1])
            throw NoFront("WaveInterpolant::u_level: level outside the profile range");
        int lo = 0, hi = n - 1;
        while (hi - lo > 1) {
            const int mid = (lo + hi) / 2;
            (U_[mid] > theta ? lo : hi) = mid;
        }
        double a = xi0_ + lo * h_, b = xi0_ + hi * h_;
        for (int it = 0; it < 60; ++it) {
            const double m = 0.5 * (a + b);
            (u(m) > theta ? a : b) = m;
        }
        return 0.5 * (a + b);
    }

private:
    void hermite(double f0, double f1, double g0, double g1, double s, double& f,
                 double& df) const {
        // g0, g1 are df/dxi at the nodes; the unit-interval basis takes h*g
        const double s2 = s * s, s3 = s2 * s;
        f = (2 * s3 - 3 * s2 + 1) * f0 + (s3 - 2 * s2 + s) * h_ * g0 +
            (-2 * s3 + 3 * s2) * f1 + (s3 - s2) * h_ * g1;
        df = ((6 * s2 - 6 * s) * f0 + (3 * s2 - 4 * s + 1) * h_ * g0 +
              (-6 * s2 + 6 * s) * f1 + (3 * s2 - 2 * s) * h_ * g1) /
             h_;
    }

    double xi0_ = 0, xiN_ = 0, h_ = 0, c_ = 0;
    Params p_{};
    std::vector<double> U_, V_, dU_, dV_;
    double uR_ = 0, rate_uR_ = 0, wR_ = 0, rate_vR_ = 0;
    double wL_ = 0, rate_uL_ = 0, vL_ = 0, rate_vL_ = 0;
};

} // namespace cdlab
