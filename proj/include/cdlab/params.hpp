#pragma once

#include <cmath>
#include <utility>

#include "cdlab/errors.hpp"

namespace cdlab {

/// Model constants of the two-species competition-diffusion system
///
///   u_t = u_xx + u (1 - u - a v)
///   v_t = d v_xx + r v (1 - v - b u)
///
/// a, b are the competition coefficients, d and r the diffusion and growth
/// rates of v. The u-species is normalized (diffusion 1, growth 1).
struct Params {
    double a; ///< competition felt by u
    double b; ///< competition felt by v
    double d; ///< diffusion rate of v
    double r; ///< intrinsic growth rate of v

    bool positive() const { return a > 0.0 && b > 0.0 && d > 0.0 && r > 0.0; }

    /// Strong-weak regime (H1): 0 < a < 1 < b, u excludes v in the ODE.
    bool strong_weak() const { return positive() && a < 1.0 && b > 1.0; }

    void require_positive() const {
        if (!positive()) throw DomainError("Params: all of a, b, d, r must be positive");
    }
    void require_strong_weak() const {
        require_positive();
        if (!strong_weak()) throw DomainError("Params: (H1) 0 < a < 1 < b required");
    }

    /// KPP speed of u alone: 2.
    double c_u() const { return 2.0; }
    /// KPP speed of v alone: 2 sqrt(r d).
    double c_v() const { return 2.0 * std::sqrt(r * d); }
    /// Linearized invasion speed of u into (0,1): 2 sqrt(1-a).
    double c_lin() const { return 2.0 * std::sqrt(1.0 - a); }
};

/// Reaction terms F(u,v) = u(1-u-av), G(u,v) = r v(1-v-bu).
inline std::pair<double, double> reaction_terms(double u, double v, const Params& p) {
    return {u * (1.0 - u - p.a * v), p.r * v * (1.0 - v - p.b * u)};
}

inline double reaction_f(double u, double v, const Params& p) {
    return u * (1.0 - u - p.a * v);
}

inline double reaction_g(double u, double v, const Params& p) {
    return p.r * v * (1.0 - v - p.b * u);
}

} // namespace cdlab
