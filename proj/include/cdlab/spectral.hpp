#pragma once

#include <cmath>
#include <utility>

#include "cdlab/errors.hpp"
#include "cdlab/params.hpp"

namespace cdlab {

/// Decay/growth exponents of the wave tails at speed c.
///
/// Near +inf (ahead of the front, (U,V) -> (0,1)):
///   U  ~ mix of e^{lambda_u^- xi}, e^{lambda_u^+ xi}, both < 0,
///   1-V driven by U or by its own mode lambda_v^- < 0 (lambda_v^+ > 0 grows).
/// Near -inf ((U,V) -> (1,0)):
///   V  ~ e^{mu_v^+ xi}, 1-U ~ e^{min(mu_u^+, mu_v^+) xi} (mu^- modes grow).
struct SpectralExponents {
    double lambda_u_minus, lambda_u_plus;
    double lambda_v_minus, lambda_v_plus;
    double mu_u_minus, mu_u_plus;
    double mu_v_minus, mu_v_plus;
};

/// All eight exponents at speed c. Requires c >= 2 sqrt(1-a) so the u-pair
/// is real; at equality both lambda_u equal -c/2.
inline SpectralExponents spectral_exponents(double c, const Params& p) {
    p.require_positive();
    const double disc_u = c * c - 4.0 * (1.0 - p.a);
    if (disc_u < -1e-12 * std::max(1.0, c * c))
        throw DiscriminantNegative("spectral_exponents: c < 2 sqrt(1-a), u-exponents complex");
    const double su = std::sqrt(std::max(0.0, disc_u));
    const double sv = std::sqrt(c * c + 4.0 * p.r * p.d);
    const double smu = std::sqrt(c * c + 4.0);
    const double smv = std::sqrt(c * c + 4.0 * p.r * p.d * (p.b - 1.0));
    SpectralExponents e;
    e.lambda_u_minus = (-c - su) / 2.0;
    e.lambda_u_plus = (-c + su) / 2.0;
    e.lambda_v_minus = (-c - sv) / (2.0 * p.d);
    e.lambda_v_plus = (-c + sv) / (2.0 * p.d);
    e.mu_u_minus = (-c - smu) / 2.0;
    e.mu_u_plus = (-c + smu) / 2.0;
    e.mu_v_minus = (-c - smv) / (2.0 * p.d);
    e.mu_v_plus = (-c + smv) / (2.0 * p.d);
    return e;
}

/// Auxiliary speed map f(c) = c - sqrt(c^2 - 4(1-a)) + 2 sqrt(a),
/// strictly decreasing on [2 sqrt(1-a), inf), f(2) = 2.
inline double aux_f(double c, double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("aux_f: a in (0,1) required");
    const double disc = c * c - 4.0 * (1.0 - a);
    if (disc < -1e-12 * std::max(1.0, c * c))
        throw DiscriminantNegative("aux_f: c < 2 sqrt(1-a)");
    return c - std::sqrt(std::max(0.0, disc)) + 2.0 * std::sqrt(a);
}

/// Inverse of f: f^{-1}(c') = c'/2 - sqrt(a) + 2(1-a)/(c' - 2 sqrt(a)),
/// defined for c' > 2 sqrt(a).
inline double aux_f_inverse(double c_prime, double a) {
    if (!(a > 0.0 && a < 1.0)) throw DomainError("aux_f_inverse: a in (0,1) required");
    const double gap = c_prime - 2.0 * std::sqrt(a);
    if (gap <= 0.0) throw DomainError("aux_f_inverse: c' <= 2 sqrt(a)");
    return c_prime / 2.0 - std::sqrt(a) + 2.0 * (1.0 - a) / gap;
}

/// Leading-edge decay rate lambda(c) = (c - sqrt(c^2 - 4(1-a)))/2 = -lambda_u^+.
inline double lambda_edge(double c, double a) {
    const double disc = c * c - 4.0 * (1.0 - a);
    if (disc < -1e-12 * std::max(1.0, c * c))
        throw DiscriminantNegative("lambda_edge: c < 2 sqrt(1-a)");
    return (c - std::sqrt(std::max(0.0, disc))) / 2.0;
}

/// Exponential-ansatz exponent of the leading edge when a c-front is chased
/// by a c'-front: the smaller root of
///   Lambda^2 - c' Lambda + (1 + lambda(c)(c' - c)) = 0.
/// Exists iff c' >= f(c); returns (Lambda, lambda(c)).
inline std::pair<double, double> capital_lambda(double c, double c_prime, double a) {
    const double lam = lambda_edge(c, a);
    const double inner = c_prime * c_prime - 4.0 * lam * (c_prime - c) - 4.0;
    if (inner < -1e-12 * std::max(1.0, c_prime * c_prime))
        throw DiscriminantNegative("capital_lambda: c' < f(c), no real exponent");
    const double Lambda = (c_prime - std::sqrt(std::max(0.0, inner))) / 2.0;
    return {Lambda, lam};
}

} // namespace cdlab
