#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "cdlab/errors.hpp"
#include "cdlab/params.hpp"
#include "cdlab/spectral.hpp"

namespace cdlab {

enum class RegimeTag {
    FasterU,           ///< c_u > c_v: v dies out ahead, single u-front at c_u
    SlowFrontCStar,    ///< c_v >= f(c*): slow front at c*
    SlowFrontCStarStar,///< c_v in (2, f(c*)): nonlocal pulling, slow front at c_**
    Degenerate         ///< c_v = c_u exactly (rd = 1); the theory treats only strict order
};

inline const char* regime_name(RegimeTag t) {
    switch (t) {
        case RegimeTag::FasterU: return "FasterU";
        case RegimeTag::SlowFrontCStar: return "SlowFrontCStar";
        case RegimeTag::SlowFrontCStarStar: return "SlowFrontCStarStar";
        default: return "Degenerate";
    }
}

/// Predicted spreading structure for compactly supported data of both species.
struct SpeedRegime {
    double c_u = 2.0;
    double c_v = 0.0;
    double c_star = 0.0;
    std::optional<double> c_star_star; ///< f^{-1}(c_v), present only in the pulling window
    std::optional<double> script_c;    ///< selected slow-front speed (absent for FasterU/Degenerate)
    RegimeTag tag = RegimeTag::Degenerate;
};

/// Classify the two-front structure given the minimal wave speed c*.
/// c* must lie in the Kan-on interval [2 sqrt(1-a), 2].
inline SpeedRegime speed_regime(const Params& p, double c_star) {
    p.require_strong_weak();
    const double lo = p.c_lin();
    if (c_star < lo - 1e-9 || c_star > 2.0 + 1e-9)
        throw DomainError("speed_regime: c_star outside the Kan-on interval [2 sqrt(1-a), 2]");

    SpeedRegime out;
    out.c_u = p.c_u();
    out.c_v = p.c_v();
    out.c_star = c_star;

    if (std::abs(out.c_v - out.c_u) <= 1e-12) {
        out.tag = RegimeTag::Degenerate;
        return out;
    }
    if (out.c_v < out.c_u) {
        out.tag = RegimeTag::FasterU;
        return out;
    }

    const double fc = aux_f(c_star, p.a);
    if (out.c_v >= fc) {
        out.tag = RegimeTag::SlowFrontCStar;
        out.script_c = c_star;
        return out;
    }
    // c_v in (2, f(c*)): the slow front is dragged to c_** = f^{-1}(c_v).
    const double css = aux_f_inverse(out.c_v, p.a);
    if (!(css > c_star - 1e-9 && css < 2.0 + 1e-9))
        throw InvalidInterval("speed_regime: c_** = " + std::to_string(css) +
                              " not inside (c* = " + std::to_string(c_star) + ", 2)");
    out.tag = RegimeTag::SlowFrontCStarStar;
    out.c_star_star = css;
    out.script_c = css;
    return out;
}

} // namespace cdlab
