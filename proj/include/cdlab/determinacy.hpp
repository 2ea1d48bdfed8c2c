#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cdlab/params.hpp"

namespace cdlab {

/// Outcome of the sufficient-condition classifiers for the minimal speed c*.
/// The conditions are sufficient only: Inconclusive defers to the numerical
/// c* from the wave solver.
struct DeterminacyVerdict {
    enum class Verdict { LinearSufficient, NonlinearSufficient, Inconclusive };

    bool llw_holds = false;          ///< 0 < d < 2 and r(ab-1) <= (2-d)(1-a)
    bool huang_holds = false;        ///< ((2-d)(1-a)+r)/(rb) >= max{a, (d-2)/(2|d-1|)}
    bool ao_nonlinear_holds = false; ///< ((d+2)(1-a)+r)/(rb) < 1 - 2(1-a)
    Verdict verdict = Verdict::Inconclusive;

    const char* verdict_name() const {
        switch (verdict) {
            case Verdict::LinearSufficient: return "LinearSufficient";
            case Verdict::NonlinearSufficient: return "NonlinearSufficient";
            default: return "Inconclusive";
        }
    }
};

/// Evaluate the three published sufficient conditions. The linear and
/// nonlinear sets are disjoint; both firing at once means corrupt inputs
/// and throws std::logic_error.
///
/// For d <= 2 the Huang threshold max{a, (d-2)/(2|d-1|)} equals a (the second
/// argument is <= 0 there, and singular only at d = 1), which also makes the
/// Huang and Lewis-Li-Weinberger conditions agree for d < 2.
inline DeterminacyVerdict classify_determinacy(const Params& p) {
    p.require_strong_weak();
    DeterminacyVerdict out;

    out.llw_holds = (p.d > 0.0 && p.d < 2.0) &&
                    (p.r * (p.a * p.b - 1.0) <= (2.0 - p.d) * (1.0 - p.a));

    const double huang_lhs = ((2.0 - p.d) * (1.0 - p.a) + p.r) / (p.r * p.b);
    const double huang_rhs =
        (p.d <= 2.0) ? p.a
                     : std::max(p.a, (p.d - 2.0) / (2.0 * std::abs(p.d - 1.0)));
    out.huang_holds = huang_lhs >= huang_rhs;

    out.ao_nonlinear_holds =
        ((p.d + 2.0) * (1.0 - p.a) + p.r) / (p.r * p.b) < 1.0 - 2.0 * (1.0 - p.a);

    const bool linear = out.llw_holds || out.huang_holds;
    if (linear && out.ao_nonlinear_holds)
        throw std::logic_error(
            "classify_determinacy: linear and nonlinear sufficient conditions "
            "both fired (a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) +
            ", d=" + std::to_string(p.d) + ", r=" + std::to_string(p.r) + ")");

    using V = DeterminacyVerdict::Verdict;
    out.verdict = linear ? V::LinearSufficient
                         : (out.ao_nonlinear_holds ? V::NonlinearSufficient : V::Inconclusive);
    return out;
}

} // namespace cdlab
