#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cdlab/determinacy.hpp"
#include "cdlab/params.hpp"
#include "cdlab/regime.hpp"
#include "cdlab/spectral.hpp"

using namespace cdlab;
using Catch::Approx;

TEST_CASE("reaction terms at the equilibria and a generic point") {
    const Params p{0.5, 2.0, 1.0, 1.0};
    auto [f0, g0] = reaction_terms(0.0, 0.0, p);
    CHECK(f0 == 0.0);
    CHECK(g0 == 0.0);
    auto [f1, g1] = reaction_terms(1.0, 0.0, p);
    CHECK(f1 == 0.0);
    CHECK(g1 == 0.0);
    auto [f, g] = reaction_terms(0.5, 0.5, p);
    CHECK(f == Approx(0.125).margin(1e-15));
    CHECK(g == Approx(-0.25).margin(1e-15));
}

TEST_CASE("spectral exponents: degenerate speed, closed-form values, sign pattern") {
    const Params p75{0.75, 1.5, 1.0, 1.0};
    const double c_lin = 2.0 * std::sqrt(1.0 - 0.75);
    const SpectralExponents deg = spectral_exponents(c_lin, p75);
    CHECK(deg.lambda_u_minus == Approx(-c_lin / 2.0).margin(1e-12));
    CHECK(deg.lambda_u_plus == Approx(-c_lin / 2.0).margin(1e-12));
    CHECK(deg.lambda_u_minus == Approx(-0.5).margin(1e-12));

    const SpectralExponents se = spectral_exponents(2.0, p75);
    CHECK(se.lambda_u_minus == Approx(-1.8660254037844386).epsilon(1e-12));
    CHECK(se.lambda_u_plus == Approx(-0.13397459621556135).epsilon(1e-12));
    CHECK(se.lambda_v_plus == Approx(-1.0 + std::sqrt(2.0)).epsilon(1e-12));
    CHECK(se.lambda_v_minus == Approx(-1.0 - std::sqrt(2.0)).epsilon(1e-12));

    CHECK(se.lambda_u_minus <= se.lambda_u_plus);
    CHECK(se.lambda_u_plus < 0.0);
    CHECK(se.lambda_v_minus < 0.0);
    CHECK(se.lambda_v_plus > 0.0);
    CHECK(se.mu_u_minus < 0.0);
    CHECK(se.mu_u_plus > 0.0);
    CHECK(se.mu_v_minus < 0.0);
    CHECK(se.mu_v_plus > 0.0);

    CHECK_THROWS_AS(spectral_exponents(0.9 * c_lin, p75), DiscriminantNegative);
}

TEST_CASE("spectral exponents satisfy their defining quadratics") {
    // lambda_u: s^2 + c s + (1-a) = 0; lambda_v: d s^2 + c s - rd...; checked
    // as relative residuals of the characteristic polynomials
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ua(0.05, 0.95), ub(1.1, 5.0), ud(0.3, 4.0),
        ur(0.3, 4.0);
    for (int k = 0; k < 200; ++k) {
        const Params p{ua(rng), ub(rng), ud(rng), ur(rng)};
        const double c = p.c_lin() + 0.001 + 3.0 * std::generate_canonical<double, 53>(rng);
        const SpectralExponents se = spectral_exponents(c, p);
        auto rel = [&](double poly, double scale) { return std::abs(poly) / scale; };
        for (double s : {se.lambda_u_minus, se.lambda_u_plus}) {
            const double scale = s * s + c * std::abs(s) + (1.0 - p.a);
            CHECK(rel(s * s + c * s + (1.0 - p.a), scale) < 1e-12);
        }
        for (double s : {se.lambda_v_minus, se.lambda_v_plus}) {
            const double scale = p.d * s * s + c * std::abs(s) + p.r;
            CHECK(rel(p.d * s * s + c * s - p.r, scale) < 1e-12);
        }
        for (double s : {se.mu_u_minus, se.mu_u_plus}) {
            const double scale = s * s + c * std::abs(s) + 1.0;
            CHECK(rel(s * s + c * s - 1.0, scale) < 1e-12);
        }
        for (double s : {se.mu_v_minus, se.mu_v_plus}) {
            const double scale = p.d * s * s + c * std::abs(s) + p.r * (p.b - 1.0);
            CHECK(rel(p.d * s * s + c * s - p.r * (p.b - 1.0), scale) < 1e-12);
        }
    }
}

TEST_CASE("auxiliary speed map f: values, monotonicity, inverse") {
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9})
        CHECK(aux_f(2.0, a) == Approx(2.0).margin(1e-12));

    CHECK(aux_f(2.0 * std::sqrt(0.5), 0.5) == Approx(2.0 * std::sqrt(2.0)).margin(1e-12));
    CHECK(aux_f(1.8, 0.5) ==
          Approx(1.8 - std::sqrt(3.24 - 2.0) + std::sqrt(2.0)).margin(1e-12));

    CHECK(aux_f_inverse(2.0, 0.3) == Approx(2.0).margin(1e-12));
    CHECK(aux_f_inverse(2.0 * std::sqrt(2.0), 0.5) == Approx(std::sqrt(2.0)).margin(1e-12));
    // f^{-1}(2.2) at a = 1/4: 1.1 - 0.5 + 1.5/1.2 = 1.85 (and f(1.85) = 2.2 exactly)
    CHECK(aux_f_inverse(2.2, 0.25) == Approx(1.85).margin(1e-12));
    CHECK(aux_f(1.85, 0.25) == Approx(2.2).margin(1e-12));

    for (double a : {0.2, 0.5, 0.8}) {
        const double lo = 2.0 * std::sqrt(1.0 - a) + 1e-6;
        double prev = aux_f(lo, a);
        for (int i = 1; i <= 400; ++i) {
            const double c = lo + (10.0 - lo) * i / 400.0;
            const double fc = aux_f(c, a);
            CHECK(fc < prev); // strictly decreasing
            prev = fc;
            CHECK(std::abs(aux_f_inverse(fc, a) - c) <= 1e-10);
        }
    }

    CHECK_THROWS_AS(aux_f(0.1, 0.5), DiscriminantNegative);
    CHECK_THROWS_AS(aux_f_inverse(2.0 * std::sqrt(0.5), 0.5), DomainError);
}

TEST_CASE("leading-edge exponent Lambda(c, c')") {
    // c' = c = 2: inner radical collapses, Lambda = 1, lambda = 1 - sqrt(a)
    for (double a : {0.25, 0.5, 0.75}) {
        auto [Lam, lam] = capital_lambda(2.0, 2.0, a);
        CHECK(lam == Approx(1.0 - std::sqrt(a)).margin(1e-12));
        CHECK(Lam == Approx(1.0).margin(1e-12));
    }
    {
        auto [Lam, lam] = capital_lambda(2.0, 3.0, 0.75);
        CHECK(lam == Approx(0.13397459621556135).epsilon(1e-9));
        // smaller root of L^2 - 3L + (1 + lambda(2)) = 0
        const double expected =
            (3.0 - std::sqrt(9.0 - 4.0 * (1.0 + (1.0 - std::sqrt(0.75))))) / 2.0;
        CHECK(Lam == Approx(expected).epsilon(1e-12));
        CHECK(Lam == Approx(0.443579).margin(5e-7));
    }
    { // existence boundary: c = 2 sqrt(1-a), c' = f(c) makes the discriminant 0
        const double a = 0.5, c = 2.0 * std::sqrt(1.0 - a), cp = aux_f(c, a);
        auto [Lam, lam] = capital_lambda(c, cp, a);
        CHECK(Lam == Approx(cp / 2.0).margin(1e-10));
        (void)lam;
    }
    { // quadratic identity and smaller-root property on a grid
        const double a = 0.4;
        for (double c : {1.6, 1.8, 2.0}) {
            for (double dc : {0.0, 0.5, 1.5, 3.0}) {
                const double cp = std::max(c, aux_f(c, a)) + dc;
                auto [Lam, lam] = capital_lambda(c, cp, a);
                const double poly = Lam * Lam - cp * Lam + (1.0 + lam * (cp - c));
                const double scale = Lam * Lam + cp * Lam + 1.0 + lam * (cp - c);
                CHECK(std::abs(poly) / scale < 1e-12);
                CHECK(Lam <= cp / 2.0 + 1e-12); // smaller root
            }
        }
    }
    CHECK_THROWS_AS(capital_lambda(1.6, 2.0, 0.4), DiscriminantNegative); // c' < f(c)
}

TEST_CASE("determinacy classifiers on the reference parameter sets") {
    {
        const DeterminacyVerdict v = classify_determinacy({0.5, 1.5, 1.0, 1.0});
        CHECK(v.llw_holds); // r(ab-1) = -0.25 <= (2-d)(1-a) = 0.5
        CHECK(v.verdict == DeterminacyVerdict::Verdict::LinearSufficient);
    }
    {
        const DeterminacyVerdict v = classify_determinacy({0.9, 5.0, 1.0, 1.0});
        CHECK(v.ao_nonlinear_holds); // 0.26 < 0.8
        CHECK_FALSE(v.llw_holds);
        CHECK_FALSE(v.huang_holds);
        CHECK(v.verdict == DeterminacyVerdict::Verdict::NonlinearSufficient);
    }
}

TEST_CASE("LLW and Huang conditions agree for d < 2") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ua(0.05, 0.95), ub(1.05, 6.0), ud(0.05, 1.95),
        ur(0.1, 5.0);
    for (int k = 0; k < 2000; ++k) {
        const Params p{ua(rng), ub(rng), ud(rng), ur(rng)};
        const DeterminacyVerdict v = classify_determinacy(p);
        CHECK(v.llw_holds == v.huang_holds);
    }
}

TEST_CASE("linear and nonlinear sufficient conditions never both fire") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ua(0.01, 0.99), ub(1.01, 10.0), ud(0.05, 8.0),
        ur(0.05, 8.0);
    for (int k = 0; k < 10000; ++k) {
        const Params p{ua(rng), ub(rng), ud(rng), ur(rng)};
        CHECK_NOTHROW(classify_determinacy(p)); // throws if both fire
    }
}

TEST_CASE("speed regime selection") {
    { // rd = 1: c_v = c_u exactly, no branch is forced
        const SpeedRegime r = speed_regime({0.5, 1.5, 1.0, 1.0}, 1.5);
        CHECK(r.tag == RegimeTag::Degenerate);
        CHECK_FALSE(r.script_c.has_value());
    }
    { // c_v < c_u
        const SpeedRegime r = speed_regime({0.5, 1.5, 0.5, 1.0}, 1.5);
        CHECK(r.tag == RegimeTag::FasterU);
        CHECK(r.c_v == Approx(std::sqrt(2.0)));
    }
    { // accelerated branch: a = 0.25, rd = 1.21, linear c* = sqrt(3)
        const Params p{0.25, 1.5, 1.21, 1.0};
        const double c_star = p.c_lin();
        REQUIRE(p.c_v() == Approx(2.2).margin(1e-12));
        REQUIRE(aux_f(c_star, p.a) > 2.2); // pulling window is open
        const SpeedRegime r = speed_regime(p, c_star);
        CHECK(r.tag == RegimeTag::SlowFrontCStarStar);
        REQUIRE(r.c_star_star.has_value());
        CHECK(*r.c_star_star == Approx(1.85).margin(1e-12));
        CHECK(*r.script_c == Approx(1.85).margin(1e-12));
        CHECK(*r.c_star_star > c_star);
        CHECK(*r.c_star_star < 2.0);
        // c_** agrees with f^{-1}(2 sqrt(rd)) by construction
        CHECK(*r.c_star_star == Approx(aux_f_inverse(2.0 * std::sqrt(1.21), 0.25)).margin(1e-14));
    }
    { // c_v = 4 >= f(c*): slow front keeps c*
        const Params p{0.5, 1.5, 4.0, 1.0};
        REQUIRE(aux_f(1.6, 0.5) < 4.0);
        const SpeedRegime r = speed_regime(p, 1.6);
        CHECK(r.tag == RegimeTag::SlowFrontCStar);
        CHECK(*r.script_c == Approx(1.6));
    }
    { // example midpoint: a = 0.25, rd = 1.21 with any valid c* gives c_** = 1.85
        const SpeedRegime r = speed_regime({0.25, 1.5, 1.21, 1.0}, 1.8);
        REQUIRE(r.c_star_star.has_value());
        CHECK(*r.c_star_star == Approx(1.85).margin(1e-12));
    }
    CHECK_THROWS_AS(speed_regime({0.5, 1.5, 1.0, 1.0}, 0.5), DomainError); // below Kan-on
}
