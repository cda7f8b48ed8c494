#include <doctest.h>

#include <cmath>
#include <limits>
#include <levycds/cds_pricing.hpp>
#include <levycds/error.hpp>
#include <random>

#include "oracles.hpp"

using namespace levycds;

namespace {

LevyModel brownian() { return build_model(0.01, 0.2, 0.0, {}, 0.03); }

LevyModel jumpy() {
    return calibrate_risk_neutral(build_model(0.1, 0.2, 1.2, {{0.25, 0.8}, {0.75, 3.5}}, 0.03));
}

LevyModel bounded() {
    return calibrate_risk_neutral(build_model(1.0, 0.0, 1.0, {{0.4, 1.5}, {0.6, 4.0}}, 0.03),
                                  CalibrationFree::JumpRate);
}

}  // namespace

TEST_CASE("triplet normalization") {
    const SwitchTriplet down = normalize_triplet(0.01, 0.5, 0.005);
    CHECK(down.orientation == Orientation::StepDown);
    const SwitchTriplet up = normalize_triplet(-0.01, -0.5, 0.005);
    CHECK(up.orientation == Orientation::StepUp);
    CHECK(up.p_check == 0.01);
    CHECK(up.a_check == 0.5);
    CHECK_THROWS_AS(normalize_triplet(0.01, -0.5, 0.0), Error);
    CHECK_THROWS_AS(normalize_triplet(0.01, 0.5, -1.0), Error);
}

TEST_CASE("perpetual CDS value and spread") {
    const ScaleFunction sf = build_scale(brownian());
    CHECK(perpetual_cds_value(sf, -1.0, 0.02, 0.7) == doctest::Approx(0.7));
    const double p = perpetual_spread(sf, 1.5, 1.0);
    const double z = std::exp(-2.25);
    CHECK(p == doctest::Approx(0.03 * z / (1.0 - z)).epsilon(1e-12));
    CHECK(p == doctest::Approx(3.534e-3).epsilon(1e-3));
    CHECK(std::abs(perpetual_cds_value(sf, 1.5, p, 1.0)) < 1e-12);
    CHECK(std::abs(perpetual_cds_value(sf, 1.5, 0.003534, 1.0)) < 1e-4);
    CHECK(perpetual_spread(sf, 1.5, 0.5) == doctest::Approx(0.5 * p).epsilon(1e-14));
    CHECK(perpetual_spread(sf, 1.5, 2.0) == doctest::Approx(2.0 * p).epsilon(1e-14));
    CHECK(perpetual_spread(sf, 40.0, 1.0) < 1e-20);
    CHECK_THROWS_AS(perpetual_spread(sf, 1e-17, 1.0), Error);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const double x = 3.0 * u(rng), pp = 0.1 * u(rng), a = u(rng);
        CHECK(perpetual_cds_value(sf, x, -pp, -a) == doctest::Approx(-perpetual_cds_value(sf, x, pp, a)));
    }
}

TEST_CASE("payoffs h and g") {
    const ScaleFunction sf = build_scale(jumpy());
    const SwitchTriplet t = normalize_triplet(0.02, 0.5, 0.005);
    CHECK(payoff_h(sf, 0.0, t) == 0.0);
    CHECK(payoff_g(sf, -1.0, t) == 0.0);
    CHECK(payoff_h(sf, 300.0, t) == doctest::Approx(0.02 / 0.03 - 0.005));
    CHECK(payoff_g(sf, 300.0, t) == doctest::Approx(-0.02 / 0.03 - 0.005));
    CHECK(payoff_g_right0(sf, t) == doctest::Approx(0.5 - 0.005).epsilon(1e-12));
    for (double x : {-0.5, 0.0, 1e-6, 0.7, 3.0}) {
        const double h = payoff_h(sf, x, t), g = payoff_g(sf, x, t);
        const double pr = 0.02 / sf.rate();
        const double ulp = std::numeric_limits<double>::epsilon() * (pr + t.gamma + (pr + t.a_check) * sf.zeta(x));
        CHECK(std::abs(h + g - (x > 0.0 ? -2.0 * t.gamma : 0.0)) <= 2.0 * ulp);
    }
}

TEST_CASE("big_G") {
    const ScaleFunction sf = build_scale(brownian());
    const SwitchTriplet t = normalize_triplet(0.002, 0.5, 0.005);
    CHECK(big_G(sf, 0.0, t) == doctest::Approx(0.505));
    const double z1 = 0.6 * std::exp(1.0) + 0.4 * std::exp(-1.5);
    CHECK(big_G(sf, 1.0, t) == doctest::Approx(0.002 / 0.03 * (z1 - 1.0) + 0.5 * z1 + 0.005).epsilon(1e-12));
    double prev = big_G(sf, 0.0, t);
    for (double B = 0.1; B < 5.0; B += 0.1) {
        CHECK(big_G(sf, B, t) > prev);
        prev = big_G(sf, B, t);
    }
}

TEST_CASE("rho") {
    const ScaleFunction bm = build_scale(brownian());
    CHECK(rho(bm, 0.0) == 0.0);
    CHECK(rho(bm, 2.0) == 0.0);

    // lambda = 0.5, one phase with rate 2 and Phi = 1
    const LevyModel m = build_model(0.03 + 1.0 / 6.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    const RootSet roots = find_roots(m, 0.03);
    REQUIRE(roots.phi_r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho(m, roots, 0.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(rho(m, roots, 60.0) < 1e-40);

    for (const LevyModel& mm : {jumpy(), bounded()}) {
        const ScaleFunction sf = build_scale(mm);
        double prev = rho(sf, 0.0);
        for (double A : {0.0, 0.5, 1.0, 2.0}) {
            CHECK(std::abs(rho(sf, A) - oracle::rho_quadrature(sf, A)) < 1e-9);
            CHECK(rho(sf, A) <= mm.tail(A));
            if (A > 0.0) CHECK(rho(sf, A) < prev);
            prev = rho(sf, A);
        }
    }
}

TEST_CASE("Gamma closed form against the resolvent oracle") {
    for (const LevyModel& m : {jumpy(), bounded()}) {
        const ScaleFunction sf = build_scale(m);
        for (double A : {0.0, 0.3, 1.0}) {
            CHECK(big_Gamma(sf, 0.5 * A, A) == 0.0);
            for (double x : {A + 0.1, A + 0.8, A + 2.5}) {
                const double g = big_Gamma(sf, x, A);
                CHECK(std::abs(g - oracle::gamma_resolvent(sf, x, A)) < 1e-9);
                CHECK(g >= 0.0);
                CHECK(g <= sf.zeta(x) + 1e-14);
                if (A > 0.0) CHECK(std::abs(g - big_Gamma_quadrature(sf, x, A)) < 1e-8);
            }
        }
    }
    const ScaleFunction bm = build_scale(brownian());
    CHECK(big_Gamma(bm, 1.5, 0.5) == 0.0);
}

TEST_CASE("creeping gap zeta - Gamma(.;0) is positive iff sigma > 0") {
    const ScaleFunction s1 = build_scale(jumpy());
    const ScaleFunction s2 = build_scale(bounded());
    for (double x : {0.3, 1.5}) {
        CHECK(s1.zeta(x) - big_Gamma(s1, x, 0.0) > 1e-4);
        CHECK(std::abs(s2.zeta(x) - big_Gamma(s2, x, 0.0)) < 1e-12);
    }
}
