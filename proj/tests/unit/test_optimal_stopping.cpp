#include <doctest.h>

#include <cmath>
#include <levycds/error.hpp>
#include <levycds/swap_contracts.hpp>

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

TEST_CASE("buyer Never when the fee exceeds the premium benefit") {
    const ScaleFunction sf = build_scale(jumpy());
    const SwitchTriplet t = normalize_triplet(0.003, 0.5, 0.1);
    const StoppingSolution s = solve_B_star(sf, t);
    CHECK(s.case_tag == CaseTag::Never);
    CHECK(value_v(s, 1.0) == 0.0);
}

TEST_CASE("buyer Immediate for bounded variation with a small jump rate") {
    const LevyModel m = build_model(1.0, 0.0, 0.05, {{1.0, 2.0}}, 0.03);
    const ScaleFunction sf = build_scale(m);
    const SwitchTriplet t = normalize_triplet(0.05, 0.5, 0.0);
    CHECK(varrho_right0(sf, t) == doctest::Approx((0.05 - 0.5 * 0.05) / 1.0).epsilon(1e-12));
    const StoppingSolution s = solve_B_star(sf, t);
    CHECK(s.case_tag == CaseTag::Immediate);
    CHECK(value_v(s, 0.7) == doctest::Approx(payoff_h(sf, 0.7, t)));
}

TEST_CASE("Brownian B* matches the brute-force maximizer of the threshold value") {
    const ScaleFunction sf = build_scale(brownian());
    const SwitchTriplet t = normalize_triplet(0.002, 0.5, 0.005);
    const StoppingSolution s = solve_B_star(sf, t);
    REQUIRE(s.case_tag == CaseTag::Interior);

    // v_B(x) = h(B) W(x)/W(B) is maximized in B independently of x.
    const oracle::Brownian bm{0.01, 0.2, 0.03};
    auto h = [&](double B) { return (t.p_check / 0.03 - t.gamma) - (t.p_check / 0.03 + t.a_check) * bm.zeta(B); };
    double best = 0.0, best_B = 0.0;
    for (double B = 1e-3; B < 10.0; B += 1e-4) {
        const double v = h(B) / bm.W(B);
        if (v > best) {
            best = v;
            best_B = B;
        }
    }
    CHECK(std::abs(s.threshold - best_B) < 2e-4);
    CHECK(s.fit_residual < 1e-9);
}

TEST_CASE("varrho: definition, monotonicity and the limit at zero") {
    const SwitchTriplet t = normalize_triplet(0.02, 0.5, 0.005);
    for (const LevyModel& m : {jumpy(), bounded()}) {
        const ScaleFunction sf = build_scale(m);
        double prev = -std::numeric_limits<double>::infinity();
        for (double B = 0.05; B < 6.0; B += 0.05) {
            const double v = varrho(sf, B, t);
            CHECK(v > prev);
            prev = v;
            const double d = oracle::varrho_definition(sf, B, t);
            CHECK(std::abs(v - d) < 1e-10 * std::max(1.0, std::abs(d)));
        }
    }
    CHECK(varrho_right0(build_scale(jumpy()), t) == -std::numeric_limits<double>::infinity());
    const LevyModel b = bounded();
    const double expect = (t.p_check - 0.03 * t.gamma - (t.a_check + t.gamma) * b.jump_rate()) / b.drift();
    CHECK(varrho_right0(build_scale(b), t) == doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("buyer value function: fit and domination") {
    const SwitchTriplet t = normalize_triplet(0.03, 0.5, 0.005);
    for (const LevyModel& m : {jumpy(), bounded()}) {
        const ScaleFunction sf = build_scale(m);
        const StoppingSolution s = solve_B_star(sf, t);
        REQUIRE(s.case_tag == CaseTag::Interior);
        const double B = s.threshold;
        CHECK(value_v(s, -1.0) == 0.0);
        CHECK(value_v(s, B * 1.5) == doctest::Approx(payoff_h(sf, B * 1.5, t)));
        CHECK(std::abs(value_v(s, B * (1.0 - 1e-12)) - value_v(s, B)) < 1e-8);
        CHECK(std::abs(delta_B(sf, B - 1e-10, B, t)) < 1e-8);
        CHECK(delta_B(sf, -0.5, B, t) == 0.0);
        if (!m.bounded_variation()) {
            CHECK(std::abs(value_v_prime(s, B * (1.0 - 1e-12)) - value_v_prime(s, B * (1.0 + 1e-12))) < 1e-8);
        }
        for (int i = 1; i <= 500; ++i) {
            const double x = 4.0 * std::max(B, 1.0) * i / 500.0;
            CHECK(value_v(s, x) >= std::max(payoff_h(sf, x, t), 0.0) - 1e-10);
        }
        if (m.bounded_variation()) {
            CHECK(value_v(s, 1e-9) > 0.0);
        } else {
            CHECK(value_v(s, 1e-12) < 1e-9);
        }
    }
}

TEST_CASE("seller cases") {
    const ScaleFunction bm = build_scale(brownian());
    CHECK(solve_A_star(bm, normalize_triplet(0.02, 0.5, 0.6)).case_tag == CaseTag::Never);
    CHECK(solve_A_star(bm, normalize_triplet(0.02, 0.5, 0.5)).case_tag == CaseTag::Never);

    const SwitchTriplet t = normalize_triplet(0.02, 0.5, 0.005);
    const StoppingSolution creep = solve_A_star(bm, t);
    CHECK(creep.case_tag == CaseTag::CreepAtZero);
    CHECK(creep.threshold == 0.0);
    for (double x : {0.2, 1.0, 3.0}) {
        CHECK(value_u(creep, x) == doctest::Approx((t.a_check - t.gamma) * bm.zeta(x)).epsilon(1e-12));
    }
    CHECK(value_u(creep, -0.3) == 0.0);
}

TEST_CASE("seller m=1 closed form") {
    const LevyModel m = calibrate_risk_neutral(build_model(0.1, 0.2, 2.0, {{1.0, 1.5}}, 0.03));
    const ScaleFunction sf = build_scale(m);
    const SwitchTriplet t = normalize_triplet(0.01, 0.5, 0.005);
    const StoppingSolution s = solve_A_star(sf, t);
    REQUIRE(s.case_tag == CaseTag::Interior);
    const double phi = sf.phi();
    const double k = (t.gamma * 0.03 + t.p_check) / (t.a_check - t.gamma);
    const double expect = std::log(2.0 * phi / ((1.5 + phi) * k)) / 1.5;
    CHECK(s.threshold == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("seller interior solution: fit, region and domination") {
    const SwitchTriplet t = normalize_triplet(0.01, 0.5, 0.005);
    for (const LevyModel& m : {jumpy(), bounded()}) {
        const ScaleFunction sf = build_scale(m);
        const StoppingSolution s = solve_A_star(sf, t);
        REQUIRE(s.case_tag == CaseTag::Interior);
        const double A = s.threshold;
        CHECK((t.a_check - t.gamma) * rho(sf, A) == doctest::Approx(t.gamma * 0.03 + t.p_check).epsilon(1e-9));
        CHECK(value_u(s, 0.5 * A) == doctest::Approx(payoff_g(sf, 0.5 * A, t)));
        CHECK(value_u(s, A) == doctest::Approx(payoff_g(sf, A, t)));
        CHECK(delta_A(sf, A, A, t) == 0.0);
        CHECK(std::abs(delta_A(sf, A * (1.0 + 1e-12), A, t)) < 1e-8);
        if (!m.bounded_variation()) CHECK(std::abs(delta_A_prime(sf, A * (1.0 + 1e-12), A, t)) < 1e-8);
        for (int i = 1; i <= 500; ++i) {
            const double x = 4.0 * std::max(A, 1.0) * i / 500.0;
            CHECK(value_u(s, x) >= payoff_g(sf, x, t) - 1e-10);
        }
        // d/dA Delta_A(x) changes sign at A*
        const double x = 3.0 * A + 1.0;
        const double h = 1e-5;
        auto dA = [&](double a) { return (delta_A(sf, x, a + h, t) - delta_A(sf, x, a - h, t)) / (2.0 * h); };
        CHECK(dA(0.7 * A) > 0.0);
        CHECK(dA(1.3 * A) < 0.0);
    }
}

TEST_CASE("step-down buyer equals step-up seller after normalization") {
    const ScaleFunction sf = build_scale(jumpy());
    ContractSpec down{0.05, 0.02, 1.0, 0.5, 0.005, ContractSide::Callable, std::nullopt};
    ContractSpec up{0.05, 0.08, 1.0, 1.5, 0.005, ContractSide::Putable, std::nullopt};
    const StoppingSolution a = option_leg_solution(sf, down);
    const StoppingSolution b = option_leg_solution(sf, up);
    CHECK(a.side == Side::BuyerUpCross);
    CHECK(b.side == Side::BuyerUpCross);
    CHECK(a.threshold == b.threshold);
    CHECK(a.case_tag == b.case_tag);
}
