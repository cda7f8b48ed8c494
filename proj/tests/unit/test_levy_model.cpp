#include <doctest.h>

#include <cmath>
#include <levycds/error.hpp>
#include <levycds/levy_model.hpp>

#include "oracles.hpp"

using namespace levycds;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::DomainError;
}

}  // namespace

TEST_CASE("build_model accepts well-formed inputs") {
    const LevyModel bm = build_model(0.01, 0.2, 0.0, {}, 0.03);
    CHECK(bm.sigma() == 0.2);
    CHECK_FALSE(bm.has_jumps());

    const LevyModel cp = build_model(1.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    CHECK(cp.bounded_variation());
}

TEST_CASE("build_model rejects bad inputs") {
    CHECK(code_of([] { build_model(-0.1, 0.0, 0.5, {{1.0, 2.0}}, 0.03); }) == ErrorCode::NegativeSubordinator);
    CHECK(code_of([] { build_model(0.1, 0.2, 1.0, {{0.5, 2.0}, {0.5, 1.0}}, 0.03); }) ==
          ErrorCode::NonIncreasingRates);
    CHECK(code_of([] { build_model(0.1, 0.2, 1.0, {{0.5, 1.0}, {0.4, 2.0}}, 0.03); }) ==
          ErrorCode::WeightsNotNormalized);
    CHECK(code_of([] { build_model(0.1, -0.2, 0.0, {}, 0.03); }) == ErrorCode::NegativeParameter);
    CHECK(code_of([] { build_model(0.1, 0.2, -1.0, {{1.0, 1.0}}, 0.03); }) == ErrorCode::NegativeParameter);
}

TEST_CASE("laplace exponent values") {
    const LevyModel bm = build_model(0.01, 0.2, 0.0, {}, 0.03);
    CHECK(laplace_exponent(bm, 1.0) == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(laplace_exponent(bm, 0.0) == 0.0);

    const LevyModel cp = build_model(1.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    CHECK(laplace_exponent(cp, 1.0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(laplace_exponent(cp, 0.0) == 0.0);
    CHECK(code_of([&] { cp.psi(-2.0); }) == ErrorCode::PoleEvaluation);
}

TEST_CASE("psi is convex right of the first pole") {
    const LevyModel m = build_model(0.1, 0.2, 1.0, {{0.3, 1.0}, {0.7, 4.0}}, 0.03);
    const double h = 1e-3;
    for (double s = -0.99; s < 5.0; s += 0.05) {
        CHECK(m.psi(s + h) - 2.0 * m.psi(s) + m.psi(s - h) >= -1e-8);
    }
}

TEST_CASE("risk-neutral calibration") {
    const LevyModel bm = calibrate_risk_neutral(build_model(0.5, 0.2, 0.0, {}, 0.03));
    CHECK(bm.drift() == doctest::Approx(0.01).epsilon(1e-12));

    const LevyModel cp = calibrate_risk_neutral(build_model(1.0, 0.0, 1.0, {{1.0, 2.0}}, 0.03),
                                                CalibrationFree::JumpRate);
    CHECK(cp.jump_rate() == doctest::Approx(2.91).epsilon(1e-12));
    CHECK(std::abs(cp.psi(1.0) - 0.03) < 1e-10);

    const LevyModel m = calibrate_risk_neutral(build_model(0.1, 0.2, 1.0, {{0.3, 1.0}, {0.7, 4.0}}, 0.03));
    const LevyModel again = calibrate_risk_neutral(m);
    CHECK(std::abs(again.drift() - m.drift()) <= 1e-12);
    CHECK(std::abs(m.psi(1.0) - 0.03) < 1e-10);

    // drift below r - sigma^2/2 would need a negative jump rate
    CHECK(code_of([] {
              calibrate_risk_neutral(build_model(0.005, 0.2, 1.0, {{1.0, 2.0}}, 0.03), CalibrationFree::JumpRate);
          }) == ErrorCode::NoAdmissibleSolution);
}

TEST_CASE("levy tail") {
    const LevyModel cp = build_model(1.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    CHECK(levy_tail(cp, 0.0) == doctest::Approx(0.5));
    CHECK(levy_tail(cp, 50.0) < 1e-40);
    CHECK(levy_tail(cp, std::log(2.0) / 2.0) == doctest::Approx(0.25).epsilon(1e-14));

    const LevyModel m = build_model(0.1, 0.2, 1.3, {{0.3, 1.0}, {0.7, 4.0}}, 0.03);
    for (double x : {0.0, 0.2, 1.0, 3.0}) {
        CHECK(std::abs(m.tail(x) - oracle::tail_quadrature(m, x)) < 1e-8);
    }
}

TEST_CASE("roots of psi(s) = r") {
    const LevyModel bm = build_model(0.01, 0.2, 0.0, {}, 0.03);
    const RootSet rb = find_roots(bm, 0.03);
    CHECK(rb.phi_r == doctest::Approx(1.0).epsilon(1e-14));
    REQUIRE(rb.negative_roots.size() == 1);
    CHECK(rb.negative_roots[0] == doctest::Approx(-1.5).epsilon(1e-14));
    CHECK(rb.degree == 2);

    const LevyModel m1 = calibrate_risk_neutral(build_model(0.1, 0.2, 1.0, {{1.0, 2.0}}, 0.03));
    const RootSet r1 = find_roots(m1, 0.03);
    CHECK(r1.degree == 3);
    CHECK(r1.negative_roots.size() == 2);
    CHECK(r1.phi_r >= 1.0 - 1e-12);

    const LevyModel m3 = calibrate_risk_neutral(
        build_model(0.1, 0.0, 1.0, {{0.2, 0.5}, {0.3, 2.0}, {0.5, 9.0}}, 0.03));
    const RootSet r3 = find_roots(m3, 0.03);
    CHECK(r3.degree == 4);
    CHECK(r3.phi_r == doctest::Approx(1.0).epsilon(1e-10));
    for (double z : r3.all()) CHECK(std::abs(m3.psi(z) - 0.03) < 1e-10);
    // one root per interlacing interval
    CHECK(r3.negative_roots[0] < -2.0);
    CHECK(r3.negative_roots[0] > -9.0);
    CHECK(r3.negative_roots[1] < -0.5);
    CHECK(r3.negative_roots[1] > -2.0);
    CHECK(r3.negative_roots[2] > -0.5);
}

TEST_CASE("cleared polynomial has the expected degree") {
    const LevyModel m = build_model(0.1, 0.2, 1.0, {{0.3, 1.0}, {0.7, 4.0}}, 0.03);
    CHECK(cleared_polynomial(m, 0.03).size() == 5);
    const LevyModel b = build_model(0.1, 0.0, 1.0, {{0.3, 1.0}, {0.7, 4.0}}, 0.03);
    CHECK(cleared_polynomial(b, 0.03).size() == 4);
}
