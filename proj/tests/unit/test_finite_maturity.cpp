#include <doctest.h>

#include <cmath>
#include <levycds/finite_maturity.hpp>

using namespace levycds;

namespace {

LevyModel brownian() { return build_model(0.01, 0.2, 0.0, {}, 0.03); }

LevyModel jumpy() {
    return calibrate_risk_neutral(build_model(0.1, 0.2, 1.2, {{0.25, 0.8}, {0.75, 3.5}}, 0.03));
}

PathSimConfig small(std::int64_t n = 10000) {
    PathSimConfig c;
    c.n_paths = n;
    c.threads = 0;
    return c;
}

}  // namespace

TEST_CASE("C*") {
    CHECK(solve_C_star(brownian(), normalize_triplet(0.01, 0.5, 0.0)) == 0.0);
    const LevyModel m = build_model(1.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    const SwitchTriplet t = normalize_triplet(0.5 * 0.5 / 2.0, 0.5, 0.0);
    CHECK(solve_C_star(m, t) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-12));
    CHECK(solve_C_star(m, normalize_triplet(0.3, 0.5, 0.0)) == 0.0);

    const LevyModel j = jumpy();
    const SwitchTriplet tj = normalize_triplet(0.01, 0.5, 0.005);
    const double c = solve_C_star(j, tj);
    CHECK(j.tail(c) * tj.a_check == doctest::Approx(tj.p_check).epsilon(1e-10));
    const StoppingSolution a = solve_A_star(build_scale(j), tj);
    REQUIRE(a.case_tag == CaseTag::Interior);
    CHECK(c > a.threshold);
}

TEST_CASE("boundary endpoints") {
    const ScaleFunction sf = build_scale(jumpy());
    const SwitchTriplet t = normalize_triplet(0.03, 0.5, 0.005);
    const StoppingSolution b = solve_B_star(sf, t);
    const StoppingSolution a = solve_A_star(sf, t);
    const BoundaryReport fee = boundary_report(b, a, 1.0, 0.005);
    CHECK(fee.buyer.long_maturity == b.threshold);
    CHECK(std::isinf(fee.buyer.short_maturity));
    CHECK(fee.seller.short_maturity == 0.0);
    CHECK(fee.no_exercise_near_maturity);

    const BoundaryReport free = boundary_report(b, a, 1.0, 0.0);
    CHECK(free.buyer.short_maturity == 1.0);
    CHECK(free.seller.short_maturity == 1.0);
    CHECK(free.buyer_boundary(60.0) == doctest::Approx(b.threshold));

    const LevyModel bm = brownian();
    const SwitchTriplet t0 = normalize_triplet(0.002, 0.5, 0.0);
    const ScaleFunction sb = build_scale(bm);
    const BoundaryReport rep = boundary_report(solve_B_star(sb, t0), solve_A_star(sb, t0), solve_C_star(bm, t0), 0.0);
    CHECK(rep.buyer.short_maturity == 0.0);
    CHECK(rep.seller.short_maturity == 0.0);
}

TEST_CASE("short-maturity spread") {
    CHECK(short_maturity_spread(brownian(), 1.0, 1.0) == 0.0);
    const LevyModel m = build_model(1.0, 0.0, 0.5, {{1.0, 2.0}}, 0.03);
    CHECK(short_maturity_spread(m, std::log(2.0) / 2.0, 1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(short_maturity_spread(m, 0.4, 3.0) == doctest::Approx(3.0 * short_maturity_spread(m, 0.4, 1.0)));
    const auto [a, b] = short_maturity_spread_candidates(m, 0.4, 1.0, 0.5);
    CHECK(b == doctest::Approx(0.5 * a));
}

TEST_CASE("finite-maturity brackets") {
    const LevyModel m = jumpy();
    const ScaleFunction sf = build_scale(m);
    const SwitchTriplet t = normalize_triplet(0.03, 0.5, 0.0);
    const StoppingSolution b = solve_B_star(sf, t);
    const StoppingSolution a = solve_A_star(sf, t);
    const FiniteApprox v = approx_v_bar(b, 1.5, 5.0, small());
    CHECK(v.lower == v.center);
    CHECK(v.upper - v.lower == doctest::Approx(v.mc_terms.at("protection_term").mean).epsilon(1e-9));
    const FiniteApprox u = approx_u_bar(a, 1.5, 5.0, small());
    CHECK(u.upper == u.center);
    CHECK(u.lower <= u.center);

    const MCEstimate pv = policy_value_finite(m, 1.5, 5.0, policy_from(b), t, b.side, small());
    CHECK(pv.mean >= v.lower - 3.0 * std::hypot(v.lower_se, pv.se));
    CHECK(pv.mean <= v.upper + 3.0 * std::hypot(v.upper_se, pv.se));
}

TEST_CASE("far from default the buyer error bound is small") {
    const LevyModel m = brownian();
    const SwitchTriplet t = normalize_triplet(0.03, 0.5, 0.0);
    const StoppingSolution b = solve_B_star(build_scale(m), t);
    const FiniteApprox v = approx_v_bar(b, 10.0, 5.0, small(4000));
    CHECK(v.upper - v.lower < 1e-3);
}
