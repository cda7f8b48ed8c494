#include "levycds/optimal_stopping.hpp"

#include <cmath>

#include "levycds/detail/numerics.hpp"
#include "levycds/error.hpp"

namespace levycds {

namespace {

constexpr double kBracketCap = 1e6;

double slope_sum(const ScaleFunction& sf, const SwitchTriplet& t) {
    return t.p_check / sf.rate() + t.a_check;
}

// W(x)/W(B) for 0 <= x <= B without overflow.
double w_ratio(const ScaleFunction& sf, double x, double B) {
    if (B <= 50.0) return sf.W(x) / sf.W(B);
    return std::exp(sf.phi() * (x - B)) * sf.W_scaled(x) / sf.W_scaled(B);
}

}  // namespace

const char* to_string(Side side) {
    return side == Side::BuyerUpCross ? "BuyerUpCross" : "SellerDownCross";
}

const char* to_string(CaseTag tag) {
    switch (tag) {
        case CaseTag::Interior: return "Interior";
        case CaseTag::Immediate: return "Immediate";
        case CaseTag::Never: return "Never";
        case CaseTag::CreepAtZero: return "CreepAtZero";
    }
    return "Unknown";
}

double varrho(const ScaleFunction& sf, double B, const SwitchTriplet& t) {
    if (B <= 0.0) return varrho_right0(sf, t);
    return slope_sum(sf, t) * sf.zeta_prime(B) + payoff_h(sf, B, t) * sf.W_log_derivative(B);
}

double varrho_right0(const ScaleFunction& sf, const SwitchTriplet& t) {
    const LevyModel& m = sf.model();
    if (m.sigma() > 0.0) return -std::numeric_limits<double>::infinity();
    const double r = sf.rate();
    return (t.p_check - r * t.gamma - (t.a_check + t.gamma) * m.jump_rate()) / m.drift();
}

StoppingSolution solve_B_star(const ScaleFunction& sf, const SwitchTriplet& t) {
    StoppingSolution sol{Side::BuyerUpCross, CaseTag::Never, kInfiniteThreshold, t, sf, 0.0, 0};
    if (t.gamma >= t.p_check / sf.rate()) return sol;

    if (varrho_right0(sf, t) >= 0.0) {
        sol.case_tag = CaseTag::Immediate;
        sol.threshold = 0.0;
        return sol;
    }

    auto f = [&](double B) { return varrho(sf, B, t); };
    double lo = 0.0;
    double hi = 1.0;
    while (f(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > kBracketCap) {
            throw Error(ErrorCode::BracketExhausted, "varrho has no sign change below 1e6");
        }
    }
    int it = 0;
    const double b = detail::bisect(f, lo, hi, /*increasing=*/true, &it);
    sol.case_tag = CaseTag::Interior;
    sol.threshold = b;
    sol.iterations = it;
    const double scale = (t.p_check + t.a_check * sf.rate()) * sf.W(b);
    sol.fit_residual = std::isfinite(scale) ? std::abs(f(b)) / scale : 0.0;
    return sol;
}

double strategy_value_v(const ScaleFunction& sf, double x, double B, const SwitchTriplet& t) {
    if (x <= 0.0) return 0.0;
    if (x >= B) return payoff_h(sf, x, t);
    return payoff_h(sf, B, t) * w_ratio(sf, x, B);
}

double value_v(const StoppingSolution& sol, double x) {
    if (x <= 0.0) return 0.0;
    switch (sol.case_tag) {
        case CaseTag::Never: return 0.0;
        case CaseTag::Immediate: return payoff_h(sol.sf, x, sol.trip);
        default: return strategy_value_v(sol.sf, x, sol.threshold, sol.trip);
    }
}

double value_v_prime(const StoppingSolution& sol, double x) {
    const ScaleFunction& sf = sol.sf;
    if (x <= 0.0 || sol.case_tag == CaseTag::Never) return 0.0;
    const double b = sol.case_tag == CaseTag::Immediate ? 0.0 : sol.threshold;
    if (x >= b) return -slope_sum(sf, sol.trip) * sf.zeta_prime(x);
    return payoff_h(sf, b, sol.trip) * sf.W_prime(x) / sf.W(b);
}

double delta_B(const ScaleFunction& sf, double x, double B, const SwitchTriplet& t) {
    if (x <= 0.0 || x >= B) return 0.0;
    return payoff_h(sf, B, t) * w_ratio(sf, x, B) - payoff_h(sf, x, t);
}

StoppingSolution solve_A_star(const ScaleFunction& sf, const SwitchTriplet& t) {
    StoppingSolution sol{Side::SellerDownCross, CaseTag::Never, 0.0, t, sf, 0.0, 0};
    if (payoff_g_right0(sf, t) <= 0.0) return sol;

    const double r = sf.rate();
    const double target = t.gamma * r + t.p_check;
    const double k = target / (t.a_check - t.gamma);
    if (k <= 0.0) {
        sol.case_tag = CaseTag::Immediate;
        sol.threshold = kInfiniteThreshold;
        return sol;
    }

    const LevyModel& m = sf.model();
    const double rho0 = rho(sf, 0.0);
    if (rho0 <= k) {
        if (m.sigma() == 0.0) {
            throw Error(ErrorCode::InconsistentBoundedVariation,
                        "seller threshold collapsed to zero without a diffusion component");
        }
        sol.case_tag = CaseTag::CreepAtZero;
        sol.threshold = 0.0;
        return sol;
    }

    double a = 0.0;
    const auto& ph = m.phases();
    if (ph.size() == 1) {
        const double phi = sf.phi();
        a = std::log(m.jump_rate() * ph[0].weight * phi / ((ph[0].rate + phi) * k)) / ph[0].rate;
    } else {
        // rho(A) <= exp(-eta_1 A) rho(0) bounds the root from above.
        const double hi = std::log(rho0 / k) / ph.front().rate * (1.0 + 1e-12) + 1e-12;
        a = detail::bisect([&](double A) { return rho(sf, A) - k; }, 0.0, hi,
                           /*increasing=*/false, &sol.iterations);
    }
    sol.case_tag = CaseTag::Interior;
    sol.threshold = a;
    sol.fit_residual = std::abs((t.a_check - t.gamma) * rho(sf, a) - target) / target;
    return sol;
}

double delta_A(const ScaleFunction& sf, double x, double A, const SwitchTriplet& t) {
    if (x <= A) return 0.0;
    const double pr = t.p_check / sf.rate();
    return (t.gamma + pr) * (1.0 - sf.zeta(x - A)) - (t.a_check - t.gamma) * big_Gamma(sf, x, A);
}

double delta_A_prime(const ScaleFunction& sf, double x, double A, const SwitchTriplet& t) {
    if (x <= A) return 0.0;
    const double pr = t.p_check / sf.rate();
    return -(t.gamma + pr) * sf.zeta_prime(x - A) - (t.a_check - t.gamma) * big_Gamma_prime(sf, x, A);
}

double strategy_value_u(const ScaleFunction& sf, double x, double A, const SwitchTriplet& t) {
    if (x <= 0.0) return 0.0;
    if (x <= A) return payoff_g(sf, x, t);
    const double pr = t.p_check / sf.rate();
    return -(t.gamma + pr) * sf.zeta(x - A) + slope_sum(sf, t) * sf.zeta(x) -
           (t.a_check - t.gamma) * big_Gamma(sf, x, A);
}

double value_u(const StoppingSolution& sol, double x) {
    if (x <= 0.0) return 0.0;
    switch (sol.case_tag) {
        case CaseTag::Never: return 0.0;
        case CaseTag::Immediate: return payoff_g(sol.sf, x, sol.trip);
        default: return strategy_value_u(sol.sf, x, sol.threshold, sol.trip);
    }
}

double value_u_prime(const StoppingSolution& sol, double x) {
    const ScaleFunction& sf = sol.sf;
    if (x <= 0.0 || sol.case_tag == CaseTag::Never) return 0.0;
    const double k = slope_sum(sf, sol.trip);
    if (sol.case_tag == CaseTag::Immediate || x <= sol.threshold) return k * sf.zeta_prime(x);
    return k * sf.zeta_prime(x) + delta_A_prime(sf, x, sol.threshold, sol.trip);
}

double value(const StoppingSolution& sol, double x) {
    return sol.side == Side::BuyerUpCross ? value_v(sol, x) : value_u(sol, x);
}

}  // namespace levycds
