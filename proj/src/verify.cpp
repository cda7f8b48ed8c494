#include "levycds/verify.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "levycds/error.hpp"
#include "levycds/finite_maturity.hpp"

namespace levycds {

namespace {

struct Suite {
    std::vector<CheckResult> out;

    // fn returns the worst residual; passes when it is <= tol.
    void check(const std::string& name, double tol, const std::function<double()>& fn) {
        CheckResult c{name, false, 0.0, tol, {}};
        try {
            c.value = fn();
            c.passed = std::isfinite(c.value) && c.value <= tol;
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        out.push_back(std::move(c));
    }

    void skip(const std::string& name, const std::string& why) {
        out.push_back({name, true, 0.0, 0.0, "skipped: " + why});
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

std::vector<double> grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * (i + 1) / n;
    return g;
}

// Rounding scale of h + g: the largest intermediate term of either payoff.
double payoff_rounding_unit(const ScaleFunction& sf, double y, const SwitchTriplet& t) {
    const double pr = std::abs(t.p_check / sf.rate());
    const double terms = pr + t.gamma + std::abs(pr + t.a_check) * sf.zeta(y);
    return std::numeric_limits<double>::epsilon() * std::max(terms, 1e-300);
}

double z_score(double analytic, const MCEstimate& e) {
    return e.se > 0.0 ? std::abs(analytic - e.mean) / e.se : std::abs(analytic - e.mean) * 1e12;
}

}  // namespace

std::vector<CheckResult> verify_suite(const LevyModel& model, const VerifyOptions& opt) {
    Suite s;
    const double r = model.rate();
    const ScaleFunction sf = build_scale(model, r);
    const double x = opt.x;

    s.check("root_residuals", 1e-10, [&] {
        double worst = 0.0;
        for (double z : sf.roots().all()) worst = std::max(worst, std::abs(model.psi(z) - r));
        return worst;
    });

    s.check("laplace_selfcheck", 1e-10, [&] {
        double worst = 0.0;
        for (int i = 1; i <= 20; ++i) worst = std::max(worst, sf.laplace_selfcheck(sf.phi() + 0.5 * i));
        return worst;
    });

    s.check("boundary_values", 1e-8, [&] {
        const bool bv = model.bounded_variation();
        const double w0 = bv ? 1.0 / model.drift() : 0.0;
        const double wp0 = bv ? (r + model.jump_rate()) / (model.drift() * model.drift())
                              : 2.0 / (model.sigma() * model.sigma());
        double sum_c = 0.0, sum_cz = 0.0;
        for (std::size_t j = 0; j < sf.coefficients().size(); ++j) {
            sum_c += sf.coefficients()[j];
            sum_cz += sf.coefficients()[j] * sf.exponents()[j];
        }
        return std::max(rel(sum_c, w0), rel(sum_cz, wp0));
    });

    s.check("Z_quadrature", 1e-8, [&] {
        double worst = 0.0;
        for (double y : {0.1, 0.5, 1.0, 2.0, 4.0}) {
            const double q = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
                [&](double t) { return sf.W(t); }, 0.0, y, 10, 1e-13);
            worst = std::max(worst, rel(sf.Z(y) - 1.0, r * q));
        }
        return worst;
    });

    s.check("W_log_derivative_monotone", 1e-10, [&] {
        double worst = 0.0, prev = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 200; ++i) {
            const double y = 1e-3 * std::pow(1e4, i / 199.0);
            const double d = sf.W_log_derivative(y);
            worst = std::max(worst, d - prev);
            prev = d;
        }
        return worst;
    });

    SpreadTemplate tpl = opt.tpl;
    tpl.side = ContractSide::Callable;
    const ContractSpec callable = tpl.at(perpetual_spread(sf, x, tpl.alpha));
    SwitchTriplet trip;
    try {
        trip = normalize_triplet(callable.p_check(), callable.a_check(), callable.gamma);
    } catch (const Error& e) {
        s.out.push_back({"contract", false, 0.0, 0.0, e.what()});
        return s.out;
    }
    const StoppingSolution buyer = solve_B_star(sf, trip);
    const StoppingSolution seller = solve_A_star(sf, trip);

    if (buyer.case_tag == CaseTag::Interior) {
        const double B = buyer.threshold;
        s.check("buyer_fit", 1e-9, [&] {
            return std::max(buyer.fit_residual, std::abs(delta_B(sf, B * (1.0 - 1e-12), B, trip)));
        });
        if (!model.bounded_variation()) {
            s.check("buyer_smooth_fit", 1e-8, [&] {
                return std::abs(value_v_prime(buyer, B * (1.0 - 1e-12)) - value_v_prime(buyer, B * (1.0 + 1e-12)));
            });
        }
    } else {
        s.skip("buyer_fit", std::string("case ") + to_string(buyer.case_tag));
    }

    if (seller.case_tag == CaseTag::Interior) {
        s.check("seller_fit", 1e-8, [&] {
            const double A = seller.threshold;
            const double xa = A * (1.0 + 1e-12);
            double worst = std::abs(delta_A(sf, xa, A, trip));
            if (!model.bounded_variation()) worst = std::max(worst, std::abs(delta_A_prime(sf, xa, A, trip)));
            return worst;
        });
    } else {
        s.skip("seller_fit", std::string("case ") + to_string(seller.case_tag));
    }

    s.check("domination", 1e-10, [&] {
        double hi = 3.0 * x;
        if (std::isfinite(buyer.threshold)) hi = std::max(hi, 2.0 * buyer.threshold);
        if (std::isfinite(seller.threshold)) hi = std::max(hi, 2.0 * seller.threshold);
        double worst = 0.0;
        for (double y : grid(0.0, hi, 500)) {
            worst = std::max(worst, payoff_h(sf, y, trip) - value_v(buyer, y));
            worst = std::max(worst, payoff_g(sf, y, trip) - value_u(seller, y));
        }
        return worst;
    });

    s.check("payoff_sum_ulps", 2.0, [&] {
        double worst = 0.0;
        for (double y : {-1.0, 0.0, 0.3, 1.5, 7.0}) {
            const double target = y > 0.0 ? -2.0 * trip.gamma : 0.0;
            const double h = payoff_h(sf, y, trip), g = payoff_g(sf, y, trip);
            const double unit = payoff_rounding_unit(sf, y, trip);
            worst = std::max(worst, std::abs(h + g - target) / unit);
        }
        return worst;
    });

    s.check("parity", 1e-10 * callable.alpha, [&] {
        const auto [a, b] = parity_check(sf, x, callable);
        return std::max(std::abs(a), std::abs(b));
    });

    s.check("spread_linearity", 1e-12, [&] {
        const double p1 = perpetual_spread(sf, x, 1.0);
        return std::abs(perpetual_spread(sf, x, 2.5) - 2.5 * p1) / p1;
    });

    if (opt.tpl.q < 1.0 && opt.tpl.alpha_hat <= opt.tpl.alpha) {
        s.check("spread_ordering", 0.0, [&] {
            SpreadTemplate put = opt.tpl;
            SpreadTemplate call = opt.tpl;
            call.side = ContractSide::Callable;
            put.side = ContractSide::Putable;
            const double pc = credit_spread(sf, x, call).p_star;
            const double pp = credit_spread(sf, x, put).p_star;
            const double pv = perpetual_spread(sf, x, opt.tpl.alpha);
            return std::max(0.0, std::max(pv - pc, pp - pv));
        });
    } else {
        s.skip("spread_ordering", "template is not a step-down");
    }

    if (buyer.case_tag == CaseTag::Interior && seller.case_tag == CaseTag::Interior && trip.a_check > 0.0) {
        s.check("C_star_above_A_star", 0.0, [&] {
            return std::max(0.0, seller.threshold - solve_C_star(model, trip));
        });
    }

    if (!opt.run_mc) return s.out;

    s.check("mc_zeta", 3.0, [&] {
        const auto est = estimate_default_functionals(model, x, opt.mc);
        return z_score(sf.zeta(x), est.at("zeta"));
    });

    const double A = seller.case_tag == CaseTag::Interior ? seller.threshold : 0.5 * x;
    if (A < x && model.has_jumps()) {
        s.check("mc_gamma", 3.0, [&] { return z_score(big_Gamma(sf, x, A), estimate_gamma(model, x, A, opt.mc)); });
    }

    s.check("mc_contract_V", 3.0, [&] {
        const Policy pol = policy_from(option_leg_solution(sf, callable));
        return z_score(value_V(sf, x, callable), evaluate_policy(model, x, callable, pol, opt.mc));
    });

    s.check("mc_contract_U", 3.0, [&] {
        ContractSpec putable = callable;
        putable.side = ContractSide::Putable;
        const Policy pol = policy_from(option_leg_solution(sf, putable));
        return z_score(value_U(sf, x, putable), evaluate_policy(model, x, putable, pol, opt.mc));
    });

    return s.out;
}

}  // namespace levycds
