#include "levycds/finite_maturity.hpp"

#include <cmath>
#include <limits>

#include "levycds/detail/numerics.hpp"
#include "levycds/error.hpp"

namespace levycds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Per path: premium, fee and protection tails, then the buyer's center and
// upper corrections and the seller's center, lower and upper corrections.
std::vector<MCEstimate> tail_terms(const LevyModel& model, double x, double T,
                                   const SwitchTriplet& t, const PathSimConfig& cfg) {
    validate(cfg, model.rate(), true);
    if (!(T > 0.0)) throw Error(ErrorCode::DomainError, "maturity must be > 0");
    const double r = model.rate();
    const double H = cfg.horizon;
    return estimate_path_functionals(model, cfg, 8, [&](std::uint64_t id, std::span<double> v) {
        PathEngine eng(model, cfg, id, x);
        const ExitEvent e = eng.run_to_exit(0.0, kInf, H);
        const bool dead = e.kind == ExitKind::Lower;
        double prem = 0.0, fee = 0.0, prot = 0.0;
        if (!dead || e.t >= T) {
            const double end = dead ? e.t : H;
            prem = t.p_check * (std::exp(-r * T) - std::exp(-r * end)) / r;
            fee = t.gamma * std::exp(-r * T);
            prot = dead ? t.a_check * std::exp(-r * e.t) : 0.0;
        }
        v[0] = prem;
        v[1] = fee;
        v[2] = prot;
        v[3] = -prem;
        v[4] = -prem + fee + prot;
        v[5] = prem;
        v[6] = -prot;
        v[7] = prem + fee;
        return !dead;
    });
}

std::map<std::string, MCEstimate> named_terms(const std::vector<MCEstimate>& est) {
    return {{"premium_term", est[0]}, {"fee_term", est[1]}, {"protection_term", est[2]}};
}

}  // namespace

FiniteApprox approx_v_bar(const StoppingSolution& buyer, double x, double T, const PathSimConfig& cfg) {
    if (buyer.side != Side::BuyerUpCross) throw Error(ErrorCode::DomainError, "needs a buyer solution");
    const auto est = tail_terms(buyer.sf.model(), x, T, buyer.trip, cfg);
    const double v = value_v(buyer, x);
    FiniteApprox out;
    out.center = v + est[3].mean;
    out.center_se = est[3].se;
    out.lower = out.center;
    out.lower_se = out.center_se;
    out.upper = v + est[4].mean;
    out.upper_se = est[4].se;
    out.mc_terms = named_terms(est);
    return out;
}

FiniteApprox approx_u_bar(const StoppingSolution& seller, double x, double T, const PathSimConfig& cfg) {
    if (seller.side != Side::SellerDownCross) throw Error(ErrorCode::DomainError, "needs a seller solution");
    const auto est = tail_terms(seller.sf.model(), x, T, seller.trip, cfg);
    const double u = value_u(seller, x);
    FiniteApprox out;
    out.center = u + est[5].mean;
    out.center_se = est[5].se;
    out.lower = u + est[6].mean;
    out.lower_se = est[6].se;
    out.upper = u + est[7].mean;
    out.upper_se = est[7].se;
    out.mc_terms = named_terms(est);
    return out;
}

double solve_C_star(const LevyModel& model, const SwitchTriplet& t) {
    if (!(t.a_check > 0.0)) throw Error(ErrorCode::DomainError, "C* needs a_check > 0");
    if (t.p_check >= t.a_check * model.jump_rate()) return 0.0;
    if (t.p_check <= 0.0) return kInf;
    const auto& ph = model.phases();
    const double level = t.p_check / t.a_check;
    if (ph.size() == 1) {
        return std::log(model.jump_rate() * ph[0].weight / level) / ph[0].rate;
    }
    // Pi(C, inf) <= lambda exp(-eta_1 C) bounds the root from above.
    const double hi = std::log(model.jump_rate() / level) / ph.front().rate * (1.0 + 1e-12) + 1e-12;
    return detail::bisect([&](double c) { return model.tail(c) - level; }, 0.0, hi, /*increasing=*/false);
}

double BoundaryReport::buyer_boundary(double T) const {
    const double e = std::exp(-T);
    if (gamma > 0.0) return buyer.long_maturity / (1.0 - e);
    return buyer.long_maturity + (buyer.short_maturity - buyer.long_maturity) * e;
}

double BoundaryReport::seller_boundary(double T) const {
    const double e = std::exp(-T);
    if (gamma > 0.0) return seller.long_maturity * (1.0 - e);
    return seller.long_maturity + (seller.short_maturity - seller.long_maturity) * e;
}

BoundaryReport boundary_report(const StoppingSolution& buyer, const StoppingSolution& seller,
                               double C_star, double gamma) {
    BoundaryReport rep;
    rep.C_star = C_star;
    rep.gamma = gamma;
    rep.no_exercise_near_maturity = gamma > 0.0;
    rep.buyer.long_maturity = buyer.threshold;
    rep.seller.long_maturity = seller.threshold;
    if (gamma > 0.0) {
        rep.buyer.short_maturity = kInf;
        rep.seller.short_maturity = 0.0;
    } else {
        rep.buyer.short_maturity = C_star;
        rep.seller.short_maturity = C_star;
    }
    return rep;
}

double short_maturity_spread(const LevyModel& model, double x, double alpha) {
    if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "short-maturity spread needs x > 0");
    return alpha * model.tail(x);
}

std::pair<double, double> short_maturity_spread_candidates(const LevyModel& model, double x,
                                                           double alpha, double alpha_hat) {
    return {short_maturity_spread(model, x, alpha), short_maturity_spread(model, x, alpha_hat)};
}

ContractSpec option_leg_spec(const SwitchTriplet& t, Side side) {
    ContractSpec s;
    s.p = t.p_check;
    s.p_hat = 0.0;
    s.alpha = 1.0 + t.a_check;
    s.alpha_hat = 1.0;
    s.gamma = t.gamma;
    s.side = side == Side::BuyerUpCross ? ContractSide::Callable : ContractSide::Putable;
    return s;
}

MCEstimate policy_value_finite(const LevyModel& model, double x, double T, const Policy& policy,
                               const SwitchTriplet& trip, Side side, const PathSimConfig& cfg) {
    if (!(T > 0.0)) throw Error(ErrorCode::DomainError, "maturity must be > 0");
    return evaluate_policy(model, x, option_leg_spec(trip, side), policy, cfg, T, Valuation::OptionLeg);
}

}  // namespace levycds
