#pragma once

#include <map>
#include <string>
#include <utility>

#include "levycds/montecarlo.hpp"
#include "levycds/optimal_stopping.hpp"

namespace levycds {

/// Bracket for a finite-maturity option leg built from the perpetual value
/// and three simulated correction terms.
struct FiniteApprox {
    double center = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double center_se = 0.0;
    double lower_se = 0.0;
    double upper_se = 0.0;
    /// premium_term = E[1{theta >= T} int_T^theta e^{-rt} p_check dt],
    /// fee_term = E[1{theta >= T} e^{-rT} gamma],
    /// protection_term = E[1{theta >= T} e^{-r theta} a_check].
    std::map<std::string, MCEstimate> mc_terms;
};

/// Buyer side: center = v(x) - premium_term, lower = center,
/// upper = center + fee_term + protection_term.
FiniteApprox approx_v_bar(const StoppingSolution& buyer, double x, double T, const PathSimConfig& cfg);

/// Seller side: center = u(x) + premium_term,
/// lower = center - premium_term - protection_term, upper = center + fee_term.
FiniteApprox approx_u_bar(const StoppingSolution& seller, double x, double T, const PathSimConfig& cfg);

/// Level C* with p_check = a_check * Pi(C*, inf); 0 when p_check >= a_check * lambda
/// (including lambda = 0), +inf when p_check = 0.
double solve_C_star(const LevyModel& model, const SwitchTriplet& trip);

struct BoundaryEndpoints {
    double long_maturity = 0.0;   // limit as T grows
    double short_maturity = 0.0;  // limit as T shrinks
};

struct BoundaryReport {
    BoundaryEndpoints buyer;
    BoundaryEndpoints seller;
    double C_star = 0.0;
    double gamma = 0.0;
    /// With a positive fee, exercising close to maturity is never optimal.
    bool no_exercise_near_maturity = false;

    /// Heuristic monotone boundaries in T. With gamma = 0 they are linear in
    /// exp(-T) between the endpoints; with gamma > 0 they are B*/(1 - exp(-T))
    /// and A*(1 - exp(-T)). Not optimal; meant as policy templates.
    double buyer_boundary(double T) const;
    double seller_boundary(double T) const;
};

BoundaryReport boundary_report(const StoppingSolution& buyer, const StoppingSolution& seller,
                               double C_star, double gamma);

/// alpha * Pi(x, inf).
double short_maturity_spread(const LevyModel& model, double x, double alpha);
/// (alpha * Pi(x, inf), alpha_hat * Pi(x, inf)): the two possible limits with
/// a zero fee.
std::pair<double, double> short_maturity_spread_candidates(const LevyModel& model, double x,
                                                           double alpha, double alpha_hat);

/// Option-leg contract whose leg cash flows are exactly those of the buyer
/// (h) or seller (g) problem with this triplet.
ContractSpec option_leg_spec(const SwitchTriplet& trip, Side side);

/// Value of `policy` truncated at T for the finite-maturity problem of
/// (trip, side).
MCEstimate policy_value_finite(const LevyModel& model, double x, double T, const Policy& policy,
                               const SwitchTriplet& trip, Side side, const PathSimConfig& cfg);

}  // namespace levycds
