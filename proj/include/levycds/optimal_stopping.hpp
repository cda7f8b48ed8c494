#pragma once

#include <limits>

#include "levycds/cds_pricing.hpp"

namespace levycds {

enum class Side { BuyerUpCross, SellerDownCross };
enum class CaseTag { Interior, Immediate, Never, CreepAtZero };

const char* to_string(Side side);
const char* to_string(CaseTag tag);

inline constexpr double kInfiniteThreshold = std::numeric_limits<double>::infinity();

/// Optimal threshold and the data needed to evaluate the value function.
///
/// Buyer: exercise at the first up-crossing of `threshold` (B*); Immediate
/// means B* = 0, Never means B* = +inf.
/// Seller: exercise at the first down-crossing of `threshold` (A*) before
/// default; CreepAtZero means A* = 0, i.e. exercise only when X creeps to 0.
/// Immediate for the seller carries threshold +inf (the fee and premium
/// reduction are both zero, so any x > 0 is already in the stopping region).
struct StoppingSolution {
    Side side = Side::BuyerUpCross;
    CaseTag case_tag = CaseTag::Never;
    double threshold = kInfiniteThreshold;
    SwitchTriplet trip;
    ScaleFunction sf;
    double fit_residual = 0.0;
    int iterations = 0;
};

/// varrho(B) = (p_check + a_check r) W(B) - (W'(B)/W(B)) G(B), evaluated in
/// the equivalent form (p_check/r + a_check) zeta'(B) + h(B) W'(B)/W(B),
/// which stays finite for large B.
double varrho(const ScaleFunction& sf, double B, const SwitchTriplet& trip);
/// varrho(0+); -inf when sigma > 0.
double varrho_right0(const ScaleFunction& sf, const SwitchTriplet& trip);

StoppingSolution solve_B_star(const ScaleFunction& sf, const SwitchTriplet& trip);
double value_v(const StoppingSolution& sol, double x);
double value_v_prime(const StoppingSolution& sol, double x);

/// v_B(x) - h(x) on (0, B); zero elsewhere.
double delta_B(const ScaleFunction& sf, double x, double B, const SwitchTriplet& trip);

StoppingSolution solve_A_star(const ScaleFunction& sf, const SwitchTriplet& trip);
double value_u(const StoppingSolution& sol, double x);
double value_u_prime(const StoppingSolution& sol, double x);

/// u_A(x) - g(x) for x > A; zero for x <= A. A >= 0.
double delta_A(const ScaleFunction& sf, double x, double A, const SwitchTriplet& trip);
double delta_A_prime(const ScaleFunction& sf, double x, double A, const SwitchTriplet& trip);

/// Value of the threshold strategy for an arbitrary (not necessarily optimal)
/// threshold, for comparisons against the optimum.
double strategy_value_v(const ScaleFunction& sf, double x, double B, const SwitchTriplet& trip);
double strategy_value_u(const ScaleFunction& sf, double x, double A, const SwitchTriplet& trip);

/// Dispatches on sol.side.
double value(const StoppingSolution& sol, double x);

}  // namespace levycds
