#pragma once

#include <optional>
#include <utility>

#include "levycds/optimal_stopping.hpp"

namespace levycds {

enum class ContractSide { Callable, Putable };
enum class ContractKind { Vanilla, Cancellation, StepDown, StepUp };

const char* to_string(ContractSide side);
const char* to_string(ContractKind kind);

/// Default swap with a one-time switch right. Callable: the protection buyer
/// holds the right. Putable: the seller holds it. Exercising changes the
/// premium from p to p_hat and the default payment from alpha to alpha_hat,
/// against a fee gamma paid by the exercising party.
struct ContractSpec {
    double p = 0.0;
    double p_hat = 0.0;
    double alpha = 1.0;
    double alpha_hat = 1.0;
    double gamma = 0.0;
    ContractSide side = ContractSide::Callable;
    std::optional<double> maturity;

    double p_check() const noexcept { return p - p_hat; }
    double a_check() const noexcept { return alpha - alpha_hat; }
};

/// Validates field ranges and the same-direction rule. Throws InvalidContract
/// or NegativeParameter.
void validate(const ContractSpec& spec);

/// Vanilla when nothing switches (any fee), Cancellation when both
/// post-exercise legs are zero, otherwise StepDown or StepUp.
ContractKind classify(const ContractSpec& spec);

/// The optimal stopping problem behind the option leg of `spec`: the buyer
/// (h) problem or the seller (g) problem, depending on side and orientation.
StoppingSolution option_leg_solution(const ScaleFunction& sf, const ContractSpec& spec);

/// Option leg value at x, dispatching on the solution's side.
double option_leg_value(const ScaleFunction& sf, double x, const ContractSpec& spec);

/// V = C(x; p, alpha) + option leg, for a callable spec.
double value_V(const ScaleFunction& sf, double x, const ContractSpec& spec);
/// U = -C(x; p, alpha) + option leg, for a putable spec.
double value_U(const ScaleFunction& sf, double x, const ContractSpec& spec);
/// value_V or value_U according to spec.side.
double contract_value(const ScaleFunction& sf, double x, const ContractSpec& spec);

/// The putable contract with p_hat -> 2p - p_hat, alpha_hat -> 2alpha - alpha_hat
/// (or the callable one when spec is putable). Throws MirrorInadmissible.
ContractSpec mirror_spec(const ContractSpec& spec);

/// Residuals of V - U(mirror) = 2C and V + U(mirror) = 2 * option leg of V,
/// taking spec as the callable contract.
std::pair<double, double> parity_check(const ScaleFunction& sf, double x, const ContractSpec& spec);

/// Contract family with p free: p_hat = q p, alpha_hat and gamma fixed.
struct SpreadTemplate {
    double q = 1.0;
    double alpha = 1.0;
    double alpha_hat = 1.0;
    double gamma = 0.0;
    ContractSide side = ContractSide::Callable;

    ContractSpec at(double p) const;
};

struct SpreadResult {
    double p_star = 0.0;
    int iterations = 0;
    std::pair<double, double> bracket{0.0, 0.0};
    double residual = 0.0;
};

/// Fair premium p* with contract value zero at x, by bisection on p. The
/// stopping problem is re-solved at every trial p. Throws NoSignChange when
/// the bracket reaches 10 alpha r / (1 - zeta(x)) without a sign change.
SpreadResult credit_spread(const ScaleFunction& sf, double x, const SpreadTemplate& tpl);

}  // namespace levycds
