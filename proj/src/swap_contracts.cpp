#include "levycds/swap_contracts.hpp"

#include <cmath>

#include "levycds/detail/numerics.hpp"
#include "levycds/error.hpp"

namespace levycds {

const char* to_string(ContractSide side) {
    return side == ContractSide::Callable ? "Callable" : "Putable";
}

const char* to_string(ContractKind kind) {
    switch (kind) {
        case ContractKind::Vanilla: return "Vanilla";
        case ContractKind::Cancellation: return "Cancellation";
        case ContractKind::StepDown: return "StepDown";
        case ContractKind::StepUp: return "StepUp";
    }
    return "Unknown";
}

void validate(const ContractSpec& s) {
    for (double v : {s.p, s.p_hat, s.alpha, s.alpha_hat, s.gamma}) {
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidContract, "non-finite contract term");
    }
    if (s.p < 0.0 || s.p_hat < 0.0 || s.alpha_hat < 0.0 || s.gamma < 0.0) {
        throw Error(ErrorCode::NegativeParameter, "premiums, alpha_hat and gamma must be >= 0");
    }
    if (!(s.alpha > 0.0)) throw Error(ErrorCode::NegativeParameter, "alpha must be > 0");
    if ((s.p_hat - s.p) * (s.alpha_hat - s.alpha) < 0.0) {
        throw Error(ErrorCode::InvalidContract,
                    "premium and protection must move in the same direction");
    }
    if (s.maturity && !(*s.maturity > 0.0)) {
        throw Error(ErrorCode::InvalidContract, "maturity must be > 0");
    }
}

ContractKind classify(const ContractSpec& s) {
    if (s.p_hat == s.p && s.alpha_hat == s.alpha) return ContractKind::Vanilla;
    if (s.p_hat == 0.0 && s.alpha_hat == 0.0) return ContractKind::Cancellation;
    if (s.p_check() >= 0.0 && s.a_check() >= 0.0) return ContractKind::StepDown;
    return ContractKind::StepUp;
}

StoppingSolution option_leg_solution(const ScaleFunction& sf, const ContractSpec& spec) {
    validate(spec);
    const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
    const bool down = trip.orientation == Orientation::StepDown;
    const bool buyer_problem = (spec.side == ContractSide::Callable) == down;
    return buyer_problem ? solve_B_star(sf, trip) : solve_A_star(sf, trip);
}

double option_leg_value(const ScaleFunction& sf, double x, const ContractSpec& spec) {
    return value(option_leg_solution(sf, spec), x);
}

double value_V(const ScaleFunction& sf, double x, const ContractSpec& spec) {
    if (spec.side != ContractSide::Callable) {
        throw Error(ErrorCode::InvalidContract, "value_V needs a callable contract");
    }
    return perpetual_cds_value(sf, x, spec.p, spec.alpha) + option_leg_value(sf, x, spec);
}

double value_U(const ScaleFunction& sf, double x, const ContractSpec& spec) {
    if (spec.side != ContractSide::Putable) {
        throw Error(ErrorCode::InvalidContract, "value_U needs a putable contract");
    }
    return -perpetual_cds_value(sf, x, spec.p, spec.alpha) + option_leg_value(sf, x, spec);
}

double contract_value(const ScaleFunction& sf, double x, const ContractSpec& spec) {
    return spec.side == ContractSide::Callable ? value_V(sf, x, spec) : value_U(sf, x, spec);
}

ContractSpec mirror_spec(const ContractSpec& spec) {
    ContractSpec m = spec;
    m.p_hat = 2.0 * spec.p - spec.p_hat;
    m.alpha_hat = 2.0 * spec.alpha - spec.alpha_hat;
    if (m.p_hat < 0.0 || m.alpha_hat < 0.0) {
        throw Error(ErrorCode::MirrorInadmissible, "mirrored premium or protection is negative");
    }
    m.side = spec.side == ContractSide::Callable ? ContractSide::Putable : ContractSide::Callable;
    return m;
}

std::pair<double, double> parity_check(const ScaleFunction& sf, double x, const ContractSpec& spec) {
    ContractSpec call = spec;
    call.side = ContractSide::Callable;
    const ContractSpec put = mirror_spec(call);
    const double v = value_V(sf, x, call);
    const double u = value_U(sf, x, put);
    const double c = perpetual_cds_value(sf, x, spec.p, spec.alpha);
    const double leg = option_leg_value(sf, x, call);
    return {std::abs(v - u - 2.0 * c), std::abs(v + u - 2.0 * leg)};
}

ContractSpec SpreadTemplate::at(double p) const {
    ContractSpec s;
    s.p = p;
    s.p_hat = q * p;
    s.alpha = alpha;
    s.alpha_hat = alpha_hat;
    s.gamma = gamma;
    s.side = side;
    return s;
}

SpreadResult credit_spread(const ScaleFunction& sf, double x, const SpreadTemplate& tpl) {
    if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "credit spread needs x > 0");
    auto f = [&](double p) { return contract_value(sf, x, tpl.at(p)); };

    SpreadResult out;
    const double f0 = f(0.0);
    if (f0 == 0.0) return out;

    const double z = sf.zeta(x);
    const double cap = 10.0 * tpl.alpha * sf.rate() / (1.0 - z);
    double lo = 0.0;
    double hi = std::min(perpetual_spread(sf, x, tpl.alpha), cap);
    if (!(hi > 0.0)) hi = cap * 1e-6;
    while ((f(hi) > 0.0) == (f0 > 0.0)) {
        if (hi >= cap) throw Error(ErrorCode::NoSignChange, "contract value keeps its sign up to the cap");
        lo = hi;
        hi = std::min(2.0 * hi, cap);
    }
    out.bracket = {lo, hi};
    out.p_star = detail::bisect(f, lo, hi, /*increasing=*/f0 < 0.0, &out.iterations);
    out.residual = std::abs(f(out.p_star));
    return out;
}

}  // namespace levycds
