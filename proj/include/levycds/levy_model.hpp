#pragma once

#include <span>
#include <vector>

namespace levycds {

/// One component of the hyperexponential jump-size law: with probability
/// `weight` a jump is exponential with the given `rate`.
struct JumpPhase {
    double weight = 0.0;
    double rate = 0.0;
};

/// Spectrally negative Lévy process X_t = x + drift*t + sigma*B_t - (compound
/// Poisson sum of hyperexponential jumps), together with the risk-free rate
/// used for discounting.
///
/// Instances are immutable and always valid: construct them through
/// build_model(), which enforces
///  - phase weights in (0, 1] summing to one (within 1e-12),
///  - strictly increasing phase rates,
///  - phases present exactly when jump_rate > 0,
///  - drift > 0 when sigma == 0 (the negative subordinator is excluded).
class LevyModel {
public:
    double drift() const noexcept { return drift_; }
    double sigma() const noexcept { return sigma_; }
    double jump_rate() const noexcept { return jump_rate_; }
    double rate() const noexcept { return rate_; }
    const std::vector<JumpPhase>& phases() const noexcept { return phases_; }
    bool has_jumps() const noexcept { return !phases_.empty(); }
    bool bounded_variation() const noexcept { return sigma_ == 0.0; }

    /// psi(s) = drift*s + sigma^2 s^2/2 + lambda * sum_i w_i (eta_i/(eta_i+s) - 1).
    /// Evaluated as the rational function, so it is defined for every real s
    /// except the poles -eta_i (throws PoleEvaluation within 1e-12 of one).
    double psi(double s) const;
    double psi_prime(double s) const;

    /// Pi(x, inf) = lambda * sum_i w_i exp(-eta_i x) for x >= 0.
    double tail(double x) const;

    /// Jump density lambda*f(z) of the Lévy measure, z > 0.
    double jump_density(double z) const;

    friend LevyModel build_model(double drift, double sigma, double jump_rate,
                                 std::vector<JumpPhase> phases, double rate_r);

private:
    LevyModel() = default;

    double drift_ = 0.0;
    double sigma_ = 0.0;
    double jump_rate_ = 0.0;
    double rate_ = 0.0;
    std::vector<JumpPhase> phases_;
};

LevyModel build_model(double drift, double sigma, double jump_rate,
                      std::vector<JumpPhase> phases, double rate_r);

inline double laplace_exponent(const LevyModel& model, double s) { return model.psi(s); }
inline double levy_tail(const LevyModel& model, double x) { return model.tail(x); }

enum class CalibrationFree { Drift, JumpRate };

/// Returns a copy of `model` with the free parameter adjusted so that
/// psi(1) = r. Throws NoAdmissibleSolution when the required value leaves
/// the admissible region.
LevyModel calibrate_risk_neutral(const LevyModel& model,
                                 CalibrationFree free = CalibrationFree::Drift);

/// Solutions of psi(s) = r.
struct RootSet {
    double phi_r = 0.0;                 // the unique positive root
    std::vector<double> negative_roots; // ascending
    int degree = 0;                     // degree of the cleared polynomial

    /// All roots, phi_r first.
    std::vector<double> all() const;
};

/// Coefficients (ascending powers) of (psi(s) - r) * prod_i (eta_i + s).
std::vector<double> cleared_polynomial(const LevyModel& model, double r);

/// Brackets one root in each interlacing interval between consecutive poles
/// and polishes it. Throws RootMultiplicity when two roots are closer than
/// 1e-9 in relative terms and ComplexRoots if the real root count falls short
/// of the polynomial degree.
RootSet find_roots(const LevyModel& model, double r);

}  // namespace levycds
