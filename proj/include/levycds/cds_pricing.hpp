#pragma once

#include "levycds/scale_function.hpp"

namespace levycds {

/// Which way the original contract switches. Both are handled through the
/// step-down problem with positive reductions; StepUp records the flip.
enum class Orientation { StepDown, StepUp };

/// Premium reduction p_check = p - p_hat, protection reduction
/// a_check = alpha - alpha_hat, and exercise fee gamma, held with
/// p_check >= 0 and a_check >= 0.
struct SwitchTriplet {
    double p_check = 0.0;
    double a_check = 0.0;
    double gamma = 0.0;
    Orientation orientation = Orientation::StepDown;
};

/// Builds the normalized triplet from signed reductions. Throws
/// InvalidContract when the two reductions have opposite signs and
/// NegativeParameter for a negative fee.
SwitchTriplet normalize_triplet(double p_check, double a_check, double gamma);

/// C(x; p, alpha) = (p/r + alpha) zeta(x) - p/r.
double perpetual_cds_value(const ScaleFunction& sf, double x, double p, double alpha);

/// Premium making the perpetual CDS worth zero at x.
double perpetual_spread(const ScaleFunction& sf, double x, double alpha);

/// Exercise payoffs of the buyer (h) and seller (g) problems; zero for x <= 0.
double payoff_h(const ScaleFunction& sf, double x, const SwitchTriplet& trip);
double payoff_g(const ScaleFunction& sf, double x, const SwitchTriplet& trip);
/// g(0+) with the right limit of zeta.
double payoff_g_right0(const ScaleFunction& sf, const SwitchTriplet& trip);

/// G(B) = (p_check/r)(Z(B) - 1) + a_check Z(B) + gamma.
double big_G(const ScaleFunction& sf, double B, const SwitchTriplet& trip);

/// rho(A) = int_A^inf Pi(du) (1 - exp(-Phi (u - A))).
double rho(const LevyModel& model, const RootSet& roots, double A);
inline double rho(const ScaleFunction& sf, double A) { return rho(sf.model(), sf.roots(), A); }

/// Gamma(x; A) = E^x[exp(-r tau_A^-); X(tau_A^-) < 0] for A >= 0, closed form.
double big_Gamma(const ScaleFunction& sf, double x, double A);
/// d/dx Gamma(x; A) for x > A.
double big_Gamma_prime(const ScaleFunction& sf, double x, double A);

/// Gamma from the W/Z representation with the Levy-measure integral done by
/// adaptive quadrature. Slow; used to cross-check the closed form.
double big_Gamma_quadrature(const ScaleFunction& sf, double x, double A);

}  // namespace levycds
