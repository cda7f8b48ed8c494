#pragma once

#include <vector>

#include "levycds/levy_model.hpp"

namespace levycds {

/// r-scale function of a Brownian + hyperexponential model as the exponential
/// sum W(x) = sum_j C_j exp(z_j x) over the roots z_j of psi(s) = r, with
/// C_j = 1/psi'(z_j). Index 0 is always the positive root Phi(r).
class ScaleFunction {
public:
    const LevyModel& model() const noexcept { return model_; }
    const RootSet& roots() const noexcept { return roots_; }
    double rate() const noexcept { return r_; }
    double phi() const noexcept { return roots_.phi_r; }

    /// Roots in evaluation order (Phi(r) first) and the matching residues.
    const std::vector<double>& exponents() const noexcept { return z_; }
    const std::vector<double>& coefficients() const noexcept { return c_; }

    /// W(0) and W'(0+), from the sums.
    double W0() const noexcept { return w0_; }
    double W_prime0() const noexcept { return wp0_; }

    double W(double x) const;
    double W_prime(double x) const;
    double W_second(double x) const;
    double Z(double x) const;

    /// exp(-Phi x) W(x) and exp(-Phi x) Z(x) for x >= 0; finite for any x.
    double W_scaled(double x) const;
    double Z_scaled(double x) const;
    /// W'(x)/W(x) for x > 0, computed without overflow.
    double W_log_derivative(double x) const;

    /// E^x[exp(-r theta)]; equals 1 for x <= 0.
    double zeta(double x) const;
    /// zeta(0+); below 1 in bounded variation.
    double zeta_right0() const;
    /// d/dx zeta(x) for x > 0.
    double zeta_prime(double x) const;

    /// |(int_0^inf e^{-sx} W(x) dx)(psi(s) - r) - 1| using the termwise integral.
    double laplace_selfcheck(double s) const;

    friend ScaleFunction build_scale(const LevyModel& model, double r);

private:
    ScaleFunction(LevyModel model, RootSet roots, double r)
        : model_(std::move(model)), roots_(std::move(roots)), r_(r) {}

    LevyModel model_;
    RootSet roots_;
    double r_;
    std::vector<double> z_;
    std::vector<double> c_;
    double w0_ = 0.0;
    double wp0_ = 0.0;
};

ScaleFunction build_scale(const LevyModel& model, double r);
inline ScaleFunction build_scale(const LevyModel& model) { return build_scale(model, model.rate()); }

inline double eval_W(const ScaleFunction& sf, double x) { return sf.W(x); }
inline double eval_W_prime(const ScaleFunction& sf, double x) { return sf.W_prime(x); }
inline double eval_Z(const ScaleFunction& sf, double x) { return sf.Z(x); }
inline double eval_zeta(const ScaleFunction& sf, double x) { return sf.zeta(x); }
inline double laplace_selfcheck(const ScaleFunction& sf, double s) { return sf.laplace_selfcheck(s); }

}  // namespace levycds
