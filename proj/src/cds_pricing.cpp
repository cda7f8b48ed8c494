#include "levycds/cds_pricing.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "levycds/error.hpp"

namespace levycds {

SwitchTriplet normalize_triplet(double p_check, double a_check, double gamma) {
    if (!std::isfinite(p_check) || !std::isfinite(a_check) || !std::isfinite(gamma)) {
        throw Error(ErrorCode::InvalidContract, "non-finite switch parameters");
    }
    if (gamma < 0.0) throw Error(ErrorCode::NegativeParameter, "fee gamma must be >= 0");
    if (p_check * a_check < 0.0) {
        throw Error(ErrorCode::InvalidContract,
                    "premium and protection must move in the same direction");
    }
    SwitchTriplet t;
    t.gamma = gamma;
    if (p_check < 0.0 || a_check < 0.0) {
        t.orientation = Orientation::StepUp;
        t.p_check = -p_check;
        t.a_check = -a_check;
    } else {
        t.p_check = p_check;
        t.a_check = a_check;
    }
    return t;
}

double perpetual_cds_value(const ScaleFunction& sf, double x, double p, double alpha) {
    const double r = sf.rate();
    return (p / r + alpha) * sf.zeta(x) - p / r;
}

double perpetual_spread(const ScaleFunction& sf, double x, double alpha) {
    const double z = sf.zeta(x);
    if (z >= 1.0 - 1e-14) throw Error(ErrorCode::DegenerateAtDefault, "zeta(x) is 1");
    return alpha * sf.rate() * z / (1.0 - z);
}

double payoff_h(const ScaleFunction& sf, double x, const SwitchTriplet& t) {
    if (x <= 0.0) return 0.0;
    const double pr = t.p_check / sf.rate();
    return (pr - t.gamma) - (pr + t.a_check) * sf.zeta(x);
}

double payoff_g(const ScaleFunction& sf, double x, const SwitchTriplet& t) {
    if (x <= 0.0) return 0.0;
    const double pr = t.p_check / sf.rate();
    return (-pr - t.gamma) + (pr + t.a_check) * sf.zeta(x);
}

double payoff_g_right0(const ScaleFunction& sf, const SwitchTriplet& t) {
    const double pr = t.p_check / sf.rate();
    return (-pr - t.gamma) + (pr + t.a_check) * sf.zeta_right0();
}

double big_G(const ScaleFunction& sf, double B, const SwitchTriplet& t) {
    const double z = sf.Z(B);
    return (t.p_check / sf.rate()) * (z - 1.0) + t.a_check * z + t.gamma;
}

double rho(const LevyModel& model, const RootSet& roots, double A) {
    const double phi = roots.phi_r;
    double v = 0.0;
    for (const auto& ph : model.phases()) {
        v += ph.weight * std::exp(-ph.rate * A) * phi / (ph.rate + phi);
    }
    return model.jump_rate() * v;
}

namespace {

// sum_i w_i exp(-eta_i A) (1/(eta_i + Phi) - 1/(eta_i + z_j)) for each negative root.
std::vector<double> gamma_weights(const ScaleFunction& sf, double A) {
    const auto& z = sf.exponents();
    const double phi = sf.phi();
    std::vector<double> k(z.size(), 0.0);
    for (std::size_t j = 1; j < z.size(); ++j) {
        double s = 0.0;
        for (const auto& ph : sf.model().phases()) {
            s += ph.weight * std::exp(-ph.rate * A) * (1.0 / (ph.rate + phi) - 1.0 / (ph.rate + z[j]));
        }
        k[j] = s;
    }
    return k;
}

}  // namespace

double big_Gamma(const ScaleFunction& sf, double x, double A) {
    if (A < 0.0) throw Error(ErrorCode::DomainError, "Gamma needs A >= 0");
    if (x < A || x <= 0.0 || !sf.model().has_jumps()) return 0.0;
    const auto& z = sf.exponents();
    const auto& c = sf.coefficients();
    const auto k = gamma_weights(sf, A);
    double v = 0.0;
    for (std::size_t j = 1; j < z.size(); ++j) v += c[j] * std::exp(z[j] * (x - A)) * k[j];
    return sf.model().jump_rate() * v;
}

double big_Gamma_prime(const ScaleFunction& sf, double x, double A) {
    if (A < 0.0) throw Error(ErrorCode::DomainError, "Gamma needs A >= 0");
    if (x < A || x <= 0.0 || !sf.model().has_jumps()) return 0.0;
    const auto& z = sf.exponents();
    const auto& c = sf.coefficients();
    const auto k = gamma_weights(sf, A);
    double v = 0.0;
    for (std::size_t j = 1; j < z.size(); ++j) v += c[j] * z[j] * std::exp(z[j] * (x - A)) * k[j];
    return sf.model().jump_rate() * v;
}

double big_Gamma_quadrature(const ScaleFunction& sf, double x, double A) {
    if (A < 0.0) throw Error(ErrorCode::DomainError, "Gamma needs A >= 0");
    if (x < A || x <= 0.0 || !sf.model().has_jumps()) return 0.0;
    const LevyModel& m = sf.model();
    const double r = sf.rate();
    const double za = sf.Z(x - A);
    // int_A^inf Pi(du) (Z(x-A) - Z(x-u)); Z(x-u) = 1 once u >= x.
    auto integrand = [&](double u) { return m.jump_density(u) * (za - sf.Z(x - u)); };
    double inner = 0.0;
    if (x > A) {
        inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, A, x, 15, 1e-13);
    }
    inner += (za - 1.0) * m.tail(x);
    return sf.W(x - A) * rho(sf, A) / sf.phi() - inner / r;
}

}  // namespace levycds
