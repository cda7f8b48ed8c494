#include "oracles.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace oracle {

namespace {

using boost::math::quadrature::exp_sinh;
using boost::math::quadrature::gauss_kronrod;

template <class F>
double gk(F f, double a, double b) {
    if (b <= a) return 0.0;
    return gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-14);
}

template <class F>
double half_line(F f, double a) {
    exp_sinh<double> integrator;
    return integrator.integrate([&](double t) { return f(a + t); }, 1e-14);
}

}  // namespace

double Brownian::phi() const {
    const double a = 0.5 * sigma * sigma;
    return (-mu + std::sqrt(mu * mu + 4.0 * a * r)) / (2.0 * a);
}

double Brownian::beta() const {
    const double a = 0.5 * sigma * sigma;
    return (mu + std::sqrt(mu * mu + 4.0 * a * r)) / (2.0 * a);
}

double Brownian::W(double x) const {
    if (x < 0.0) return 0.0;
    const double a = 0.5 * sigma * sigma;
    return (std::exp(phi() * x) - std::exp(-beta() * x)) / (a * (phi() + beta()));
}

double Brownian::W_prime(double x) const {
    const double a = 0.5 * sigma * sigma;
    return (phi() * std::exp(phi() * x) + beta() * std::exp(-beta() * x)) / (a * (phi() + beta()));
}

double Brownian::Z(double x) const {
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * sigma * sigma;
    const double k = r / (a * (phi() + beta()));
    return 1.0 + k * (std::expm1(phi() * x) / phi() + std::expm1(-beta() * x) / beta());
}

double Brownian::zeta(double x) const { return x <= 0.0 ? 1.0 : std::exp(-beta() * x); }

double laplace_integral_W(const levycds::ScaleFunction& sf, double s) {
    const double phi = sf.phi();
    return half_line([&](double x) { return std::exp(-(s - phi) * x) * sf.W_scaled(x); }, 0.0);
}

double integral_W(const levycds::ScaleFunction& sf, double x) {
    return gk([&](double y) { return sf.W(y); }, 0.0, x);
}

double varrho_definition(const levycds::ScaleFunction& sf, double B, const levycds::SwitchTriplet& t) {
    const double r = sf.rate();
    return (t.p_check + t.a_check * r) * sf.W(B) - sf.W_prime(B) / sf.W(B) * levycds::big_G(sf, B, t);
}

double rho_quadrature(const levycds::ScaleFunction& sf, double A) {
    const auto& m = sf.model();
    if (!m.has_jumps()) return 0.0;
    const double phi = sf.phi();
    return half_line([&](double u) { return m.jump_density(u) * -std::expm1(-phi * (u - A)); }, A);
}

double gamma_resolvent(const levycds::ScaleFunction& sf, double x, double A) {
    const auto& m = sf.model();
    if (x < A || !m.has_jumps()) return 0.0;
    const double phi = sf.phi();
    const double d = x - A;
    const double wd = sf.W(d);
    auto f = [&](double y) { return (std::exp(-phi * y) * wd - sf.W(d - y)) * m.tail(y + A); };
    return gk(f, 0.0, d) + half_line([&](double y) { return std::exp(-phi * y) * wd * m.tail(y + A); }, d);
}

double tail_quadrature(const levycds::LevyModel& model, double x) {
    if (!model.has_jumps()) return 0.0;
    return half_line([&](double z) { return model.jump_density(z); }, x);
}

double combined_se(const levycds::MCEstimate& a, const levycds::MCEstimate& b) {
    return std::sqrt(a.se * a.se + b.se * b.se);
}

}  // namespace oracle
