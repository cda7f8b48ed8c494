#include "levycds/scale_function.hpp"

#include <cmath>

#include "levycds/error.hpp"

namespace levycds {

ScaleFunction build_scale(const LevyModel& model, double r) {
    ScaleFunction sf(model, find_roots(model, r), r);
    sf.z_ = sf.roots_.all();
    sf.c_.reserve(sf.z_.size());
    for (double z : sf.z_) sf.c_.push_back(1.0 / model.psi_prime(z));

    // W(0) and W'(0+) are known exactly; the sums agree with them up to
    // rounding, and the exact values keep small-x evaluation accurate.
    if (model.sigma() > 0.0) {
        sf.w0_ = 0.0;
        sf.wp0_ = 2.0 / (model.sigma() * model.sigma());
    } else {
        sf.w0_ = 1.0 / model.drift();
        sf.wp0_ = (r + model.jump_rate()) / (model.drift() * model.drift());
    }
    return sf;
}

double ScaleFunction::W(double x) const {
    if (x < 0.0) return 0.0;
    if (x <= 1.0) {
        double v = w0_;
        for (std::size_t j = 0; j < z_.size(); ++j) v += c_[j] * std::expm1(z_[j] * x);
        return v;
    }
    double v = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) v += c_[j] * std::exp(z_[j] * x);
    return v;
}

double ScaleFunction::W_prime(double x) const {
    if (x < 0.0) return 0.0;
    double v = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) v += c_[j] * z_[j] * std::exp(z_[j] * x);
    return v;
}

double ScaleFunction::W_second(double x) const {
    if (x < 0.0) return 0.0;
    double v = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) v += c_[j] * z_[j] * z_[j] * std::exp(z_[j] * x);
    return v;
}

double ScaleFunction::Z(double x) const {
    if (x <= 0.0) return 1.0;
    double v = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) v += c_[j] * std::expm1(z_[j] * x) / z_[j];
    return 1.0 + r_ * v;
}

double ScaleFunction::W_scaled(double x) const {
    if (x < 0.0) return 0.0;
    if (x <= 1.0) return std::exp(-phi() * x) * W(x);
    const double p = phi();
    double v = c_[0];
    for (std::size_t j = 1; j < z_.size(); ++j) v += c_[j] * std::exp((z_[j] - p) * x);
    return v;
}

double ScaleFunction::Z_scaled(double x) const {
    if (x <= 0.0) return 1.0;
    if (x <= 1.0) return std::exp(-phi() * x) * Z(x);
    const double p = phi();
    const double e = std::exp(-p * x);
    double v = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) {
        v += c_[j] * (std::exp((z_[j] - p) * x) - e) / z_[j];
    }
    return e + r_ * v;
}

double ScaleFunction::W_log_derivative(double x) const {
    if (x <= 1.0) return W_prime(x) / W(x);
    const double p = phi();
    double num = c_[0] * p;
    double den = c_[0];
    for (std::size_t j = 1; j < z_.size(); ++j) {
        const double e = std::exp((z_[j] - p) * x);
        num += c_[j] * z_[j] * e;
        den += c_[j] * e;
    }
    return num / den;
}

double ScaleFunction::zeta(double x) const {
    if (x <= 0.0) return 1.0;
    const double p = phi();
    double v = 0.0;
    for (std::size_t j = 1; j < z_.size(); ++j) {
        v += c_[j] * (1.0 / z_[j] - 1.0 / p) * std::exp(z_[j] * x);
    }
    return r_ * v;
}

double ScaleFunction::zeta_right0() const { return 1.0 - r_ * w0_ / phi(); }

double ScaleFunction::zeta_prime(double x) const {
    if (x < 0.0) return 0.0;
    const double p = phi();
    double v = 0.0;
    for (std::size_t j = 1; j < z_.size(); ++j) {
        v += c_[j] * (1.0 - z_[j] / p) * std::exp(z_[j] * x);
    }
    return r_ * v;
}

double ScaleFunction::laplace_selfcheck(double s) const {
    if (!(s > phi())) throw Error(ErrorCode::DomainError, "self-check needs s > Phi(r)");
    double integral = 0.0;
    for (std::size_t j = 0; j < z_.size(); ++j) integral += c_[j] / (s - z_[j]);
    return std::abs(integral * (model_.psi(s) - r_) - 1.0);
}

}  // namespace levycds
