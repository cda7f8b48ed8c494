#include "levycds/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "levycds/detail/numerics.hpp"
#include "levycds/error.hpp"

namespace levycds {

namespace {

constexpr double kPoleTolerance = 1e-12;
constexpr double kWeightTolerance = 1e-12;
constexpr double kDistinctRootTolerance = 1e-9;

bool finite(double v) { return std::isfinite(v); }

}  // namespace

LevyModel build_model(double drift, double sigma, double jump_rate,
                      std::vector<JumpPhase> phases, double rate_r) {
    if (!finite(drift) || !finite(sigma) || !finite(jump_rate) || !finite(rate_r)) {
        throw Error(ErrorCode::NegativeParameter, "model parameters must be finite");
    }
    if (sigma < 0.0) throw Error(ErrorCode::NegativeParameter, "sigma must be >= 0");
    if (jump_rate < 0.0) throw Error(ErrorCode::NegativeParameter, "jump_rate must be >= 0");
    if (rate_r <= 0.0) throw Error(ErrorCode::NegativeParameter, "rate r must be > 0");
    if (jump_rate == 0.0 && !phases.empty()) {
        throw Error(ErrorCode::NegativeParameter, "phases given but jump_rate is zero");
    }
    if (jump_rate > 0.0) {
        double total = 0.0;
        for (const auto& ph : phases) {
            if (!finite(ph.weight) || !finite(ph.rate) || ph.rate <= 0.0) {
                throw Error(ErrorCode::NegativeParameter, "phase rates must be positive");
            }
            if (ph.weight <= 0.0 || ph.weight > 1.0) {
                throw Error(ErrorCode::WeightsNotNormalized, "phase weights must lie in (0, 1]");
            }
            total += ph.weight;
        }
        if (std::abs(total - 1.0) > kWeightTolerance) {
            std::ostringstream os;
            os << "phase weights sum to " << total;
            throw Error(ErrorCode::WeightsNotNormalized, os.str());
        }
        for (std::size_t i = 1; i < phases.size(); ++i) {
            if (!(phases[i].rate > phases[i - 1].rate)) {
                throw Error(ErrorCode::NonIncreasingRates, "phase rates must be strictly increasing");
            }
        }
    }
    if (sigma == 0.0 && drift <= 0.0) {
        throw Error(ErrorCode::NegativeSubordinator,
                    "bounded-variation model needs a strictly positive drift");
    }

    LevyModel m;
    m.drift_ = drift;
    m.sigma_ = sigma;
    m.jump_rate_ = jump_rate;
    m.rate_ = rate_r;
    m.phases_ = std::move(phases);
    return m;
}

double LevyModel::psi(double s) const {
    double v = drift_ * s + 0.5 * sigma_ * sigma_ * s * s;
    for (const auto& ph : phases_) {
        const double den = ph.rate + s;
        if (std::abs(den) < kPoleTolerance) {
            throw Error(ErrorCode::PoleEvaluation, "psi evaluated at a pole");
        }
        // eta/(eta+s) - 1 = -s/(eta+s)
        v -= jump_rate_ * ph.weight * s / den;
    }
    return v;
}

double LevyModel::psi_prime(double s) const {
    double v = drift_ + sigma_ * sigma_ * s;
    for (const auto& ph : phases_) {
        const double den = ph.rate + s;
        if (std::abs(den) < kPoleTolerance) {
            throw Error(ErrorCode::PoleEvaluation, "psi' evaluated at a pole");
        }
        v -= jump_rate_ * ph.weight * ph.rate / (den * den);
    }
    return v;
}

double LevyModel::tail(double x) const {
    x = std::max(x, 0.0);
    double v = 0.0;
    for (const auto& ph : phases_) v += ph.weight * std::exp(-ph.rate * x);
    return jump_rate_ * v;
}

double LevyModel::jump_density(double z) const {
    if (z <= 0.0) return 0.0;
    double v = 0.0;
    for (const auto& ph : phases_) v += ph.weight * ph.rate * std::exp(-ph.rate * z);
    return jump_rate_ * v;
}

LevyModel calibrate_risk_neutral(const LevyModel& model, CalibrationFree free) {
    const double r = model.rate();
    const double sig2 = model.sigma() * model.sigma();
    // sum_i w_i (1 - eta_i/(eta_i+1)) = sum_i w_i/(eta_i+1): jump compensator at s=1
    double comp = 0.0;
    for (const auto& ph : model.phases()) comp += ph.weight / (ph.rate + 1.0);

    if (free == CalibrationFree::Drift) {
        const double drift = r - 0.5 * sig2 + model.jump_rate() * comp;
        if (model.sigma() == 0.0 && drift <= 0.0) {
            throw Error(ErrorCode::NoAdmissibleSolution,
                        "risk-neutral drift is not positive for a bounded-variation model");
        }
        return build_model(drift, model.sigma(), model.jump_rate(), model.phases(), r);
    }

    if (!model.has_jumps()) {
        throw Error(ErrorCode::NoAdmissibleSolution, "cannot calibrate jump_rate without phases");
    }
    const double lambda = (model.drift() + 0.5 * sig2 - r) / comp;
    if (!(lambda > 0.0)) {
        throw Error(ErrorCode::NoAdmissibleSolution, "required jump_rate is not positive");
    }
    return build_model(model.drift(), model.sigma(), lambda, model.phases(), r);
}

std::vector<double> RootSet::all() const {
    std::vector<double> out;
    out.reserve(negative_roots.size() + 1);
    out.push_back(phi_r);
    out.insert(out.end(), negative_roots.begin(), negative_roots.end());
    return out;
}

namespace {

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> poly_add(std::vector<double> a, const std::vector<double>& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

}  // namespace

std::vector<double> cleared_polynomial(const LevyModel& model, double r) {
    const auto& ph = model.phases();
    const double lambda = model.jump_rate();
    const double sig2 = model.sigma() * model.sigma();

    std::vector<double> base{-(lambda + r), model.drift(), 0.5 * sig2};
    std::vector<double> poles{1.0};
    for (const auto& p : ph) poles = poly_mul(poles, {p.rate, 1.0});
    std::vector<double> q = poly_mul(base, poles);

    for (std::size_t i = 0; i < ph.size(); ++i) {
        std::vector<double> others{lambda * ph[i].weight * ph[i].rate};
        for (std::size_t k = 0; k < ph.size(); ++k) {
            if (k != i) others = poly_mul(others, {ph[k].rate, 1.0});
        }
        q = poly_add(std::move(q), others);
    }
    while (q.size() > 1 && q.back() == 0.0) q.pop_back();
    return q;
}

namespace {

// Root of f = psi - r on (lo, hi), where f -> +inf (or > 0) at lo and f < 0 near hi.
double isolate(const LevyModel& model, double r, double lo, double hi) {
    auto f = [&](double s) { return model.psi(s) - r; };
    double s = detail::bisect(f, lo, hi, /*increasing=*/false);
    // Newton polish, kept only while it stays inside the bracket and improves.
    for (int k = 0; k < 3; ++k) {
        const double fs = f(s);
        if (fs == 0.0) break;
        const double next = s - fs / model.psi_prime(s);
        if (!(next > lo && next < hi)) break;
        if (std::abs(f(next)) >= std::abs(fs)) break;
        s = next;
    }
    return s;
}

}  // namespace

RootSet find_roots(const LevyModel& model, double r) {
    if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "r must be positive");
    RootSet out;
    out.degree = static_cast<int>(cleared_polynomial(model, r).size()) - 1;

    auto f = [&](double s) { return model.psi(s) - r; };

    // Positive root: f(0) = -r < 0, f increasing to +inf.
    double hi = 1.0;
    while (f(hi) <= 0.0) {
        hi *= 2.0;
        if (hi > 1e12) throw Error(ErrorCode::ComplexRoots, "no positive root of psi(s) = r");
    }
    out.phi_r = detail::bisect(f, 0.0, hi, /*increasing=*/true);
    for (int k = 0; k < 3; ++k) {
        const double fs = f(out.phi_r);
        const double next = out.phi_r - fs / model.psi_prime(out.phi_r);
        if (!(next > 0.0 && next < hi) || std::abs(f(next)) >= std::abs(fs)) break;
        out.phi_r = next;
    }

    // Negative roots. Interval boundaries 0 > -eta_1 > ... > -eta_m.
    const auto& ph = model.phases();
    std::vector<double> negs;
    if (!ph.empty()) {
        // (-eta_1, 0): f(-eta_1+) = +inf, f(0) = -r
        negs.push_back(isolate(model, r, -ph[0].rate, 0.0));
        // (-eta_{i+1}, -eta_i): f(-eta_{i+1}+) = +inf, f(-eta_i-) = -inf
        for (std::size_t i = 0; i + 1 < ph.size(); ++i) {
            negs.push_back(isolate(model, r, -ph[i + 1].rate, -ph[i].rate));
        }
    }
    if (model.sigma() > 0.0) {
        // Below the last pole (or below 0 without jumps) f -> +inf as s -> -inf.
        const double top = ph.empty() ? 0.0 : -ph.back().rate;
        double width = std::max(1.0, std::abs(top));
        while (f(top - width) <= 0.0) {
            width *= 2.0;
            if (width > 1e15) throw Error(ErrorCode::ComplexRoots, "no root below the last pole");
        }
        negs.push_back(isolate(model, r, top - width, top));
    }
    std::sort(negs.begin(), negs.end());
    out.negative_roots = std::move(negs);

    const auto roots = out.all();
    if (static_cast<int>(roots.size()) != out.degree) {
        throw Error(ErrorCode::ComplexRoots, "real root count does not match polynomial degree");
    }
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            const double scale = std::max(std::abs(roots[i]), std::abs(roots[j]));
            if (std::abs(roots[i] - roots[j]) < kDistinctRootTolerance * scale) {
                throw Error(ErrorCode::RootMultiplicity, "roots of psi(s) = r are not distinct");
            }
        }
    }
    return out;
}

}  // namespace levycds
