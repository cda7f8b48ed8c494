#include "levycds/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "levycds/detail/numerics.hpp"
#include "levycds/error.hpp"

namespace levycds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Inverse Gaussian variate (Michael, Schucany and Haas).
double inverse_gaussian(double mean, double shape, double nu, double u) {
    const double w = mean * nu * nu / (2.0 * shape);
    const double x1 = mean / (1.0 + w + std::sqrt(w * (w + 2.0)));
    return u <= mean / (mean + x1) ? x1 : mean * mean / x1;
}

double discount_integral(double r, double a, double b) {
    if (b <= a) return 0.0;
    return (std::exp(-r * a) - std::exp(-r * b)) / r;
}

int thread_count(const PathSimConfig& cfg) {
    int n = cfg.threads;
    if (n <= 0) n = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    return static_cast<int>(std::min<std::int64_t>(n, cfg.n_paths));
}

// Runs fn(path_id) for every path in fixed contiguous chunks.
template <class F>
void for_each_path(const PathSimConfig& cfg, F&& fn) {
    const int nt = thread_count(cfg);
    const std::int64_t n = cfg.n_paths;
    if (nt <= 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(static_cast<std::uint64_t>(i));
        return;
    }
    std::vector<std::exception_ptr> errors(nt);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int k = 0; k < nt; ++k) {
        const std::int64_t lo = n * k / nt;
        const std::int64_t hi = n * (k + 1) / nt;
        pool.emplace_back([&, k, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(static_cast<std::uint64_t>(i));
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

MCEstimate summarize(const std::vector<double>& column, double truncated_fraction) {
    MCEstimate est;
    est.n = static_cast<std::int64_t>(column.size());
    est.truncated_fraction = truncated_fraction;
    if (column.empty()) return est;
    const double n = static_cast<double>(column.size());
    est.mean = detail::pairwise_sum(column) / n;
    if (column.size() > 1) {
        std::vector<double> sq(column.size());
        for (std::size_t i = 0; i < column.size(); ++i) {
            const double d = column[i] - est.mean;
            sq[i] = d * d;
        }
        est.se = std::sqrt(detail::pairwise_sum(sq) / (n - 1.0) / n);
    }
    return est;
}

void check_truncation(const MCEstimate& est, double r, const PathSimConfig& cfg) {
    if (est.truncated_fraction * std::exp(-r * cfg.horizon) > cfg.truncation_tolerance) {
        throw Error(ErrorCode::HorizonTooShort, "paths alive at the horizon exceed the tolerance");
    }
}

}  // namespace

void validate(const PathSimConfig& cfg, double r, bool perpetual) {
    if (cfg.n_paths <= 0) throw Error(ErrorCode::InvalidSimConfig, "n_paths must be > 0");
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw Error(ErrorCode::InvalidSimConfig, "dt must be > 0");
    if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
        throw Error(ErrorCode::InvalidSimConfig, "horizon must be > 0");
    }
    if (!(cfg.truncation_tolerance > 0.0)) {
        throw Error(ErrorCode::InvalidSimConfig, "truncation_tolerance must be > 0");
    }
    if (perpetual && cfg.horizon * r < 20.0) {
        throw Error(ErrorCode::InvalidSimConfig, "perpetual estimates need horizon * r >= 20");
    }
}

PathEngine::PathEngine(const LevyModel& model, const PathSimConfig& cfg, std::uint64_t path_id,
                       double x0)
    : model_(model), cfg_(cfg), x_(x0) {
    const std::uint64_t base = splitmix64(cfg.seed ^ splitmix64(path_id));
    jump_rng_.seed(base);
    diff_rng_.seed(splitmix64(base ^ 0xd1b54a32d192ed03ULL));
    next_jump_ = model.has_jumps()
                     ? std::exponential_distribution<double>(model.jump_rate())(jump_rng_)
                     : kInf;
}

double PathEngine::next_jump_size() {
    const auto& ph = model_.phases();
    double u = uniform_(jump_rng_);
    std::size_t i = 0;
    for (; i + 1 < ph.size(); ++i) {
        if (u < ph[i].weight) break;
        u -= ph[i].weight;
    }
    return std::exponential_distribution<double>(ph[i].rate)(jump_rng_);
}

// Time at which a Brownian bridge over `span`, starting at distance a > 0
// from a level and ending at signed distance b, first touches the level,
// given that it does.
double PathEngine::hitting_time(double a, double b, double span) {
    const double s2 = model_.sigma() * model_.sigma();
    const double shape = a * a / (s2 * span);
    const double nu = normal_(diff_rng_);
    const double u = uniform_(diff_rng_);
    double v = 0.0;
    if (std::abs(b) < 1e-300) {
        v = shape / (nu * nu);
    } else {
        v = inverse_gaussian(a / std::abs(b), shape, nu, u);
    }
    if (!std::isfinite(v)) return span;
    return span * v / (1.0 + v);
}

ExitEvent PathEngine::run_to_exit(double lower, double upper, double t_max) {
    if (x_ <= lower) return {t_, x_, ExitKind::Lower, x_ == lower};
    if (x_ >= upper) return {t_, x_, ExitKind::Upper, false};

    const double mu = model_.drift();
    const double sig = model_.sigma();
    const double s2 = sig * sig;
    const bool two_sided = std::isfinite(upper);

    double cap = kInf;
    if (!cfg_.bridge_correction) {
        cap = cfg_.dt;
    } else if (two_sided && sig > 0.0) {
        cap = std::max(cfg_.dt, (upper - lower) * (upper - lower) / (50.0 * s2));
    }

    while (t_ < t_max) {
        const double to_jump = next_jump_ - t_;
        const double to_end = t_max - t_;
        double h = std::min({cap, to_jump, to_end});
        const bool jump_now = to_jump <= h;
        const bool end_now = !jump_now && to_end <= h;

        if (sig == 0.0) {
            if (two_sided) {
                const double tu = (upper - x_) / mu;
                if (tu <= h) {
                    t_ += tu;
                    x_ = upper;
                    return {t_, x_, ExitKind::Upper, false};
                }
            }
            x_ += mu * h;
        } else if (!cfg_.bridge_correction) {
            x_ += mu * h + sig * std::sqrt(h) * normal_(diff_rng_);
            if (x_ <= lower) {
                t_ += h;
                return {t_, x_, ExitKind::Lower, true};
            }
            if (x_ >= upper) {
                t_ += h;
                return {t_, x_, ExitKind::Upper, false};
            }
        } else {
            const double y = x_ + mu * h + sig * std::sqrt(h) * normal_(diff_rng_);
            const double u_low = uniform_(diff_rng_);
            const double u_up = uniform_(diff_rng_);
            double s_low = kInf;
            double s_up = kInf;
            const double a = x_ - lower;
            const double b = y - lower;
            if (b <= 0.0 || u_low < std::exp(-2.0 * a * b / (s2 * h))) s_low = hitting_time(a, b, h);
            if (two_sided) {
                const double au = upper - x_;
                const double bu = upper - y;
                if (bu <= 0.0 || u_up < std::exp(-2.0 * au * bu / (s2 * h))) s_up = hitting_time(au, bu, h);
            }
            if (s_low <= s_up && std::isfinite(s_low)) {
                t_ += s_low;
                x_ = lower;
                return {t_, x_, ExitKind::Lower, true};
            }
            if (std::isfinite(s_up)) {
                t_ += s_up;
                x_ = upper;
                return {t_, x_, ExitKind::Upper, false};
            }
            x_ = y;
        }

        if (jump_now) {
            t_ = next_jump_;
            x_ -= next_jump_size();
            next_jump_ = t_ + std::exponential_distribution<double>(model_.jump_rate())(jump_rng_);
            if (x_ <= lower) return {t_, x_, ExitKind::Lower, false};
        } else if (end_now) {
            t_ = t_max;
        } else {
            t_ += h;
        }
    }
    return {t_, x_, ExitKind::Horizon, false};
}

std::vector<FirstPassage> simulate_first_passage(const LevyModel& model, double x,
                                                 const PathSimConfig& cfg) {
    validate(cfg, model.rate(), false);
    std::vector<FirstPassage> out(static_cast<std::size_t>(cfg.n_paths));
    for_each_path(cfg, [&](std::uint64_t id) {
        PathEngine eng(model, cfg, id, x);
        const ExitEvent e = eng.run_to_exit(0.0, kInf, cfg.horizon);
        FirstPassage& fp = out[id];
        fp.theta = e.t;
        fp.x_at_theta = e.x;
        fp.creep = e.kind == ExitKind::Lower && e.creep;
        fp.alive = e.kind == ExitKind::Horizon;
    });
    return out;
}

std::vector<MCEstimate> estimate_path_functionals(const LevyModel& model, const PathSimConfig& cfg,
                                                  std::size_t n_outputs, const PathFunctional& fn) {
    validate(cfg, model.rate(), false);
    const auto n = static_cast<std::size_t>(cfg.n_paths);
    std::vector<double> values(n * n_outputs, 0.0);
    std::vector<char> truncated(n, 0);
    for_each_path(cfg, [&](std::uint64_t id) {
        std::span<double> slot(values.data() + id * n_outputs, n_outputs);
        truncated[id] = fn(id, slot) ? 1 : 0;
    });

    std::int64_t n_trunc = 0;
    for (char c : truncated) n_trunc += c;
    const double frac = static_cast<double>(n_trunc) / static_cast<double>(n);

    std::vector<MCEstimate> out;
    out.reserve(n_outputs);
    std::vector<double> column(n);
    for (std::size_t k = 0; k < n_outputs; ++k) {
        for (std::size_t i = 0; i < n; ++i) column[i] = values[i * n_outputs + k];
        out.push_back(summarize(column, frac));
    }
    return out;
}

std::map<std::string, MCEstimate> estimate_default_functionals(const LevyModel& model, double x,
                                                               const PathSimConfig& cfg,
                                                               std::optional<double> T) {
    validate(cfg, model.rate(), true);
    const double r = model.rate();
    const double H = cfg.horizon;
    const std::size_t k = T ? 8 : 3;
    auto est = estimate_path_functionals(model, cfg, k, [&](std::uint64_t id, std::span<double> v) {
        PathEngine eng(model, cfg, id, x);
        const ExitEvent e = eng.run_to_exit(0.0, kInf, H);
        const bool dead = e.kind == ExitKind::Lower;
        const double th = e.t;
        const double disc = dead ? std::exp(-r * th) : 0.0;
        v[0] = disc;
        v[1] = dead && !e.creep ? disc : 0.0;
        v[2] = dead && e.creep ? disc : 0.0;
        if (T) {
            const double t = *T;
            const bool late = !dead || th >= t;
            v[3] = dead && th <= t ? disc : 0.0;
            v[4] = (!dead || th > t) ? 1.0 : 0.0;
            v[5] = late ? discount_integral(r, t, dead ? th : H) : 0.0;
            v[6] = late ? std::exp(-r * t) : 0.0;
            v[7] = late ? disc : 0.0;
        }
        return !dead;
    });
    check_truncation(est[0], r, cfg);
    std::map<std::string, MCEstimate> out{
        {"zeta", est[0]}, {"jump_default", est[1]}, {"creep_default", est[2]}};
    if (T) {
        out["zeta_T"] = est[3];
        out["survival_T"] = est[4];
        out["premium_tail"] = est[5];
        out["fee_tail"] = est[6];
        out["protection_tail"] = est[7];
    }
    return out;
}

MCEstimate estimate_gamma(const LevyModel& model, double x, double A, const PathSimConfig& cfg) {
    validate(cfg, model.rate(), true);
    const double r = model.rate();
    auto est = estimate_path_functionals(model, cfg, 1, [&](std::uint64_t id, std::span<double> v) {
        PathEngine eng(model, cfg, id, x);
        const ExitEvent e = eng.run_to_exit(A, kInf, cfg.horizon);
        v[0] = (e.kind == ExitKind::Lower && e.x < 0.0) ? std::exp(-r * e.t) : 0.0;
        return e.kind == ExitKind::Horizon;
    });
    check_truncation(est[0], r, cfg);
    return est[0];
}

Policy policy_from(const StoppingSolution& sol) {
    if (sol.side == Side::BuyerUpCross) {
        if (sol.case_tag == CaseTag::Never) return Policy::never();
        return Policy::up(sol.threshold);
    }
    switch (sol.case_tag) {
        case CaseTag::Never: return Policy::never();
        case CaseTag::Immediate: return Policy::down(kInf);
        default: return Policy::down(sol.threshold);
    }
}

namespace {

struct PathOutcome {
    bool exercised = false;
    double tau = 0.0;
    bool defaulted = false;
    double theta = 0.0;
};

PathOutcome run_policy(PathEngine& eng, const Policy& pol, double t_end) {
    PathOutcome o;
    auto finish = [&] {
        const ExitEvent e = eng.run_to_exit(0.0, kInf, t_end);
        if (e.kind == ExitKind::Lower) {
            o.defaulted = true;
            o.theta = e.t;
        }
    };
    auto exercise_now = [&] {
        o.exercised = true;
        o.tau = eng.time();
        finish();
    };

    if (eng.state() <= 0.0) {
        o.defaulted = true;
        return o;
    }
    switch (pol.kind) {
        case Policy::Kind::Never:
            finish();
            break;
        case Policy::Kind::UpCross: {
            if (eng.state() >= pol.level) {
                exercise_now();
                break;
            }
            const ExitEvent e = eng.run_to_exit(0.0, pol.level, t_end);
            if (e.kind == ExitKind::Upper) {
                exercise_now();
            } else if (e.kind == ExitKind::Lower) {
                o.defaulted = true;
                o.theta = e.t;
            }
            break;
        }
        case Policy::Kind::DownCross: {
            if (pol.level > 0.0 && eng.state() <= pol.level) {
                exercise_now();
                break;
            }
            const ExitEvent e = eng.run_to_exit(pol.level, kInf, t_end);
            if (e.kind != ExitKind::Lower) break;
            if (e.x > 0.0) {
                exercise_now();
            } else {
                o.defaulted = true;
                o.theta = e.t;
                if (pol.level == 0.0 && e.creep) {
                    o.exercised = true;
                    o.tau = e.t;
                }
            }
            break;
        }
    }
    return o;
}

double cash_flow(const PathOutcome& o, const ContractSpec& s, double r, double t_end, Valuation mode) {
    const double sign = s.side == ContractSide::Callable ? 1.0 : -1.0;
    const double end = o.defaulted ? o.theta : t_end;
    const double dtheta = o.defaulted ? std::exp(-r * o.theta) : 0.0;
    const double fee = o.exercised ? s.gamma * std::exp(-r * o.tau) : 0.0;
    if (mode == Valuation::OptionLeg) {
        if (!o.exercised) return 0.0;
        const double gain = (s.p - s.p_hat) * discount_integral(r, o.tau, end) +
                            (s.alpha_hat - s.alpha) * dtheta;
        return sign * gain - fee;
    }
    const double switch_at = o.exercised ? o.tau : end;
    double buyer = -s.p * discount_integral(r, 0.0, switch_at);
    if (o.exercised) buyer -= s.p_hat * discount_integral(r, o.tau, end);
    buyer += dtheta * (o.exercised ? s.alpha_hat : s.alpha);
    return sign * buyer - fee;
}

}  // namespace

std::vector<MCEstimate> evaluate_policies(const LevyModel& model, double x, const ContractSpec& spec,
                                          const std::vector<Policy>& policies, const PathSimConfig& cfg,
                                          std::optional<double> maturity, Valuation mode) {
    validate(spec);
    const bool perpetual = !maturity.has_value();
    validate(cfg, model.rate(), perpetual);
    if (policies.empty()) return {};
    const double r = model.rate();
    const double t_end = perpetual ? cfg.horizon : *maturity;
    const std::size_t np = policies.size();

    auto est = estimate_path_functionals(
        model, cfg, 2 * np - 1, [&](std::uint64_t id, std::span<double> v) {
            bool cut = false;
            for (std::size_t i = 0; i < np; ++i) {
                PathEngine eng(model, cfg, id, x);
                const PathOutcome o = run_policy(eng, policies[i], t_end);
                v[i] = cash_flow(o, spec, r, t_end, mode);
                cut = cut || (perpetual && !o.defaulted);
            }
            for (std::size_t i = 1; i < np; ++i) v[np + i - 1] = v[i] - v[0];
            return cut;
        });
    if (perpetual) check_truncation(est[0], r, cfg);
    return est;
}

MCEstimate evaluate_policy(const LevyModel& model, double x, const ContractSpec& spec,
                           const Policy& policy, const PathSimConfig& cfg,
                           std::optional<double> maturity, Valuation mode) {
    return evaluate_policies(model, x, spec, {policy}, cfg, maturity, mode).front();
}

}  // namespace levycds
