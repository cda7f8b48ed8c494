#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "levycds/levy_model.hpp"
#include "levycds/optimal_stopping.hpp"
#include "levycds/swap_contracts.hpp"

namespace levycds {

/// Simulation settings. Paths are independent and each draws from its own
/// generator seeded from (seed, path index), so results do not depend on
/// `threads`.
///
/// With bridge_correction on, Brownian motion between jump epochs is advanced
/// in steps whose barrier crossings are detected with the exact Brownian-bridge
/// probability and timed with the exact conditional hitting-time law. `dt` is
/// then the smallest step taken, and with two barriers active the step is also
/// capped so that crossing both inside one step is negligible. With
/// bridge_correction off, the path is observed on a fixed `dt` grid only.
struct PathSimConfig {
    std::int64_t n_paths = 100000;
    double dt = 1e-3;
    double horizon = 700.0;
    std::uint64_t seed = 20240601;
    bool bridge_correction = true;
    int threads = 1;
    double truncation_tolerance = 1e-6;
};

/// Throws InvalidSimConfig on bad fields; for perpetual estimates also
/// requires horizon * r >= 20.
void validate(const PathSimConfig& cfg, double r, bool perpetual);

struct MCEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::int64_t n = 0;
    double truncated_fraction = 0.0;
};

enum class ExitKind { Lower, Upper, Horizon };

struct ExitEvent {
    double t = 0.0;
    double x = 0.0;
    ExitKind kind = ExitKind::Horizon;
    bool creep = false;  // reached the lower level continuously
};

/// One simulated path of X. run_to_exit() advances the path until it leaves
/// (lower, upper) or time reaches t_max; it can be called again to continue
/// from the stopping point with other levels.
class PathEngine {
public:
    PathEngine(const LevyModel& model, const PathSimConfig& cfg, std::uint64_t path_id, double x0);

    ExitEvent run_to_exit(double lower, double upper, double t_max);

    double time() const noexcept { return t_; }
    double state() const noexcept { return x_; }

private:
    double next_jump_size();
    double hitting_time(double a, double b, double span);

    const LevyModel& model_;
    const PathSimConfig& cfg_;
    std::mt19937_64 jump_rng_;
    std::mt19937_64 diff_rng_;
    std::normal_distribution<double> normal_;
    std::uniform_real_distribution<double> uniform_;
    double t_ = 0.0;
    double x_ = 0.0;
    double next_jump_ = 0.0;
};

struct FirstPassage {
    double theta = 0.0;
    double x_at_theta = 0.0;
    bool creep = false;
    bool alive = false;  // no default before the horizon
};

std::vector<FirstPassage> simulate_first_passage(const LevyModel& model, double x,
                                                 const PathSimConfig& cfg);

/// Generic estimator over cfg.n_paths paths: `fn(path_id, out)` fills one
/// value per output slot (typically from PathEngine(model, cfg, path_id, x))
/// and returns true when the path was cut at the horizon.
using PathFunctional = std::function<bool(std::uint64_t, std::span<double>)>;
std::vector<MCEstimate> estimate_path_functionals(const LevyModel& model, const PathSimConfig& cfg,
                                                  std::size_t n_outputs, const PathFunctional& fn);

/// Keys: zeta = E[e^{-r theta}], jump_default = E[e^{-r theta}; X_theta < 0],
/// creep_default = E[e^{-r theta}; X_theta = 0]; with T also
/// zeta_T = E[e^{-r theta}; theta <= T], survival_T = P(theta > T),
/// premium_tail = E[1{theta >= T} int_T^theta e^{-rt} dt],
/// fee_tail = E[1{theta >= T} e^{-rT}] and protection_tail = E[1{theta >= T} e^{-r theta}].
std::map<std::string, MCEstimate> estimate_default_functionals(const LevyModel& model, double x,
                                                               const PathSimConfig& cfg,
                                                               std::optional<double> T = std::nullopt);

/// E^x[e^{-r tau_A^-}; X(tau_A^-) < 0].
MCEstimate estimate_gamma(const LevyModel& model, double x, double A, const PathSimConfig& cfg);

/// Exercise rule. UpCross(B): first time X >= B. DownCross(A) with A > 0:
/// first time X <= A while X > 0. DownCross(0): at default, only if X creeps
/// to 0. Never: no exercise.
struct Policy {
    enum class Kind { UpCross, DownCross, Never };
    Kind kind = Kind::Never;
    double level = 0.0;

    static Policy up(double B) { return {Kind::UpCross, B}; }
    static Policy down(double A) { return {Kind::DownCross, A}; }
    static Policy never() { return {Kind::Never, 0.0}; }
};

/// Policy that implements a solved threshold.
Policy policy_from(const StoppingSolution& sol);

/// Contract: the holder's full cash flows (V for callable, U for putable).
/// OptionLeg: only the change in those flows caused by exercising.
enum class Valuation { Contract, OptionLeg };

/// Discounted cash flows of `spec` under `policy`, truncated at `maturity`
/// when given (exercise counts only before maturity and default). Throws
/// HorizonTooShort for perpetual runs whose truncation error may exceed
/// cfg.truncation_tolerance.
MCEstimate evaluate_policy(const LevyModel& model, double x, const ContractSpec& spec,
                           const Policy& policy, const PathSimConfig& cfg,
                           std::optional<double> maturity = std::nullopt,
                           Valuation mode = Valuation::Contract);

/// Several policies on the same seeds. Returns one estimate per policy and,
/// after them, the paired differences policy[i] - policy[0] for i >= 1.
std::vector<MCEstimate> evaluate_policies(const LevyModel& model, double x, const ContractSpec& spec,
                                          const std::vector<Policy>& policies, const PathSimConfig& cfg,
                                          std::optional<double> maturity = std::nullopt,
                                          Valuation mode = Valuation::Contract);

}  // namespace levycds
