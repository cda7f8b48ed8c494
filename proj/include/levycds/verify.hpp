#pragma once

#include <string>
#include <vector>

#include "levycds/levy_model.hpp"
#include "levycds/montecarlo.hpp"
#include "levycds/swap_contracts.hpp"

namespace levycds {

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;      // worst residual, or a z-score for MC checks
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    double x = 1.5;
    SpreadTemplate tpl;
    PathSimConfig mc;
    bool run_mc = true;
};

/// Invariant suite over one model and contract template: scale-function
/// self-checks, fit conditions, domination, parity and spread identities,
/// and MC agreement at cfg.n_paths.
std::vector<CheckResult> verify_suite(const LevyModel& model, const VerifyOptions& opt);

}  // namespace levycds
