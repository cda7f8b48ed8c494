#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levycds/levy_model.hpp"
#include "levycds/montecarlo.hpp"
#include "levycds/swap_contracts.hpp"

namespace levycds {

struct ModelSection {
    std::optional<double> drift;  // required unless calibrated
    double sigma = 0.0;
    double jump_rate = 0.0;
    std::vector<JumpPhase> phases;
    double r = 0.03;
    std::optional<CalibrationFree> calibrate_free = CalibrationFree::Drift;
};

struct ContractSection {
    double x = 1.5;
    std::optional<double> p;  // absent: the vanilla spread at x
    std::optional<double> p_hat;
    std::optional<double> q;  // p_hat = q p and, unless given, alpha_hat = q alpha
    double alpha = 1.0;
    std::optional<double> alpha_hat;
    double gamma = 0.0;
    ContractSide side = ContractSide::Callable;
    std::optional<double> maturity;
};

struct SweepSection {
    std::string variable = "x";
    std::vector<double> values;
    std::vector<double> lambdas;
};

struct OutputSection {
    std::string csv;
    int precision = 10;
};

struct RunConfig {
    ModelSection model;
    ContractSection contract;
    SweepSection sweep;
    PathSimConfig mc;
    std::int64_t test_paths = 4000;
    OutputSection output;
};

/// Parses a JSON run configuration. Unknown keys, wrong types and
/// out-of-range values throw InvalidConfig.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

/// The model described by the config, with jump_rate overridden when given,
/// calibrated as requested.
LevyModel make_model(const ModelSection& m, std::optional<double> jump_rate = std::nullopt);

/// q used for the credit-spread template (1 when neither q nor p_hat fixes it).
double template_q(const ContractSection& c);
SpreadTemplate spread_template(const ContractSection& c);
/// Contract terms at x, resolving p to the vanilla spread when absent.
ContractSpec make_contract(const ContractSection& c, const ScaleFunction& sf);

}  // namespace levycds
