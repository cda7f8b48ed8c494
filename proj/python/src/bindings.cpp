#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "levycds/cli.hpp"
#include "levycds/error.hpp"
#include "levycds/finite_maturity.hpp"
#include "levycds/montecarlo.hpp"
#include "levycds/swap_contracts.hpp"

namespace py = pybind11;
using namespace levycds;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Perpetual step-up/step-down CDS pricing under a spectrally negative Levy model";

    py::register_exception<Error>(m, "LevyCdsError");

    py::class_<JumpPhase>(m, "JumpPhase")
        .def(py::init([](double w, double r) { return JumpPhase{w, r}; }), py::arg("weight"), py::arg("rate"))
        .def_readonly("weight", &JumpPhase::weight)
        .def_readonly("rate", &JumpPhase::rate);

    py::enum_<CalibrationFree>(m, "CalibrationFree")
        .value("Drift", CalibrationFree::Drift)
        .value("JumpRate", CalibrationFree::JumpRate);

    py::class_<LevyModel>(m, "LevyModel")
        .def_property_readonly("drift", &LevyModel::drift)
        .def_property_readonly("sigma", &LevyModel::sigma)
        .def_property_readonly("jump_rate", &LevyModel::jump_rate)
        .def_property_readonly("rate", &LevyModel::rate)
        .def_property_readonly("phases", &LevyModel::phases)
        .def("psi", &LevyModel::psi)
        .def("tail", &LevyModel::tail);

    m.def("build_model", &build_model, py::arg("drift"), py::arg("sigma"), py::arg("jump_rate"),
          py::arg("phases"), py::arg("rate_r"));
    m.def("calibrate_risk_neutral", &calibrate_risk_neutral, py::arg("model"),
          py::arg("free") = CalibrationFree::Drift);

    py::class_<RootSet>(m, "RootSet")
        .def_readonly("phi_r", &RootSet::phi_r)
        .def_readonly("negative_roots", &RootSet::negative_roots)
        .def_readonly("degree", &RootSet::degree);
    m.def("find_roots", &find_roots);

    py::class_<ScaleFunction>(m, "ScaleFunction")
        .def_property_readonly("phi", &ScaleFunction::phi)
        .def_property_readonly("rate", &ScaleFunction::rate)
        .def("W", &ScaleFunction::W)
        .def("W_prime", &ScaleFunction::W_prime)
        .def("Z", &ScaleFunction::Z)
        .def("zeta", &ScaleFunction::zeta)
        .def("laplace_selfcheck", &ScaleFunction::laplace_selfcheck);
    m.def("build_scale", py::overload_cast<const LevyModel&>(&build_scale));

    py::enum_<Orientation>(m, "Orientation")
        .value("StepDown", Orientation::StepDown)
        .value("StepUp", Orientation::StepUp);

    py::class_<SwitchTriplet>(m, "SwitchTriplet")
        .def_readonly("p_check", &SwitchTriplet::p_check)
        .def_readonly("a_check", &SwitchTriplet::a_check)
        .def_readonly("gamma", &SwitchTriplet::gamma)
        .def_readonly("orientation", &SwitchTriplet::orientation);
    m.def("normalize_triplet", &normalize_triplet, py::arg("p_check"), py::arg("a_check"), py::arg("gamma"));

    m.def("perpetual_cds_value", &perpetual_cds_value, py::arg("sf"), py::arg("x"), py::arg("p"), py::arg("alpha"));
    m.def("perpetual_spread", &perpetual_spread, py::arg("sf"), py::arg("x"), py::arg("alpha"));
    m.def("payoff_h", &payoff_h);
    m.def("payoff_g", &payoff_g);
    m.def("big_G", &big_G);
    m.def("rho", py::overload_cast<const ScaleFunction&, double>(&rho));
    m.def("big_Gamma", &big_Gamma, py::arg("sf"), py::arg("x"), py::arg("A"));

    py::enum_<Side>(m, "Side").value("BuyerUpCross", Side::BuyerUpCross).value("SellerDownCross", Side::SellerDownCross);
    py::enum_<CaseTag>(m, "CaseTag")
        .value("Interior", CaseTag::Interior)
        .value("Immediate", CaseTag::Immediate)
        .value("Never", CaseTag::Never)
        .value("CreepAtZero", CaseTag::CreepAtZero);

    py::class_<StoppingSolution>(m, "StoppingSolution")
        .def_readonly("side", &StoppingSolution::side)
        .def_readonly("case_tag", &StoppingSolution::case_tag)
        .def_readonly("threshold", &StoppingSolution::threshold)
        .def_readonly("trip", &StoppingSolution::trip)
        .def_readonly("fit_residual", &StoppingSolution::fit_residual)
        .def("value", [](const StoppingSolution& s, double x) { return value(s, x); });
    m.def("solve_B_star", &solve_B_star);
    m.def("solve_A_star", &solve_A_star);
    m.def("varrho", &varrho);

    py::enum_<ContractSide>(m, "ContractSide")
        .value("Callable", ContractSide::Callable)
        .value("Putable", ContractSide::Putable);
    py::enum_<ContractKind>(m, "ContractKind")
        .value("Vanilla", ContractKind::Vanilla)
        .value("Cancellation", ContractKind::Cancellation)
        .value("StepDown", ContractKind::StepDown)
        .value("StepUp", ContractKind::StepUp);

    py::class_<ContractSpec>(m, "ContractSpec")
        .def(py::init([](double p, double p_hat, double alpha, double alpha_hat, double gamma, ContractSide side,
                         std::optional<double> maturity) {
                 return ContractSpec{p, p_hat, alpha, alpha_hat, gamma, side, maturity};
             }),
             py::arg("p"), py::arg("p_hat"), py::arg("alpha") = 1.0, py::arg("alpha_hat") = 1.0,
             py::arg("gamma") = 0.0, py::arg("side") = ContractSide::Callable, py::arg("maturity") = py::none())
        .def_readwrite("p", &ContractSpec::p)
        .def_readwrite("p_hat", &ContractSpec::p_hat)
        .def_readwrite("alpha", &ContractSpec::alpha)
        .def_readwrite("alpha_hat", &ContractSpec::alpha_hat)
        .def_readwrite("gamma", &ContractSpec::gamma)
        .def_readwrite("side", &ContractSpec::side)
        .def_readwrite("maturity", &ContractSpec::maturity);
    m.def("classify", &classify);
    m.def("option_leg_solution", &option_leg_solution);
    m.def("value_V", &value_V);
    m.def("value_U", &value_U);
    m.def("contract_value", &contract_value);
    m.def("mirror_spec", &mirror_spec);
    m.def("parity_check", &parity_check);

    py::class_<SpreadTemplate>(m, "SpreadTemplate")
        .def(py::init([](double q, double alpha, double alpha_hat, double gamma, ContractSide side) {
                 return SpreadTemplate{q, alpha, alpha_hat, gamma, side};
             }),
             py::arg("q"), py::arg("alpha") = 1.0, py::arg("alpha_hat") = 1.0, py::arg("gamma") = 0.0,
             py::arg("side") = ContractSide::Callable)
        .def("at", &SpreadTemplate::at);
    py::class_<SpreadResult>(m, "SpreadResult")
        .def_readonly("p_star", &SpreadResult::p_star)
        .def_readonly("iterations", &SpreadResult::iterations)
        .def_readonly("bracket", &SpreadResult::bracket)
        .def_readonly("residual", &SpreadResult::residual);
    m.def("credit_spread", &credit_spread);

    py::class_<PathSimConfig>(m, "PathSimConfig")
        .def(py::init<>())
        .def_readwrite("n_paths", &PathSimConfig::n_paths)
        .def_readwrite("dt", &PathSimConfig::dt)
        .def_readwrite("horizon", &PathSimConfig::horizon)
        .def_readwrite("seed", &PathSimConfig::seed)
        .def_readwrite("bridge_correction", &PathSimConfig::bridge_correction)
        .def_readwrite("threads", &PathSimConfig::threads)
        .def_readwrite("truncation_tolerance", &PathSimConfig::truncation_tolerance);
    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("mean", &MCEstimate::mean)
        .def_readonly("se", &MCEstimate::se)
        .def_readonly("n", &MCEstimate::n)
        .def_readonly("truncated_fraction", &MCEstimate::truncated_fraction);
    py::class_<Policy>(m, "Policy")
        .def_static("up", &Policy::up)
        .def_static("down", &Policy::down)
        .def_static("never", &Policy::never)
        .def_readonly("level", &Policy::level);
    m.def("policy_from", &policy_from);
    m.def("estimate_default_functionals", &estimate_default_functionals, py::arg("model"), py::arg("x"),
          py::arg("cfg"), py::arg("T") = py::none());
    m.def("estimate_gamma", &estimate_gamma);
    m.def("evaluate_policy",
          [](const LevyModel& model, double x, const ContractSpec& spec, const Policy& policy,
             const PathSimConfig& cfg) { return evaluate_policy(model, x, spec, policy, cfg); },
          py::call_guard<py::gil_scoped_release>());

    m.def("solve_C_star", &solve_C_star);
    m.def("short_maturity_spread", &short_maturity_spread);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
