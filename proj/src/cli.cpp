#include "levycds/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <sstream>
#include <variant>

#include "levycds/config.hpp"
#include "levycds/error.hpp"
#include "levycds/finite_maturity.hpp"
#include "levycds/verify.hpp"

namespace levycds::cli {

namespace {

using Cell = std::variant<double, std::string>;

class Table {
public:
    explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<Cell> row) {
        if (row.size() != header_.size()) throw std::logic_error("row width does not match header");
        rows_.push_back(std::move(row));
    }

    void write(std::ostream& os, int precision) const {
        std::ostringstream ss;
        ss.imbue(std::locale::classic());
        ss << std::setprecision(precision);
        for (std::size_t i = 0; i < header_.size(); ++i) ss << (i ? "," : "") << header_[i];
        ss << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) ss << ',';
                if (const double* d = std::get_if<double>(&row[i])) {
                    if (std::isinf(*d)) {
                        ss << (*d > 0 ? "inf" : "-inf");
                    } else if (std::isnan(*d)) {
                        ss << "nan";
                    } else {
                        ss << *d;
                    }
                } else {
                    ss << std::get<std::string>(row[i]);
                }
            }
            ss << '\n';
        }
        os << ss.str();
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

struct Options {
    std::string config_path;
    std::string output_path;
    std::optional<std::uint64_t> seed;
    std::string profile = "full";
    std::string paths_csv;
    double x_max = 5.0;
    int points = 101;
};

struct Context {
    RunConfig cfg;
    const Options& opt;

    PathSimConfig mc() const {
        PathSimConfig m = cfg.mc;
        if (opt.profile == "test") m.n_paths = cfg.test_paths;
        if (opt.seed) m.seed = *opt.seed;
        return m;
    }
};

const char* boolstr(bool b) { return b ? "true" : "false"; }

std::vector<double> or_default(const std::vector<double>& v, std::vector<double> fallback) {
    return v.empty() ? fallback : v;
}

Table cmd_calibrate(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const RootSet roots = find_roots(m, m.rate());
    Table t({"parameter", "value"});
    t.add({"drift", m.drift()});
    t.add({"sigma", m.sigma()});
    t.add({"jump_rate", m.jump_rate()});
    t.add({"r", m.rate()});
    for (std::size_t i = 0; i < m.phases().size(); ++i) {
        t.add({"weight_" + std::to_string(i + 1), m.phases()[i].weight});
        t.add({"rate_" + std::to_string(i + 1), m.phases()[i].rate});
    }
    t.add({"psi_1", m.psi(1.0)});
    t.add({"phi_r", roots.phi_r});
    for (std::size_t i = 0; i < roots.negative_roots.size(); ++i) {
        t.add({"negative_root_" + std::to_string(i + 1), roots.negative_roots[i]});
    }
    t.add({"degree", static_cast<double>(roots.degree)});
    return t;
}

Table cmd_scale_table(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    std::vector<double> xs = c.cfg.sweep.variable == "x" ? c.cfg.sweep.values : std::vector<double>{};
    if (xs.empty()) {
        const int n = std::max(2, c.opt.points);
        for (int i = 0; i < n; ++i) xs.push_back(c.opt.x_max * i / (n - 1));
    }
    Table t({"x", "W", "W_prime", "Z", "zeta"});
    for (double x : xs) t.add({x, sf.W(x), x > 0.0 ? sf.W_prime(x) : sf.W_prime0(), sf.Z(x), sf.zeta(x)});
    return t;
}

Table cmd_price(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const double x = c.cfg.contract.x;
    const ContractSpec spec = make_contract(c.cfg.contract, sf);
    const StoppingSolution sol = option_leg_solution(sf, spec);
    Table t({"quantity", "value"});
    t.add({"x", x});
    t.add({"side", to_string(spec.side)});
    t.add({"kind", to_string(classify(spec))});
    t.add({"p", spec.p});
    t.add({"p_hat", spec.p_hat});
    t.add({"alpha", spec.alpha});
    t.add({"alpha_hat", spec.alpha_hat});
    t.add({"gamma", spec.gamma});
    t.add({"zeta", sf.zeta(x)});
    t.add({"vanilla_spread", perpetual_spread(sf, x, spec.alpha)});
    t.add({"cds_value", perpetual_cds_value(sf, x, spec.p, spec.alpha)});
    t.add({"exercise_problem", to_string(sol.side)});
    t.add({"case_tag", to_string(sol.case_tag)});
    t.add({"threshold", sol.threshold});
    t.add({"option_leg", value(sol, x)});
    t.add({"contract_value", contract_value(sf, x, spec)});
    return t;
}

Table cmd_threshold(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const ContractSpec spec = make_contract(c.cfg.contract, sf);
    const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
    Table t({"side", "case_tag", "threshold", "fit_residual"});
    for (const StoppingSolution& s : {solve_B_star(sf, trip), solve_A_star(sf, trip)}) {
        t.add({to_string(s.side), to_string(s.case_tag), s.threshold, s.fit_residual});
    }
    return t;
}

struct Spreads {
    double callable, putable, vanilla;
};

Spreads spreads_at(const ScaleFunction& sf, double x, SpreadTemplate tpl) {
    Spreads s{};
    tpl.side = ContractSide::Callable;
    s.callable = credit_spread(sf, x, tpl).p_star;
    tpl.side = ContractSide::Putable;
    s.putable = credit_spread(sf, x, tpl).p_star;
    s.vanilla = perpetual_spread(sf, x, tpl.alpha);
    return s;
}

Table cmd_spread(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const double x = c.cfg.contract.x;
    const Spreads s = spreads_at(sf, x, spread_template(c.cfg.contract));
    Table t({"x", "p_star_callable", "p_star_putable", "p_star_vanilla"});
    t.add({x, s.callable, s.putable, s.vanilla});
    return t;
}

std::vector<double> sweep_lambdas(const Context& c) {
    if (c.cfg.model.calibrate_free == CalibrationFree::JumpRate) {
        throw Error(ErrorCode::InvalidConfig, "lambda sweeps need calibrate_free = drift or none");
    }
    return or_default(c.cfg.sweep.lambdas, {c.cfg.model.jump_rate});
}

Table sweep_x(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const SpreadTemplate tpl = spread_template(c.cfg.contract);
    Table t({"x", "p_star_callable", "p_star_putable", "p_star_vanilla"});
    for (double x : or_default(c.cfg.sweep.values, {0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5, 2.75, 3.0})) {
        const Spreads s = spreads_at(sf, x, tpl);
        t.add({x, s.callable, s.putable, s.vanilla});
    }
    return t;
}

Table sweep_p(const Context& c) {
    const SpreadTemplate tpl = spread_template(c.cfg.contract);
    Table t({"lambda", "p", "B_star", "A_star", "buyer_case", "seller_case"});
    for (double lam : sweep_lambdas(c)) {
        const LevyModel m = make_model(c.cfg.model, lam);
        const ScaleFunction sf = build_scale(m, m.rate());
        for (double p : or_default(c.cfg.sweep.values, {0.02, 0.04, 0.06, 0.08, 0.1, 0.12, 0.14, 0.16, 0.18, 0.2})) {
            const ContractSpec spec = tpl.at(p);
            const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
            const StoppingSolution b = solve_B_star(sf, trip);
            const StoppingSolution a = solve_A_star(sf, trip);
            t.add({lam, p, b.threshold, a.threshold, to_string(b.case_tag), to_string(a.case_tag)});
        }
    }
    return t;
}

Table sweep_lambda(const Context& c) {
    Table t({"lambda", "drift", "p", "B_star", "A_star", "p_star_callable", "p_star_putable", "p_star_vanilla"});
    ModelSection ms = c.cfg.model;
    std::vector<double> lams = c.cfg.sweep.values;
    if (lams.empty()) lams = or_default(c.cfg.sweep.lambdas, {0.5, 1.0, 1.5, 2.0, 2.5});
    if (ms.calibrate_free == CalibrationFree::JumpRate) {
        throw Error(ErrorCode::InvalidConfig, "lambda sweeps need calibrate_free = drift or none");
    }
    const double x = c.cfg.contract.x;
    for (double lam : lams) {
        const LevyModel m = make_model(ms, lam);
        const ScaleFunction sf = build_scale(m, m.rate());
        const ContractSpec spec = make_contract(c.cfg.contract, sf);
        const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
        const Spreads s = spreads_at(sf, x, spread_template(c.cfg.contract));
        t.add({lam, m.drift(), spec.p, solve_B_star(sf, trip).threshold, solve_A_star(sf, trip).threshold,
               s.callable, s.putable, s.vanilla});
    }
    return t;
}

const std::vector<double> kDefaultMaturities{1.0, 5.0, 20.0, 100.0};

Table sweep_T(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const double x = c.cfg.contract.x;
    const ContractSpec spec = make_contract(c.cfg.contract, sf);
    const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
    const StoppingSolution b = solve_B_star(sf, trip);
    const StoppingSolution a = solve_A_star(sf, trip);
    const BoundaryReport rep = boundary_report(b, a, solve_C_star(m, trip), trip.gamma);
    const PathSimConfig mc = c.mc();
    Table t({"T", "v_lower", "v_center", "v_upper", "u_lower", "u_center", "u_upper", "buyer_boundary",
             "seller_boundary"});
    for (double T : or_default(c.cfg.sweep.values, kDefaultMaturities)) {
        const FiniteApprox v = approx_v_bar(b, x, T, mc);
        const FiniteApprox u = approx_u_bar(a, x, T, mc);
        t.add({T, v.lower, v.center, v.upper, u.lower, u.center, u.upper, rep.buyer_boundary(T),
               rep.seller_boundary(T)});
    }
    return t;
}

Table cmd_sweep(const Context& c) {
    const std::string& v = c.cfg.sweep.variable;
    if (v == "x") return sweep_x(c);
    if (v == "p") return sweep_p(c);
    if (v == "lambda") return sweep_lambda(c);
    return sweep_T(c);
}

Table cmd_finite(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const double x = c.cfg.contract.x;
    const ContractSpec spec = make_contract(c.cfg.contract, sf);
    const SwitchTriplet trip = normalize_triplet(spec.p_check(), spec.a_check(), spec.gamma);
    const StoppingSolution b = solve_B_star(sf, trip);
    const StoppingSolution a = solve_A_star(sf, trip);
    const PathSimConfig mc = c.mc();

    std::vector<double> Ts;
    if (c.cfg.sweep.variable == "T") Ts = c.cfg.sweep.values;
    if (Ts.empty() && c.cfg.contract.maturity) Ts = {*c.cfg.contract.maturity};
    if (Ts.empty()) Ts = kDefaultMaturities;

    Table t({"x", "T", "side", "lower", "center", "upper", "policy_value", "se"});
    for (double T : Ts) {
        const FiniteApprox v = approx_v_bar(b, x, T, mc);
        const MCEstimate pv = policy_value_finite(m, x, T, policy_from(b), trip, b.side, mc);
        t.add({x, T, to_string(b.side), v.lower, v.center, v.upper, pv.mean, pv.se});
        const FiniteApprox u = approx_u_bar(a, x, T, mc);
        const MCEstimate pu = policy_value_finite(m, x, T, policy_from(a), trip, a.side, mc);
        t.add({x, T, to_string(a.side), u.lower, u.center, u.upper, pu.mean, pu.se});
    }
    return t;
}

Table cmd_simulate(const Context& c) {
    const LevyModel m = make_model(c.cfg.model);
    const ScaleFunction sf = build_scale(m, m.rate());
    const double x = c.cfg.contract.x;
    const PathSimConfig mc = c.mc();
    const auto est = estimate_default_functionals(m, x, mc, c.cfg.contract.maturity);

    if (!c.opt.paths_csv.empty()) {
        const double r = m.rate();
        const double alpha = c.cfg.contract.alpha;
        const double p = c.cfg.contract.p.value_or(perpetual_spread(sf, x, alpha));
        Table raw({"path_id", "theta", "X_at_theta", "creep", "discounted_payoff"});
        const auto paths = simulate_first_passage(m, x, mc);
        for (std::size_t i = 0; i < paths.size(); ++i) {
            const FirstPassage& fp = paths[i];
            const double end = fp.alive ? mc.horizon : fp.theta;
            double pay = -p * (1.0 - std::exp(-r * end)) / r;
            if (!fp.alive) pay += alpha * std::exp(-r * fp.theta);
            raw.add({static_cast<double>(i), fp.alive ? std::numeric_limits<double>::infinity() : fp.theta,
                     fp.x_at_theta, boolstr(fp.creep), pay});
        }
        std::ofstream f(c.opt.paths_csv);
        if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write '" + c.opt.paths_csv + "'");
        raw.write(f, c.cfg.output.precision);
    }

    Table t({"quantity", "mean", "se", "analytic", "n_paths", "truncated_fraction"});
    for (const auto& [key, e] : est) {
        double analytic = std::numeric_limits<double>::quiet_NaN();
        if (key == "zeta") analytic = sf.zeta(x);
        t.add({key, e.mean, e.se, analytic, static_cast<double>(e.n), e.truncated_fraction});
    }
    if (c.cfg.contract.maturity) return t;

    const ContractSpec spec = make_contract(c.cfg.contract, sf);
    const StoppingSolution sol = option_leg_solution(sf, spec);
    const auto row = [&](const std::string& key, const MCEstimate& e, double analytic) {
        t.add({key, e.mean, e.se, analytic, static_cast<double>(e.n), e.truncated_fraction});
    };
    if (sol.side == Side::SellerDownCross && sol.case_tag == CaseTag::Interior && sol.threshold < x &&
        m.has_jumps()) {
        row("Gamma", estimate_gamma(m, x, sol.threshold, mc), big_Gamma(sf, x, sol.threshold));
    }
    row(spec.side == ContractSide::Callable ? "V" : "U", evaluate_policy(m, x, spec, policy_from(sol), mc),
        contract_value(sf, x, spec));
    return t;
}

Table cmd_verify(const Context& c, bool& all_passed) {
    const LevyModel m = make_model(c.cfg.model);
    VerifyOptions vo;
    vo.x = c.cfg.contract.x;
    vo.tpl = spread_template(c.cfg.contract);
    vo.mc = c.mc();
    Table t({"check", "passed", "value", "tolerance", "detail"});
    all_passed = true;
    for (const CheckResult& r : verify_suite(m, vo)) {
        all_passed = all_passed && r.passed;
        std::string detail = r.detail;
        std::replace(detail.begin(), detail.end(), ',', ';');
        t.add({r.name, boolstr(r.passed), r.value, r.tolerance, detail});
    }
    return t;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Perpetual step-up/step-down CDS pricing under a spectrally negative Levy model"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--config", opt.config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--output", opt.output_path, "CSV output path (default: config output.csv, else stdout)");
    app.add_option("--seed", opt.seed, "Override mc.seed");
    app.add_option("--profile", opt.profile, "MC sizes: full or test")->check(CLI::IsMember({"full", "test"}));

    const std::vector<std::pair<std::string, std::string>> subs{
        {"calibrate", "Calibrated model parameters and roots"},
        {"scale-table", "W, W', Z and zeta on a grid"},
        {"price", "Contract value and option leg at x"},
        {"spread", "Credit spreads at x"},
        {"threshold", "Optimal exercise thresholds"},
        {"sweep", "Threshold or spread sweeps"},
        {"finite", "Finite-maturity bounds and policy values"},
        {"simulate", "Monte Carlo default functionals"},
        {"verify", "Invariant suite"},
    };
    std::map<std::string, CLI::App*> cmd;
    for (const auto& [name, help] : subs) cmd[name] = app.add_subcommand(name, help);
    cmd["scale-table"]->add_option("--x-max", opt.x_max, "Grid end when the config has no x grid");
    cmd["scale-table"]->add_option("--points", opt.points, "Grid size when the config has no x grid");
    cmd["simulate"]->add_option("--paths-csv", opt.paths_csv, "Write per-path first-passage data here");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::string name;
    for (const auto& [n, sub] : cmd) {
        if (sub->parsed()) name = n;
    }

    try {
        Context ctx{load_config(opt.config_path), opt};
        bool passed = true;
        Table table = name == "calibrate"     ? cmd_calibrate(ctx)
                      : name == "scale-table" ? cmd_scale_table(ctx)
                      : name == "price"       ? cmd_price(ctx)
                      : name == "spread"      ? cmd_spread(ctx)
                      : name == "threshold"   ? cmd_threshold(ctx)
                      : name == "sweep"       ? cmd_sweep(ctx)
                      : name == "finite"      ? cmd_finite(ctx)
                      : name == "simulate"    ? cmd_simulate(ctx)
                                              : cmd_verify(ctx, passed);

        const std::string path = opt.output_path.empty() ? ctx.cfg.output.csv : opt.output_path;
        if (path.empty()) {
            table.write(out, ctx.cfg.output.precision);
        } else {
            std::ofstream f(path);
            if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write '" + path + "'");
            table.write(f, ctx.cfg.output.precision);
        }
        if (!passed) {
            err << "verification failed\n";
            return kExitVerify;
        }
        return kExitOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == ErrorCode::InvalidConfig ? kExitConfig : kExitCompute;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitCompute;
    }
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace levycds::cli
