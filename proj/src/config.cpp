#include "levycds/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "levycds/error.hpp"

namespace levycds {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); }

void reject_unknown(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail("section '" + section + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) fail("unknown key '" + section + "." + key + "'");
    }
}

double number(const json& obj, const std::string& key, const std::string& section) {
    const json& v = obj.at(key);
    if (!v.is_number()) fail("'" + section + "." + key + "' must be a number");
    return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const std::string& key, const std::string& section) {
    if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
    return number(obj, key, section);
}

template <class T>
T get_or(const json& obj, const std::string& key, T fallback, const std::string& section) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception&) {
        fail("'" + section + "." + key + "' has the wrong type");
    }
}

std::vector<double> parse_grid(const json& g, const std::string& where) {
    if (g.is_array()) {
        std::vector<double> out;
        for (const auto& v : g) {
            if (!v.is_number()) fail("'" + where + "' must hold numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
    reject_unknown(g, where, {"start", "stop", "num"});
    const double a = number(g, "start", where);
    const double b = number(g, "stop", where);
    const int n = get_or<int>(g, "num", 0, where);
    if (n < 1) fail("'" + where + ".num' must be >= 1");
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return out;
}

ModelSection parse_model(const json& j) {
    reject_unknown(j, "model", {"drift", "sigma", "jump_rate", "phases", "r", "calibrate_free"});
    ModelSection m;
    m.drift = optional_number(j, "drift", "model");
    m.sigma = get_or<double>(j, "sigma", 0.0, "model");
    m.jump_rate = get_or<double>(j, "jump_rate", 0.0, "model");
    m.r = get_or<double>(j, "r", 0.03, "model");
    if (j.contains("phases")) {
        if (!j.at("phases").is_array()) fail("'model.phases' must be an array");
        for (const auto& ph : j.at("phases")) {
            reject_unknown(ph, "model.phases[]", {"weight", "rate"});
            m.phases.push_back({number(ph, "weight", "model.phases[]"), number(ph, "rate", "model.phases[]")});
        }
    }
    const std::string free = get_or<std::string>(j, "calibrate_free", "drift", "model");
    if (free == "drift") {
        m.calibrate_free = CalibrationFree::Drift;
    } else if (free == "jump_rate") {
        m.calibrate_free = CalibrationFree::JumpRate;
    } else if (free == "none") {
        m.calibrate_free = std::nullopt;
    } else {
        fail("'model.calibrate_free' must be drift, jump_rate or none");
    }
    if (m.calibrate_free != CalibrationFree::Drift && !m.drift) fail("'model.drift' is required");
    return m;
}

ContractSection parse_contract(const json& j) {
    reject_unknown(j, "contract",
                   {"x", "p", "p_hat", "q", "alpha", "alpha_hat", "gamma", "side", "maturity"});
    ContractSection c;
    c.x = get_or<double>(j, "x", 1.5, "contract");
    c.p = optional_number(j, "p", "contract");
    c.p_hat = optional_number(j, "p_hat", "contract");
    c.q = optional_number(j, "q", "contract");
    c.alpha = get_or<double>(j, "alpha", 1.0, "contract");
    c.alpha_hat = optional_number(j, "alpha_hat", "contract");
    c.gamma = get_or<double>(j, "gamma", 0.0, "contract");
    c.maturity = optional_number(j, "maturity", "contract");
    const std::string side = get_or<std::string>(j, "side", "callable", "contract");
    if (side == "callable") {
        c.side = ContractSide::Callable;
    } else if (side == "putable") {
        c.side = ContractSide::Putable;
    } else {
        fail("'contract.side' must be callable or putable");
    }
    if (c.q && c.p_hat) fail("give either 'contract.q' or 'contract.p_hat', not both");
    if (c.q && *c.q < 0.0) fail("'contract.q' must be >= 0");
    if (c.alpha <= 0.0) fail("'contract.alpha' must be > 0");
    if (c.gamma < 0.0) fail("'contract.gamma' must be >= 0");
    if (c.maturity && *c.maturity <= 0.0) fail("'contract.maturity' must be > 0");
    return c;
}

SweepSection parse_sweep(const json& j) {
    reject_unknown(j, "sweep", {"variable", "grid", "lambdas"});
    SweepSection s;
    s.variable = get_or<std::string>(j, "variable", "x", "sweep");
    if (s.variable != "x" && s.variable != "p" && s.variable != "lambda" && s.variable != "T") {
        fail("'sweep.variable' must be x, p, lambda or T");
    }
    if (j.contains("grid")) s.values = parse_grid(j.at("grid"), "sweep.grid");
    if (j.contains("lambdas")) s.lambdas = parse_grid(j.at("lambdas"), "sweep.lambdas");
    return s;
}

void parse_mc(const json& j, RunConfig& rc) {
    reject_unknown(j, "mc", {"n_paths", "test_paths", "dt", "horizon", "seed", "bridge_correction", "threads",
                             "truncation_tolerance"});
    PathSimConfig& m = rc.mc;
    m.n_paths = get_or<std::int64_t>(j, "n_paths", m.n_paths, "mc");
    rc.test_paths = get_or<std::int64_t>(j, "test_paths", rc.test_paths, "mc");
    m.dt = get_or<double>(j, "dt", m.dt, "mc");
    m.horizon = get_or<double>(j, "horizon", m.horizon, "mc");
    m.seed = get_or<std::uint64_t>(j, "seed", m.seed, "mc");
    m.bridge_correction = get_or<bool>(j, "bridge_correction", m.bridge_correction, "mc");
    m.threads = get_or<int>(j, "threads", m.threads, "mc");
    m.truncation_tolerance = get_or<double>(j, "truncation_tolerance", m.truncation_tolerance, "mc");
    if (rc.test_paths <= 0) fail("'mc.test_paths' must be > 0");
    try {
        validate(m, 1.0, false);
    } catch (const Error& e) {
        fail(std::string("mc: ") + e.what());
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("malformed JSON: ") + e.what());
    }
    reject_unknown(j, "config", {"model", "contract", "sweep", "mc", "output"});
    if (!j.contains("model")) fail("missing 'model' section");

    RunConfig rc;
    try {
        rc.model = parse_model(j.at("model"));
        if (j.contains("contract")) rc.contract = parse_contract(j.at("contract"));
        if (j.contains("sweep")) rc.sweep = parse_sweep(j.at("sweep"));
        if (j.contains("mc")) parse_mc(j.at("mc"), rc);
        if (j.contains("output")) {
            const json& o = j.at("output");
            reject_unknown(o, "output", {"csv", "precision"});
            rc.output.csv = get_or<std::string>(o, "csv", "", "output");
            rc.output.precision = get_or<int>(o, "precision", 10, "output");
            if (rc.output.precision < 1 || rc.output.precision > 17) fail("'output.precision' must be in 1..17");
        }
    } catch (const json::exception& e) {
        fail(e.what());
    }

    // Validate the model itself up front so bad parameters count as config errors.
    try {
        (void)make_model(rc.model);
    } catch (const Error& e) {
        fail(std::string("model: ") + e.what());
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

LevyModel make_model(const ModelSection& m, std::optional<double> jump_rate) {
    const double lambda = jump_rate.value_or(m.jump_rate);
    auto phases = lambda > 0.0 ? m.phases : std::vector<JumpPhase>{};
    if (!m.calibrate_free) {
        return build_model(*m.drift, m.sigma, lambda, std::move(phases), m.r);
    }
    if (*m.calibrate_free == CalibrationFree::Drift) {
        // The drift is overwritten; any positive placeholder passes validation.
        const LevyModel base = build_model(m.drift.value_or(1.0), m.sigma, lambda, std::move(phases), m.r);
        return calibrate_risk_neutral(base, CalibrationFree::Drift);
    }
    // The jump rate is overwritten; use a placeholder so the phases are kept.
    const LevyModel base = build_model(*m.drift, m.sigma, lambda > 0.0 ? lambda : 1.0, m.phases, m.r);
    return calibrate_risk_neutral(base, CalibrationFree::JumpRate);
}

double template_q(const ContractSection& c) {
    if (c.q) return *c.q;
    if (c.p_hat && c.p && *c.p > 0.0) return *c.p_hat / *c.p;
    return 1.0;
}

SpreadTemplate spread_template(const ContractSection& c) {
    SpreadTemplate t;
    t.q = template_q(c);
    t.alpha = c.alpha;
    t.alpha_hat = c.alpha_hat.value_or(c.q ? *c.q * c.alpha : c.alpha);
    t.gamma = c.gamma;
    t.side = c.side;
    return t;
}

ContractSpec make_contract(const ContractSection& c, const ScaleFunction& sf) {
    ContractSpec s;
    s.p = c.p ? *c.p : perpetual_spread(sf, c.x, c.alpha);
    if (c.p_hat) {
        s.p_hat = *c.p_hat;
    } else {
        s.p_hat = c.q ? *c.q * s.p : s.p;
    }
    s.alpha = c.alpha;
    s.alpha_hat = c.alpha_hat.value_or(c.q ? *c.q * c.alpha : c.alpha);
    s.gamma = c.gamma;
    s.side = c.side;
    s.maturity = c.maturity;
    validate(s);
    return s;
}

}  // namespace levycds
