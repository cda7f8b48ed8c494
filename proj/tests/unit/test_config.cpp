#include <doctest.h>

#include <levycds/cli.hpp>
#include <levycds/config.hpp>
#include <levycds/error.hpp>
#include <sstream>

using namespace levycds;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::DomainError;
}

const char* kMinimal = R"({
  "model": {"sigma": 0.2, "r": 0.03},
  "contract": {"x": 1.5, "q": 0.5, "gamma": 0.005}
})";

}  // namespace

TEST_CASE("parse a minimal config") {
    const RunConfig rc = parse_config(kMinimal);
    const LevyModel m = make_model(rc.model);
    CHECK(m.drift() == doctest::Approx(0.01));
    const ScaleFunction sf = build_scale(m);
    const ContractSpec s = make_contract(rc.contract, sf);
    CHECK(s.p == doctest::Approx(perpetual_spread(sf, 1.5, 1.0)));
    CHECK(s.p_hat == doctest::Approx(0.5 * s.p));
    CHECK(s.alpha_hat == doctest::Approx(0.5));
    CHECK(rc.output.precision == 10);
}

TEST_CASE("config errors") {
    CHECK(code_of([] { parse_config("{"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": 0.2, "vol": 1}})"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": 0.2}, "extra": {}})"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": "high"}})"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": -0.2}})"); }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] {
              parse_config(R"({"model": {"sigma": 0.2}, "contract": {"q": 0.5, "p_hat": 0.01}})");
          }) == ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": 0.2}, "mc": {"dt": -1}})"); }) ==
          ErrorCode::InvalidConfig);
    CHECK(code_of([] { parse_config(R"({"model": {"sigma": 0.2}, "sweep": {"variable": "y"}})"); }) ==
          ErrorCode::InvalidConfig);
}

TEST_CASE("grids") {
    const RunConfig rc = parse_config(
        R"({"model": {"sigma": 0.2}, "sweep": {"variable": "p", "grid": {"start": 0.01, "stop": 0.05, "num": 5}}})");
    REQUIRE(rc.sweep.values.size() == 5);
    CHECK(rc.sweep.values[4] == doctest::Approx(0.05));
}

TEST_CASE("cli exit codes") {
    std::ostringstream out, err;
    CHECK(cli::run({"price"}, out, err) == cli::kExitConfig);
    CHECK(cli::run({"bogus", "--config", "x.json"}, out, err) == cli::kExitConfig);
    CHECK(cli::run({"--help"}, out, err) == cli::kExitOk);
}
