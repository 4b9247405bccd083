#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "srr/system_io.hpp"
#include "support/common.hpp"

using namespace srr;
using test::rats;

TEST_CASE("well-formed spec") {
    SystemSpecFile spec = parse_system_spec(
        R"({"K": 2, "mu": 1, "systematic": [1, 1], "coded": 1})");
    CHECK(spec.system.K == 2);
    CHECK(spec.system.node_count() == 3);
    CHECK(spec.system.mu == 1);
    CHECK(spec.system.systematic_counts() == std::vector<int>{1, 1});
    CHECK_FALSE(spec.default_mode.has_value());
    CHECK_FALSE(spec.grid_step.has_value());
}

TEST_CASE("mu defaults to 1 and parses exactly") {
    CHECK(parse_system_spec(R"({"K": 1, "systematic": [0], "coded": 2})")
              .system.mu == 1);
    CHECK(parse_system_spec(
              R"({"K": 1, "mu": 0.1, "systematic": [0], "coded": 2})")
              .system.mu == frac(1, 10));
    CHECK(parse_system_spec(
              R"({"K": 1, "mu": "2/3", "systematic": [0], "coded": 2})")
              .system.mu == frac(2, 3));
    CHECK(parse_system_spec(
              R"({"K": 1, "mu": 2, "systematic": [0], "coded": 2})")
              .system.mu == 2);
}

TEST_CASE("optional mode and grid step") {
    SystemSpecFile spec = parse_system_spec(
        R"({"K": 2, "systematic": [0, 0], "coded": 4, "mode": "float",
            "tol": "1e-6", "grid_step": 0.5})");
    REQUIRE(spec.default_mode.has_value());
    CHECK_FALSE(spec.default_mode->is_rational());
    CHECK(spec.default_mode->tol == frac(1, 1000000));
    CHECK(spec.grid_step == frac(1, 2));

    SystemSpecFile rational = parse_system_spec(
        R"({"K": 2, "systematic": [0, 0], "coded": 4, "mode": "rational"})");
    REQUIRE(rational.default_mode.has_value());
    CHECK(rational.default_mode->is_rational());
}

TEST_CASE("semantic validation") {
    CHECK_THROWS_AS(parse_system_spec(R"({"K": 2, "systematic": [1], "coded": 1})"),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        parse_system_spec(R"({"K": 0, "systematic": [], "coded": 1})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_system_spec(
            R"({"K": 1, "mu": 0, "systematic": [1], "coded": 0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_system_spec(
            R"({"K": 1, "systematic": [-1], "coded": 0})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_system_spec(
            R"({"K": 1, "systematic": [1], "coded": 0, "bogus": 1})"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        parse_system_spec(
            R"({"K": 1, "systematic": [1], "coded": 0, "tol": 0.1})"),
        std::invalid_argument);
    CHECK_THROWS_AS(parse_system_spec(R"({"systematic": [1], "coded": 0})"),
                    std::invalid_argument);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_system_spec("{\n  \"K\": 2,\n  \"systematic\": [1, 1\n}");
        FAIL("expected SpecParseError");
    } catch (const SpecParseError& e) {
        CHECK(e.line == 4);
        CHECK(e.column >= 1);
    }
}

TEST_CASE("witness files round-trip through JSON") {
    StorageSystem sys = test::example1_system();
    RepairGroupTable table = enumerate_repair_groups(sys);
    DemandVector demand{rats({"2", "1"})};
    FeasibilityWitness w = feasible(sys, table, demand, LpMode::rational());
    REQUIRE(w.feasible);

    std::ostringstream os;
    write_witness_json(os, demand, w);
    WitnessFile parsed = parse_witness_json(os.str());
    CHECK(parsed.feasible);
    CHECK(parsed.demand.lambda == demand.lambda);
    REQUIRE(parsed.strategy.has_value());
    CHECK(parsed.strategy->alpha == w.strategy->alpha);
    CHECK(parsed.binding_nodes == w.binding_nodes);
    CHECK(is_feasible_with_strategy(table, *parsed.strategy, parsed.demand,
                                    sys.node_count(), sys.mu));
}

TEST_CASE("missing spec file") {
    CHECK_THROWS_AS(load_system_spec("/no/such/file.json"), std::runtime_error);
}
