#include <doctest.h>

#include <algorithm>

#include "wsn/model.hpp"

#include <json.hpp>

using namespace wsn;

namespace {

bool names_field(const ValidationResult& r, const std::string& field) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const ValidationIssue& v) { return v.field == field; });
}

}  // namespace

TEST_CASE("default scenario validates clean") {
    const ValidationResult r = validate_config(default_config());
    CHECK(r.ok());
    CHECK(r.violations.empty());
}

TEST_CASE("violations carry field names") {
    NetworkConfig cfg = default_config();
    cfg.node_count = 0;
    CHECK(names_field(validate_config(cfg), "node_count"));

    cfg = default_config();
    cfg.proto.c_unequal = 1.0; // open interval
    CHECK(names_field(validate_config(cfg), "proto.c_unequal"));

    cfg = default_config();
    cfg.proto.p_ch = 0.0;
    CHECK(names_field(validate_config(cfg), "proto.p_ch"));
    cfg.proto.p_ch = 1.0;
    CHECK(names_field(validate_config(cfg), "proto.p_ch"));
}

TEST_CASE("validation is total across broken fields") {
    NetworkConfig cfg = default_config();
    cfg.field_width = -1;
    cfg.node_count = 0;
    cfg.initial_energy = 0;
    cfg.proto.r_layer = 0;
    const ValidationResult r = validate_config(cfg);
    CHECK(names_field(r, "field_width"));
    CHECK(names_field(r, "node_count"));
    CHECK(names_field(r, "initial_energy"));
    CHECK(names_field(r, "proto.r_layer"));
    CHECK(r.violations.size() >= 4);
}

TEST_CASE("r_tx_max beyond d0 warns but passes") {
    NetworkConfig cfg = default_config();
    cfg.radio.r_tx_max = cfg.radio.d0() * 2.0;
    const ValidationResult r = validate_config(cfg);
    CHECK(r.ok());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].field == "radio.r_tx_max");
}

TEST_CASE("json round trip preserves the config") {
    NetworkConfig cfg = default_config();
    cfg.seed = 1234567890123456789ull;
    cfg.protocol = ProtocolChoice::Leach;
    cfg.proto.c_unequal = 0.25;

    ValidationResult issues;
    const NetworkConfig back = load_config_json(config_to_json(cfg), issues);
    CHECK(issues.ok());
    CHECK(back.seed == cfg.seed);
    CHECK(back.protocol == ProtocolChoice::Leach);
    CHECK(back.proto.c_unequal == cfg.proto.c_unequal);
    CHECK(back.radio.r_tx_max == cfg.radio.r_tx_max);
    CHECK(back.bs_position.x == cfg.bs_position.x);
    CHECK(back.bs_position.y == cfg.bs_position.y);
}

TEST_CASE("unknown json keys are violations") {
    ValidationResult issues;
    load_config_json(R"({"node_cuont": 50})", issues);
    REQUIRE(issues.violations.size() == 1);
    CHECK(issues.violations[0].field == "node_cuont");

    ValidationResult nested;
    load_config_json(R"({"radio": {"d0": 87.7}})", nested);
    CHECK(!nested.ok());
    CHECK(nested.violations[0].field == "radio.d0");
}

TEST_CASE("partial json overlays the defaults") {
    ValidationResult issues;
    const NetworkConfig cfg = load_config_json(R"({"node_count": 10, "seed": 7})", issues);
    CHECK(issues.ok());
    CHECK(cfg.node_count == 10);
    CHECK(cfg.seed == 7);
    CHECK(cfg.field_width == 100.0);
    CHECK(cfg.proto.p_ch == 0.05);
}

TEST_CASE("r_tx_max tracks a changed crossover unless pinned") {
    ValidationResult issues;
    const NetworkConfig cfg =
        load_config_json(R"({"radio": {"eps_fs": 2e-11, "eps_mp": 2e-15}})", issues);
    CHECK(issues.ok());
    CHECK(cfg.radio.r_tx_max == doctest::Approx(cfg.radio.d0()).epsilon(1e-12));

    ValidationResult pinned_issues;
    const NetworkConfig pinned = load_config_json(
        R"({"radio": {"eps_fs": 2e-11, "eps_mp": 2e-15, "r_tx_max": 30.0}})",
        pinned_issues);
    CHECK(pinned_issues.ok());
    CHECK(pinned.radio.r_tx_max == 30.0);
}

TEST_CASE("malformed json reports line and column") {
    ValidationResult issues;
    CHECK_THROWS_WITH_AS(load_config_json("{\n  \"node_count\": ,\n}", issues),
                         doctest::Contains("line 2"), nlohmann::json::parse_error);
}

TEST_CASE("bad protocol string is a violation") {
    ValidationResult issues;
    load_config_json(R"({"protocol": "heed"})", issues);
    CHECK(!issues.ok());
    CHECK(issues.violations[0].field == "protocol");
}
