#include "wsn/model.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wsn/format.hpp"
#include <json.hpp>

namespace wsn {

NetworkConfig default_config() {
    NetworkConfig cfg;
    cfg.radio.r_tx_max = cfg.radio.d0();
    return cfg;
}

std::string protocol_name(ProtocolChoice p) {
    return p == ProtocolChoice::Leach ? "leach" : "layered";
}

std::optional<ProtocolChoice> parse_protocol(const std::string& name) {
    if (name == "leach") return ProtocolChoice::Leach;
    if (name == "layered") return ProtocolChoice::Layered;
    return std::nullopt;
}

namespace {

void require(ValidationResult& r, bool ok, const std::string& field,
             const std::string& message) {
    if (!ok) r.violations.push_back({field, message});
}

}  // namespace

ValidationResult validate_config(const NetworkConfig& cfg) {
    ValidationResult r;

    require(r, cfg.field_width > 0, "field_width", "must be > 0");
    require(r, cfg.field_height > 0, "field_height", "must be > 0");
    require(r, cfg.node_count >= 1, "node_count", "must be >= 1");
    require(r, cfg.initial_energy > 0, "initial_energy", "must be > 0");
    require(r, cfg.data_packet_bits >= 1, "data_packet_bits", "must be >= 1");
    require(r, cfg.ctrl_packet_bits >= 0, "ctrl_packet_bits", "must be >= 0");
    require(r, cfg.frames_per_round >= 1, "frames_per_round", "must be >= 1");
    require(r, cfg.max_rounds >= 0, "max_rounds", "must be >= 0");

    require(r, cfg.radio.e_elec > 0, "radio.e_elec", "must be > 0");
    require(r, cfg.radio.eps_fs > 0, "radio.eps_fs", "must be > 0");
    require(r, cfg.radio.eps_mp > 0, "radio.eps_mp", "must be > 0");
    require(r, cfg.radio.e_da > 0, "radio.e_da", "must be > 0");
    require(r, cfg.radio.r_tx_max > 0, "radio.r_tx_max", "must be > 0");

    require(r, cfg.proto.p_ch > 0 && cfg.proto.p_ch < 1, "proto.p_ch",
            "must lie in the open interval (0,1)");
    require(r, cfg.proto.r0 > 0, "proto.r0", "must be > 0");
    require(r, cfg.proto.c_unequal >= 0 && cfg.proto.c_unequal < 1,
            "proto.c_unequal", "must lie in [0,1)");
    require(r, cfg.proto.r_layer > 0, "proto.r_layer", "must be > 0");

    if (cfg.radio.eps_fs > 0 && cfg.radio.eps_mp > 0 &&
        cfg.radio.r_tx_max > cfg.radio.d0()) {
        r.warnings.push_back({"radio.r_tx_max",
                              "exceeds d0 = " + fmt_double(cfg.radio.d0()) +
                                  " m; multipath regime reachable"});
    }
    return r;
}

namespace {

using nlohmann::json;

// Overlay `j` onto cfg, recording unknown keys and type mismatches as
// violations. Missing keys keep their defaults.
void apply_json(const json& j, NetworkConfig& cfg, ValidationResult& issues) {
    static const std::set<std::string> top_keys = {
        "field_width", "field_height", "node_count", "bs_position",
        "initial_energy", "radio", "data_packet_bits", "ctrl_packet_bits",
        "frames_per_round", "max_rounds", "seed", "protocol", "proto"};
    static const std::set<std::string> radio_keys = {"e_elec", "eps_fs",
                                                     "eps_mp", "e_da", "r_tx_max"};
    static const std::set<std::string> proto_keys = {"p_ch", "r0", "c_unequal",
                                                     "r_layer"};
    static const std::set<std::string> point_keys = {"x", "y"};

    if (!j.is_object()) {
        issues.violations.push_back({"(root)", "config must be a JSON object"});
        return;
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!top_keys.count(it.key()))
            issues.violations.push_back({it.key(), "unknown key"});
    }

    auto num = [&](const json& obj, const char* key, double& out) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_number()) {
            issues.violations.push_back({key, "must be a number"});
            return;
        }
        out = obj[key].get<double>();
    };
    auto integer = [&](const json& obj, const char* key, auto& out) {
        if (!obj.contains(key)) return;
        if (!obj[key].is_number_integer()) {
            issues.violations.push_back({key, "must be an integer"});
            return;
        }
        out = obj[key].get<std::decay_t<decltype(out)>>();
    };

    num(j, "field_width", cfg.field_width);
    num(j, "field_height", cfg.field_height);
    integer(j, "node_count", cfg.node_count);
    num(j, "initial_energy", cfg.initial_energy);
    integer(j, "data_packet_bits", cfg.data_packet_bits);
    integer(j, "ctrl_packet_bits", cfg.ctrl_packet_bits);
    integer(j, "frames_per_round", cfg.frames_per_round);
    integer(j, "max_rounds", cfg.max_rounds);
    if (j.contains("seed")) {
        if (j["seed"].is_number_unsigned() || j["seed"].is_number_integer())
            cfg.seed = j["seed"].get<std::uint64_t>();
        else
            issues.violations.push_back({"seed", "must be an unsigned integer"});
    }

    if (j.contains("bs_position")) {
        const json& bs = j["bs_position"];
        if (!bs.is_object()) {
            issues.violations.push_back({"bs_position", "must be {\"x\":..,\"y\":..}"});
        } else {
            for (auto it = bs.begin(); it != bs.end(); ++it)
                if (!point_keys.count(it.key()))
                    issues.violations.push_back({"bs_position." + it.key(), "unknown key"});
            num(bs, "x", cfg.bs_position.x);
            num(bs, "y", cfg.bs_position.y);
        }
    }

    if (j.contains("radio")) {
        const json& rj = j["radio"];
        if (!rj.is_object()) {
            issues.violations.push_back({"radio", "must be an object"});
        } else {
            for (auto it = rj.begin(); it != rj.end(); ++it)
                if (!radio_keys.count(it.key()))
                    issues.violations.push_back({"radio." + it.key(), "unknown key"});
            num(rj, "e_elec", cfg.radio.e_elec);
            num(rj, "eps_fs", cfg.radio.eps_fs);
            num(rj, "eps_mp", cfg.radio.eps_mp);
            num(rj, "e_da", cfg.radio.e_da);
            double rtx = -1.0;
            num(rj, "r_tx_max", rtx);
            if (rtx >= 0.0) cfg.radio.r_tx_max = rtx;
            // a file that changes eps_* without pinning r_tx_max tracks
            // the new crossover instead of the default constants' one
            if (!rj.contains("r_tx_max") && cfg.radio.eps_mp > 0)
                cfg.radio.r_tx_max = cfg.radio.d0();
        }
    }

    if (j.contains("protocol")) {
        if (!j["protocol"].is_string()) {
            issues.violations.push_back({"protocol", "must be \"leach\" or \"layered\""});
        } else if (auto p = parse_protocol(j["protocol"].get<std::string>())) {
            cfg.protocol = *p;
        } else {
            issues.violations.push_back(
                {"protocol", "unknown protocol '" + j["protocol"].get<std::string>() +
                                 "' (expected leach or layered)"});
        }
    }

    if (j.contains("proto")) {
        const json& pj = j["proto"];
        if (!pj.is_object()) {
            issues.violations.push_back({"proto", "must be an object"});
        } else {
            for (auto it = pj.begin(); it != pj.end(); ++it)
                if (!proto_keys.count(it.key()))
                    issues.violations.push_back({"proto." + it.key(), "unknown key"});
            num(pj, "p_ch", cfg.proto.p_ch);
            num(pj, "r0", cfg.proto.r0);
            num(pj, "c_unequal", cfg.proto.c_unequal);
            num(pj, "r_layer", cfg.proto.r_layer);
        }
    }
}

}  // namespace

NetworkConfig load_config_json(const std::string& text, ValidationResult& issues) {
    NetworkConfig cfg = default_config();
    json j = json::parse(text); // throws nlohmann parse_error with line/column
    apply_json(j, cfg, issues);
    if (issues.ok()) {
        ValidationResult field_check = validate_config(cfg);
        issues.violations = std::move(field_check.violations);
        issues.warnings = std::move(field_check.warnings);
    }
    return cfg;
}

NetworkConfig load_config_file(const std::string& path, ValidationResult& issues) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_config_json(buf.str(), issues);
}

std::string config_to_json(const NetworkConfig& cfg) {
    json j;
    j["field_width"] = cfg.field_width;
    j["field_height"] = cfg.field_height;
    j["node_count"] = cfg.node_count;
    j["bs_position"] = {{"x", cfg.bs_position.x}, {"y", cfg.bs_position.y}};
    j["initial_energy"] = cfg.initial_energy;
    j["radio"] = {{"e_elec", cfg.radio.e_elec},
                  {"eps_fs", cfg.radio.eps_fs},
                  {"eps_mp", cfg.radio.eps_mp},
                  {"e_da", cfg.radio.e_da},
                  {"r_tx_max", cfg.radio.r_tx_max}};
    j["data_packet_bits"] = cfg.data_packet_bits;
    j["ctrl_packet_bits"] = cfg.ctrl_packet_bits;
    j["frames_per_round"] = cfg.frames_per_round;
    j["max_rounds"] = cfg.max_rounds;
    j["seed"] = cfg.seed;
    j["protocol"] = protocol_name(cfg.protocol);
    j["proto"] = {{"p_ch", cfg.proto.p_ch},
                  {"r0", cfg.proto.r0},
                  {"c_unequal", cfg.proto.c_unequal},
                  {"r_layer", cfg.proto.r_layer}};
    return j.dump(2) + "\n";
}

}  // namespace wsn
