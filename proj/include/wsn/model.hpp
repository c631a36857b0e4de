#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wsn {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

// First-order radio model constants. d0 is the free-space/multipath
// crossover and is always recomputed from eps_fs/eps_mp, never stored.
struct RadioParams {
    double e_elec = 50e-9;      // J/bit
    double eps_fs = 10e-12;     // J/bit/m^2
    double eps_mp = 0.0013e-12; // J/bit/m^4
    double e_da = 5e-9;         // J/bit/signal
    double r_tx_max = 0.0;      // m; 0 in a config file means "use d0"

    double d0() const { return std::sqrt(eps_fs / eps_mp); }
};

enum class ProtocolChoice { Leach, Layered };

struct ProtocolParams {
    double p_ch = 0.05;     // LEACH rotation fraction per round, in (0,1)
    double r0 = 40.0;       // maximum competition radius, m
    double c_unequal = 0.5; // unequal-size factor, [0,1); 0 = uniform baseline
    double r_layer = 30.0;  // layer ring width, m
};

struct NetworkConfig {
    double field_width = 100.0;
    double field_height = 100.0;
    int node_count = 100;
    Point bs_position{50.0, 150.0};
    double initial_energy = 0.5;        // J per node
    RadioParams radio;
    std::int64_t data_packet_bits = 4000;
    std::int64_t ctrl_packet_bits = 200; // 0 disables control-overhead accounting
    int frames_per_round = 1;
    int max_rounds = 2000;
    std::uint64_t seed = 42;
    ProtocolChoice protocol = ProtocolChoice::Layered;
    ProtocolParams proto;
};

enum class Role { Member, TentativeHead, Head };

struct NodeState {
    int id = 0;
    Point pos;
    double energy = 0.0;
    bool alive = false; // alive == false exactly when energy == 0
    Role role = Role::Member;
    int layer = 1;
    std::optional<int> cluster_head; // heads point at themselves
    int rounds_since_ch = kNeverServed;

    static constexpr int kNeverServed = 1 << 30;
};

struct ValidationIssue {
    std::string field;
    std::string message;
};

struct ValidationResult {
    std::vector<ValidationIssue> violations;
    std::vector<ValidationIssue> warnings;

    bool ok() const { return violations.empty(); }
};

// The standard scenario; every field overridable from JSON or flags.
NetworkConfig default_config();

// Total: collects every violation instead of stopping at the first.
ValidationResult validate_config(const NetworkConfig& cfg);

std::string protocol_name(ProtocolChoice p);
std::optional<ProtocolChoice> parse_protocol(const std::string& name);

// JSON config I/O. Keys mirror the field names; unknown keys are
// validation errors so typos cannot silently fall back to defaults.
// Throws std::runtime_error with line/column context on malformed JSON.
NetworkConfig load_config_json(const std::string& text, ValidationResult& issues);
NetworkConfig load_config_file(const std::string& path, ValidationResult& issues);
std::string config_to_json(const NetworkConfig& cfg);

}  // namespace wsn
