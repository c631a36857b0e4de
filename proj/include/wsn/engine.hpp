#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsn/cluster.hpp"
#include "wsn/metrics.hpp"
#include "wsn/model.hpp"
#include "wsn/radio.hpp"
#include "wsn/rng.hpp"
#include "wsn/route.hpp"
#include "wsn/topology.hpp"

namespace wsn {

struct LedgerEntry {
    int round;
    int node;
    Action action;
    std::int64_t bits;
    double distance; // 0 for rx/aggregate
    double joules;
    // true when the node died mid-action and only its residual was
    // drained; such entries debit less than the full action cost
    bool truncated;
};

// Append-only audit of every debit. Running totals are always kept;
// individual entries only when tracing is on.
struct EnergyLedger {
    bool record_entries = false;
    std::vector<LedgerEntry> entries;
    double total_joules = 0.0;
    std::vector<double> per_node_joules;
};

struct SimState {
    int round = 0;
    std::vector<NodeState> nodes;
    Deployment deployment;
    RadioParams radio;
    SplitMix64 rng{0};
    EnergyLedger ledger;
    std::int64_t delivered_packets = 0;
    std::int64_t generated_packets = 0;

    // per-round bookkeeping for reports and traces
    std::vector<double> round_joules;
    ClusterAssignment last_assignment;
    RoutingTable last_routes;
    std::string cluster_trace; // accumulated CSV rows when tracing
    std::string route_trace;
};

// Conservation breach or any other should-never-happen condition.
struct EngineInvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

enum class SpendResult { Ok, Died };

SimState make_state(const NetworkConfig& cfg, Deployment dep, SplitMix64 rng,
                    bool trace_ledger = false);

// Debits the action's radio cost. A node that cannot afford it dies,
// losing exactly its residual, and the action does not take effect.
// A debit that lands on exactly zero succeeds but the node is dead after.
SpendResult spend(SimState& state, int node, Action action, std::int64_t bits,
                  double distance);

double total_residual(const SimState& state);
int alive_count(const SimState& state);

// |sum residual + sum ledger - N*E0|, the conservation defect
double conservation_defect(const SimState& state, const NetworkConfig& cfg);

// One protocol epoch: election, formation + control charges, routing,
// then frames_per_round steady-state frames.
RoundReport run_round(SimState& state, const NetworkConfig& cfg);

struct RunOutput {
    SimulationSummary summary;
    std::vector<RoundReport> reports;
    SimState final_state; // carries the ledger when tracing was on
};

RunOutput run_simulation(const NetworkConfig& cfg, bool trace_ledger = false);

// round,node,action,bits,distance_m,joules
std::string ledger_csv(const EnergyLedger& ledger);

}  // namespace wsn
