#include "wsn/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wsn/format.hpp"

namespace wsn {

SimState make_state(const NetworkConfig& cfg, Deployment dep, SplitMix64 rng,
                    bool trace_ledger) {
    SimState s;
    s.nodes = dep.nodes;
    s.deployment = std::move(dep);
    s.radio = cfg.radio;
    s.rng = rng;
    s.ledger.record_entries = trace_ledger;
    s.ledger.per_node_joules.assign(s.nodes.size(), 0.0);
    s.round_joules.assign(s.nodes.size(), 0.0);
    return s;
}

SpendResult spend(SimState& s, int node, Action action, std::int64_t bits,
                  double distance) {
    NodeState& n = s.nodes[node];
    if (!n.alive)
        throw EngineInvariantViolation("spend on dead node " + std::to_string(node));

    const double cost = action_cost(s.radio, action, bits, distance);
    double debit = cost;
    bool truncated = false;
    if (n.energy >= cost) {
        n.energy -= cost;
    } else {
        debit = n.energy;
        n.energy = 0.0;
        truncated = true;
    }
    if (n.energy == 0.0) n.alive = false;

    s.ledger.total_joules += debit;
    s.ledger.per_node_joules[node] += debit;
    s.round_joules[node] += debit;
    if (s.ledger.record_entries)
        s.ledger.entries.push_back(
            {s.round, node, action, bits, distance, debit, truncated});

    return truncated ? SpendResult::Died : SpendResult::Ok;
}

double total_residual(const SimState& s) {
    double sum = 0.0;
    for (const NodeState& n : s.nodes) sum += n.energy;
    return sum;
}

int alive_count(const SimState& s) {
    int count = 0;
    for (const NodeState& n : s.nodes) count += n.alive ? 1 : 0;
    return count;
}

double conservation_defect(const SimState& s, const NetworkConfig& cfg) {
    const double budget = static_cast<double>(cfg.node_count) * cfg.initial_energy;
    return std::abs(total_residual(s) + s.ledger.total_joules - budget);
}

namespace {

// Abort guard for the per-round conservation check: a fixed absolute
// bound plus a relative allowance for double rounding, which dominates
// once budgets grow far beyond the joule scale (1e11 J has ~1.5e-5 J ulps).
double conservation_guard(const NetworkConfig& cfg) {
    const double budget = static_cast<double>(cfg.node_count) * cfg.initial_energy;
    return 1e-9 + 1e-12 * budget;
}

}  // namespace

namespace {

double hop_distance(const SimState& s, int from, int to) {
    if (to == kBaseStation)
        return distance(s.nodes[from].pos, s.deployment.bs_position);
    return distance(s.nodes[from].pos, s.nodes[to].pos);
}

}  // namespace

RoundReport run_round(SimState& s, const NetworkConfig& cfg) {
    if (alive_count(s) == 0)
        throw EngineInvariantViolation("run_round with no alive nodes");

    std::fill(s.round_joules.begin(), s.round_joules.end(), 0.0);
    const double residual_before = total_residual(s);
    const std::int64_t delivered_before = s.delivered_packets;
    const std::int64_t generated_before = s.generated_packets;

    // age the rotation bookkeeping one round
    for (NodeState& n : s.nodes)
        if (n.rounds_since_ch != NodeState::kNeverServed) ++n.rounds_since_ch;

    // (1) election
    const std::vector<int> heads =
        elect_heads(s.nodes, s.deployment, cfg, s.round, s.rng);

    // (2) cluster formation + control charges
    const ChargeFn charge = [&](int node, Action action, std::int64_t bits,
                                double dist) {
        if (!s.nodes[node].alive) return false;
        return spend(s, node, action, bits, dist) == SpendResult::Ok;
    };
    ClusterAssignment ca =
        form_clusters(heads, s.nodes, s.deployment, cfg, s.round, charge);

    // (3) routes; LEACH heads ship straight to the BS
    std::vector<int> routable;
    for (int h : heads)
        if (s.nodes[h].alive) routable.push_back(h);

    RoutingTable rt;
    rt.round = s.round;
    if (cfg.protocol == ProtocolChoice::Layered) {
        if (!routable.empty())
            rt = build_routes(routable, s.nodes, s.deployment, s.radio, s.round);
    } else {
        for (int h : routable) {
            rt.next_hop[h] = kBaseStation;
            rt.paths[h] = {h, kBaseStation};
        }
    }

    // (4) steady state
    const std::int64_t k = cfg.data_packet_bits;
    std::map<int, int> relayed;
    for (int frame = 0; frame < cfg.frames_per_round; ++frame) {
        s.generated_packets += alive_count(s);

        // members transmit to their heads, ascending id
        std::map<int, std::int64_t> received;
        for (const auto& [m, h] : ca.membership) {
            if (m == h || !s.nodes[m].alive) continue;
            const double d = distance(s.nodes[m].pos, s.nodes[h].pos);
            if (spend(s, m, Action::TxData, k, d) != SpendResult::Ok) continue;
            if (!s.nodes[h].alive) continue; // packet lost at a dead head
            if (spend(s, h, Action::RxData, k, 0.0) == SpendResult::Ok)
                received[h] += 1;
        }

        // heads fuse what they received plus their own reading
        std::map<int, bool> fused;
        for (int h : heads) {
            if (!s.nodes[h].alive) continue;
            const std::int64_t signals = received[h] + 1;
            fused[h] = spend(s, h, Action::Aggregate, k * signals, 0.0) ==
                       SpendResult::Ok;
        }

        // aggregates travel their routes; one delivery per aggregate that
        // survives every hop including the BS-facing transmission
        for (int h : heads) {
            if (!s.nodes[h].alive || !fused[h]) continue;
            auto it = rt.next_hop.find(h);
            if (it == rt.next_hop.end()) continue;

            int carrier = h;
            int next = it->second;
            if (spend(s, carrier, Action::TxData, k, hop_distance(s, carrier, next)) !=
                SpendResult::Ok)
                continue;

            bool reached_bs = (next == kBaseStation);
            std::size_t hops = 0;
            while (next != kBaseStation) {
                if (++hops > rt.next_hop.size())
                    throw RoutingLoopDetected("relay walk exceeded head count");
                carrier = next;
                if (!s.nodes[carrier].alive) break;
                if (spend(s, carrier, Action::RxData, k, 0.0) != SpendResult::Ok)
                    break;
                auto hop = rt.next_hop.find(carrier);
                if (hop == rt.next_hop.end()) break;
                next = hop->second;
                if (spend(s, carrier, Action::TxData, k,
                          hop_distance(s, carrier, next)) != SpendResult::Ok)
                    break;
                relayed[carrier] += 1;
                reached_bs = (next == kBaseStation);
            }
            if (reached_bs) s.delivered_packets += 1;
        }
    }

    // (5) report
    RoundReport rep;
    rep.round = s.round;
    rep.alive = alive_count(s);
    rep.residual_total = total_residual(s);
    rep.dissipated_this_round = residual_before - rep.residual_total;
    rep.packets_delivered = s.delivered_packets - delivered_before;
    rep.packets_generated = s.generated_packets - generated_before;
    rep.head_count = static_cast<int>(heads.size());

    std::map<int, std::pair<double, int>> layer_sizes;
    for (int h : heads) {
        auto& [sum, count] = layer_sizes[s.nodes[h].layer];
        sum += static_cast<double>(ca.cluster_sizes[h]);
        count += 1;
    }
    for (const auto& [layer, agg] : layer_sizes)
        rep.per_layer_mean_cluster_size[layer] = agg.first / agg.second;

    for (int h : heads) {
        HeadLoad load;
        load.members = ca.cluster_sizes[h] - 1;
        load.relayed_packets = relayed.count(h) ? relayed[h] : 0;
        load.joules = s.round_joules[h];
        rep.per_head_load[h] = load;
    }

    if (s.ledger.record_entries) {
        s.cluster_trace += cluster_csv_rows(ca, s.nodes);
        s.route_trace += routing_csv_rows(rt);
    }
    s.last_assignment = std::move(ca);
    s.last_routes = std::move(rt);
    s.round += 1;
    return rep;
}

RunOutput run_simulation(const NetworkConfig& cfg, bool trace_ledger) {
    {
        ValidationResult v = validate_config(cfg);
        if (!v.ok()) {
            std::string fields;
            for (const auto& issue : v.violations)
                fields += (fields.empty() ? "" : ", ") + issue.field;
            throw std::invalid_argument("invalid config: " + fields);
        }
    }

    SplitMix64 rng(cfg.seed);
    Deployment dep = deploy_uniform(cfg, rng);
    SimState state = make_state(cfg, std::move(dep), rng, trace_ledger);

    RunOutput out;
    out.reports.reserve(std::min(cfg.max_rounds, 65536));
    for (int r = 0; r < cfg.max_rounds && alive_count(state) > 0; ++r) {
        out.reports.push_back(run_round(state, cfg));
        if (conservation_defect(state, cfg) >= conservation_guard(cfg))
            throw EngineInvariantViolation(
                "energy conservation breached at round " + std::to_string(r) +
                ": defect " + fmt_double(conservation_defect(state, cfg)) + " J");
    }
    out.summary = summarize(out.reports, cfg.node_count);
    out.final_state = std::move(state);
    return out;
}

std::string ledger_csv(const EnergyLedger& ledger) {
    std::ostringstream out;
    out << "round,node,action,bits,distance_m,joules\n";
    for (const LedgerEntry& e : ledger.entries)
        out << e.round << ',' << e.node << ',' << action_name(e.action) << ','
            << e.bits << ',' << fmt_double(e.distance) << ','
            << fmt_double(e.joules) << '\n';
    return out.str();
}

}  // namespace wsn
