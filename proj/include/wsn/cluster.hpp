#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "wsn/model.hpp"
#include "wsn/radio.hpp"
#include "wsn/rng.hpp"
#include "wsn/topology.hpp"

namespace wsn {

struct ClusterAssignment {
    int round = 0;
    std::vector<int> heads;           // sorted ascending
    std::map<int, int> membership;    // node -> head; heads map to themselves
    std::map<int, int> cluster_sizes; // head -> member count incl. the head
};

// Suppression radius around a tentative head. Shrinks toward the BS so
// clusters near it stay small; c_unequal = 0 gives a constant radius.
double competition_radius(const ProtocolParams& pp, double d_node_bs,
                          double d_min, double d_max);

// Competition radii are normalized against the BS-distance spread of the
// population still alive, so the unequal sizing keeps differentiating as
// the network contracts. Falls back to the deployment span when empty.
std::pair<double, double> alive_distance_span(const std::vector<NodeState>& nodes,
                                              const Deployment& dep);

// The LAYERED tentative pool oversamples the competition's packing
// capacity: enough candidates that suppression, not election luck, sets
// the head spacing everywhere.
constexpr double kCoverageOversampling = 4.0;

// min(1, 4 * live_area / (pi * sum of alive competition radii squared)),
// where live_area is the alive nodes' bounding box clipped to the field.
// Saturates toward 1 early and relaxes as the population thins out.
double tentative_probability(const std::vector<NodeState>& nodes,
                             const Deployment& dep, const NetworkConfig& cfg);

// Classic rotation threshold T(n) = p / (1 - p * (r mod ceil(1/p))),
// 0 for nodes that already served this epoch. Clamped to [0,1].
double leach_threshold(double p_ch, int round, bool eligible);

bool leach_eligible(const NodeState& node, double p_ch, int round);

// Tentative heads thinned in descending-energy order: a candidate is
// dropped when a confirmed head sits closer than both competition radii.
std::vector<int> resolve_competition(const std::vector<int>& tentative,
                                     const std::vector<NodeState>& nodes,
                                     const Deployment& dep,
                                     const ProtocolParams& pp);

// Runs the per-round election for cfg.protocol, mutating roles and the
// LEACH rotation bookkeeping. Consumes one draw per alive node in id
// order. LEACH compares draws against the rotation threshold; LAYERED
// against tentative_probability, then prunes via resolve_competition.
// Never returns an empty set: if the stochastic election yields nothing,
// the max-energy alive node (lowest id on ties) is forced head.
std::vector<int> elect_heads(std::vector<NodeState>& nodes, const Deployment& dep,
                             const NetworkConfig& cfg, int round, SplitMix64& rng);

// Applies one control-phase debit; returns true when the action took
// effect (node alive and energy sufficient). The engine passes its
// spend(); tests pass recorders.
using ChargeFn = std::function<bool(int node, Action action, std::int64_t bits,
                                    double distance)>;

// Every alive non-head joins the nearest head (lowest head id on ties),
// no range cap. When cfg.ctrl_packet_bits > 0 the setup-phase control
// costs (advertisement, join, schedule) are charged through `charge`.
ClusterAssignment form_clusters(const std::vector<int>& heads,
                                std::vector<NodeState>& nodes,
                                const Deployment& dep, const NetworkConfig& cfg,
                                int round, const ChargeFn& charge);

// round,node,head,layer_of_head
std::string cluster_csv_rows(const ClusterAssignment& ca,
                             const std::vector<NodeState>& nodes);

}  // namespace wsn
