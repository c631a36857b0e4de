#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wsn/model.hpp"
#include "wsn/topology.hpp"

namespace wsn {

// Sentinel target for "deliver to the base station".
constexpr int kBaseStation = -1;

struct RoutingTable {
    int round = 0;
    std::map<int, int> next_hop;             // head -> head id or kBaseStation
    std::map<int, std::vector<int>> paths;   // head -> [head, relays..., kBaseStation]
};

// Impossible by construction (layers strictly decrease along paths);
// raised only if the implementation breaks, and aborts the run.
struct RoutingLoopDetected : std::logic_error {
    using std::logic_error::logic_error;
};

// Heads with the BS inside radio range (layer 1 always qualifies with
// r_layer <= r_tx_max) deliver directly. Otherwise: among alive heads in
// a strictly lower layer within r_tx_max, pick max residual energy, ties
// by smaller distance-to-BS then lower id; empty candidate set falls back
// to a direct BS link.
int select_next_hop(int head, const std::vector<int>& heads,
                    const std::vector<NodeState>& nodes, const Deployment& dep,
                    const RadioParams& radio);

RoutingTable build_routes(const std::vector<int>& heads,
                          const std::vector<NodeState>& nodes,
                          const Deployment& dep, const RadioParams& radio,
                          int round);

// round,head,next_hop,path_len
std::string routing_csv_rows(const RoutingTable& rt);

}  // namespace wsn
