#include "wsn/route.hpp"

#include <sstream>

namespace wsn {

int select_next_hop(int head, const std::vector<int>& heads,
                    const std::vector<NodeState>& nodes, const Deployment& dep,
                    const RadioParams& radio) {
    const NodeState& self = nodes[head];
    // single-hop whenever the sink is reachable; relaying inside radio
    // range only moves cost onto a peer and adds a reception
    if (self.layer == 1 || distance(self.pos, dep.bs_position) <= radio.r_tx_max)
        return kBaseStation;

    int best = kBaseStation;
    double best_energy = 0.0;
    double best_d_bs = 0.0;
    for (int h : heads) {
        if (h == head) continue;
        const NodeState& cand = nodes[h];
        if (!cand.alive || cand.layer >= self.layer) continue;
        if (distance(self.pos, cand.pos) > radio.r_tx_max) continue;
        const double d_bs = distance(cand.pos, dep.bs_position);
        bool better;
        if (best == kBaseStation)
            better = true;
        else if (cand.energy != best_energy)
            better = cand.energy > best_energy;
        else if (d_bs != best_d_bs)
            better = d_bs < best_d_bs;
        else
            better = h < best;
        if (better) {
            best = h;
            best_energy = cand.energy;
            best_d_bs = d_bs;
        }
    }
    return best;
}

RoutingTable build_routes(const std::vector<int>& heads,
                          const std::vector<NodeState>& nodes,
                          const Deployment& dep, const RadioParams& radio,
                          int round) {
    RoutingTable rt;
    rt.round = round;
    for (int h : heads)
        rt.next_hop[h] = select_next_hop(h, heads, nodes, dep, radio);

    const std::size_t max_hops = heads.size();
    for (int h : heads) {
        std::vector<int> path{h};
        int cur = h;
        while (cur != kBaseStation) {
            cur = rt.next_hop.at(cur);
            path.push_back(cur);
            if (path.size() > max_hops + 1)
                throw RoutingLoopDetected("path from head " + std::to_string(h) +
                                          " exceeds head count");
        }
        rt.paths[h] = std::move(path);
    }
    return rt;
}

std::string routing_csv_rows(const RoutingTable& rt) {
    std::ostringstream out;
    for (const auto& [head, next] : rt.next_hop) {
        out << rt.round << ',' << head << ',';
        if (next == kBaseStation)
            out << "BS";
        else
            out << next;
        out << ',' << rt.paths.at(head).size() - 1 << '\n';
    }
    return out.str();
}

}  // namespace wsn
