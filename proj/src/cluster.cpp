#include "wsn/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wsn {

double competition_radius(const ProtocolParams& pp, double d_node_bs,
                          double d_min, double d_max) {
    if (d_max == d_min) return pp.r0;
    return pp.r0 * (1.0 - pp.c_unequal * (d_max - d_node_bs) / (d_max - d_min));
}

double leach_threshold(double p_ch, int round, bool eligible) {
    if (!eligible) return 0.0;
    const int epoch = static_cast<int>(std::ceil(1.0 / p_ch));
    const int m = round % epoch;
    const double t = p_ch / (1.0 - p_ch * static_cast<double>(m));
    return std::clamp(t, 0.0, 1.0);
}

bool leach_eligible(const NodeState& node, double p_ch, int round) {
    const int epoch = static_cast<int>(std::ceil(1.0 / p_ch));
    const int m = round % epoch;
    // served within the current epoch <=> rounds_since_ch <= r mod epoch
    return node.rounds_since_ch > m;
}

std::pair<double, double> alive_distance_span(const std::vector<NodeState>& nodes,
                                              const Deployment& dep) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (const NodeState& n : nodes) {
        if (!n.alive) continue;
        const double d = distance(n.pos, dep.bs_position);
        lo = any ? std::min(lo, d) : d;
        hi = any ? std::max(hi, d) : d;
        any = true;
    }
    if (!any) return {dep.d_min, dep.d_max};
    return {lo, hi};
}

double tentative_probability(const std::vector<NodeState>& nodes,
                             const Deployment& dep, const NetworkConfig& cfg) {
    const auto [span_min, span_max] = alive_distance_span(nodes, dep);
    constexpr double pi = 3.14159265358979323846;

    double radius_sq_sum = 0.0;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    int alive = 0;
    for (const NodeState& n : nodes) {
        if (!n.alive) continue;
        const double r = competition_radius(
            cfg.proto, distance(n.pos, dep.bs_position), span_min, span_max);
        radius_sq_sum += r * r;
        if (alive == 0) {
            xmin = xmax = n.pos.x;
            ymin = ymax = n.pos.y;
        } else {
            xmin = std::min(xmin, n.pos.x);
            xmax = std::max(xmax, n.pos.x);
            ymin = std::min(ymin, n.pos.y);
            ymax = std::max(ymax, n.pos.y);
        }
        ++alive;
    }
    if (alive == 0 || radius_sq_sum <= 0.0) return 0.0;

    const double live_area = std::min(cfg.field_width * cfg.field_height,
                                      (xmax - xmin) * (ymax - ymin));
    return std::min(1.0, kCoverageOversampling * live_area / (pi * radius_sq_sum));
}

std::vector<int> resolve_competition(const std::vector<int>& tentative,
                                     const std::vector<NodeState>& nodes,
                                     const Deployment& dep,
                                     const ProtocolParams& pp) {
    std::vector<int> order = tentative;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (nodes[a].energy != nodes[b].energy)
            return nodes[a].energy > nodes[b].energy;
        return a < b;
    });

    const auto [span_min, span_max] = alive_distance_span(nodes, dep);
    auto radius = [&, span_min = span_min, span_max = span_max](int id) {
        return competition_radius(pp, distance(nodes[id].pos, dep.bs_position),
                                  span_min, span_max);
    };

    std::vector<int> confirmed;
    for (int id : order) {
        bool suppressed = false;
        for (int h : confirmed) {
            if (distance(nodes[id].pos, nodes[h].pos) < std::min(radius(id), radius(h))) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) confirmed.push_back(id);
    }
    std::sort(confirmed.begin(), confirmed.end());
    return confirmed;
}

namespace {

int max_energy_alive(const std::vector<NodeState>& nodes) {
    int best = -1;
    for (const NodeState& n : nodes) {
        if (!n.alive) continue;
        if (best < 0 || n.energy > nodes[best].energy) best = n.id;
    }
    return best;
}

}  // namespace

std::vector<int> elect_heads(std::vector<NodeState>& nodes, const Deployment& dep,
                             const NetworkConfig& cfg, int round, SplitMix64& rng) {
    for (NodeState& n : nodes) {
        if (!n.alive) continue;
        n.role = Role::Member;
        n.cluster_head.reset();
    }

    std::vector<int> heads;
    if (cfg.protocol == ProtocolChoice::Leach) {
        // every alive node consumes one draw; ineligible thresholds are 0
        for (NodeState& n : nodes) {
            if (!n.alive) continue;
            const double draw = rng.next_real();
            const double t =
                leach_threshold(cfg.proto.p_ch, round,
                                leach_eligible(n, cfg.proto.p_ch, round));
            if (draw < t) heads.push_back(n.id);
        }
    } else {
        const double prob = tentative_probability(nodes, dep, cfg);
        std::vector<int> tentative;
        for (NodeState& n : nodes) {
            if (!n.alive) continue;
            const double draw = rng.next_real();
            if (draw < prob) {
                n.role = Role::TentativeHead;
                tentative.push_back(n.id);
            }
        }
        heads = resolve_competition(tentative, nodes, dep, cfg.proto);
        for (int id : tentative)
            if (!std::binary_search(heads.begin(), heads.end(), id))
                nodes[id].role = Role::Member;
    }

    if (heads.empty()) {
        int forced = max_energy_alive(nodes);
        if (forced < 0)
            throw std::logic_error("elect_heads: no alive nodes");
        heads.push_back(forced);
    }

    for (int id : heads) {
        nodes[id].role = Role::Head;
        nodes[id].cluster_head = id;
        nodes[id].rounds_since_ch = 0;
    }
    return heads;
}

ClusterAssignment form_clusters(const std::vector<int>& heads,
                                std::vector<NodeState>& nodes,
                                const Deployment& dep, const NetworkConfig& cfg,
                                int round, const ChargeFn& charge) {
    if (heads.empty())
        throw std::logic_error("form_clusters: empty head set");

    ClusterAssignment ca;
    ca.round = round;
    ca.heads = heads;

    int assigned = 0;
    for (const NodeState& n : nodes) {
        if (!n.alive) continue;
        if (n.role == Role::Head) {
            ca.membership[n.id] = n.id;
        } else {
            int best = -1;
            double best_d = 0.0;
            for (int h : heads) {
                double d = distance(n.pos, nodes[h].pos);
                if (best < 0 || d < best_d) {
                    best = h;
                    best_d = d;
                }
            }
            ca.membership[n.id] = best;
        }
        ++assigned;
    }
    for (const auto& [node, head] : ca.membership)
        ca.cluster_sizes[head] += 1;
    for (auto& [node, head] : ca.membership)
        if (node != head) nodes[node].cluster_head = head;

    // partition property: every alive node in exactly one cluster
    int size_sum = 0;
    for (const auto& [h, sz] : ca.cluster_sizes) size_sum += sz;
    if (size_sum != assigned)
        throw std::logic_error("form_clusters: cluster sizes do not partition the alive set");

    if (cfg.ctrl_packet_bits > 0)
    {
        const std::int64_t cb = cfg.ctrl_packet_bits;
        const bool layered = cfg.protocol == ProtocolChoice::Layered;

        // advertisements: each head broadcasts at its competition radius
        // (LAYERED) or at r0 (LEACH)
        const auto [span_min, span_max] = alive_distance_span(nodes, dep);
        std::map<int, double> adv_radius;
        std::map<int, bool> adv_ok;
        for (int h : heads) {
            double r = layered
                           ? competition_radius(cfg.proto,
                                                distance(nodes[h].pos, dep.bs_position),
                                                span_min, span_max)
                           : cfg.proto.r0;
            adv_radius[h] = r;
            adv_ok[h] = charge(h, Action::TxCtrl, cb, r);
        }

        // every non-head in earshot of a successful broadcast pays one rx
        for (const NodeState& n : nodes) {
            if (!n.alive || n.role == Role::Head) continue;
            for (int h : heads) {
                if (!adv_ok[h]) continue;
                if (distance(n.pos, nodes[h].pos) <= adv_radius[h])
                    if (!charge(n.id, Action::RxCtrl, cb, 0.0)) break;
            }
        }

        // join messages, member -> chosen head
        for (const auto& [m, h] : ca.membership) {
            if (m == h) continue;
            if (charge(m, Action::TxCtrl, cb, distance(nodes[m].pos, nodes[h].pos)))
                charge(h, Action::RxCtrl, cb, 0.0);
        }

        // schedule broadcast at the farthest alive member, members rx it
        for (int h : heads) {
            if (!nodes[h].alive) continue;
            double far = 0.0;
            std::vector<int> members;
            for (const auto& [m, hh] : ca.membership) {
                if (hh != h || m == h || !nodes[m].alive) continue;
                members.push_back(m);
                far = std::max(far, distance(nodes[m].pos, nodes[h].pos));
            }
            if (members.empty()) continue;
            if (!charge(h, Action::TxCtrl, cb, far)) continue;
            for (int m : members) charge(m, Action::RxCtrl, cb, 0.0);
        }
    }

    return ca;
}

std::string cluster_csv_rows(const ClusterAssignment& ca,
                             const std::vector<NodeState>& nodes) {
    std::ostringstream out;
    for (const auto& [node, head] : ca.membership)
        out << ca.round << ',' << node << ',' << head << ','
            << nodes[head].layer << '\n';
    return out.str();
}

}  // namespace wsn
