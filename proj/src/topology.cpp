#include "wsn/topology.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wsn/format.hpp"

namespace wsn {

void assign_layers(Deployment& dep, double r_layer) {
    int max_layer = 1;
    for (NodeState& n : dep.nodes) {
        double d = distance(n.pos, dep.bs_position);
        n.layer = std::max(1, static_cast<int>(std::ceil(d / r_layer)));
        max_layer = std::max(max_layer, n.layer);
    }
    dep.layer_count = max_layer;
}

namespace {

Deployment finish_deployment(const NetworkConfig& cfg, std::vector<NodeState> nodes) {
    Deployment dep;
    dep.nodes = std::move(nodes);
    dep.bs_position = cfg.bs_position;
    dep.d_min = std::numeric_limits<double>::infinity();
    dep.d_max = 0.0;
    for (const NodeState& n : dep.nodes) {
        double d = distance(n.pos, dep.bs_position);
        dep.d_min = std::min(dep.d_min, d);
        dep.d_max = std::max(dep.d_max, d);
    }
    assign_layers(dep, cfg.proto.r_layer);
    return dep;
}

NodeState fresh_node(const NetworkConfig& cfg, int id, Point pos) {
    NodeState n;
    n.id = id;
    n.pos = pos;
    n.energy = cfg.initial_energy;
    n.alive = true;
    n.role = Role::Member;
    return n;
}

}  // namespace

Deployment deploy_uniform(const NetworkConfig& cfg, SplitMix64& rng) {
    std::vector<NodeState> nodes;
    nodes.reserve(cfg.node_count);
    for (int i = 0; i < cfg.node_count; ++i) {
        double x = rng.next_real() * cfg.field_width;
        double y = rng.next_real() * cfg.field_height;
        nodes.push_back(fresh_node(cfg, i, {x, y}));
    }
    return finish_deployment(cfg, std::move(nodes));
}

Deployment deploy_fixed(const NetworkConfig& cfg, const std::vector<Point>& positions) {
    if (static_cast<int>(positions.size()) != cfg.node_count)
        throw std::invalid_argument("deploy_fixed: position count != node_count");
    std::vector<NodeState> nodes;
    nodes.reserve(positions.size());
    for (int i = 0; i < cfg.node_count; ++i)
        nodes.push_back(fresh_node(cfg, i, positions[i]));
    return finish_deployment(cfg, std::move(nodes));
}

std::string deployment_csv(const Deployment& dep) {
    std::ostringstream out;
    out << "id,x,y,layer\n";
    for (const NodeState& n : dep.nodes)
        out << n.id << ',' << fmt_double(n.pos.x) << ',' << fmt_double(n.pos.y)
            << ',' << n.layer << '\n';
    return out.str();
}

}  // namespace wsn
