#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "wsn/model.hpp"
#include "wsn/rng.hpp"

namespace wsn {

inline double distance(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Static geometry of a run: node positions and the ring structure around
// the base station. Immutable once built; d_min/d_max are frozen here and
// drive the competition-radius formula all run long.
struct Deployment {
    std::vector<NodeState> nodes; // ids 0..n-1, initial state
    Point bs_position;
    double d_min = 0.0;
    double d_max = 0.0;
    int layer_count = 1;
};

// layer(i) = max(1, ceil(d(i, BS) / r_layer)); updates layer_count
void assign_layers(Deployment& dep, double r_layer);

// Uniform i.i.d. positions, exactly 2 draws per node (x then y) in id
// order - the draw count is part of the reproducibility contract.
Deployment deploy_uniform(const NetworkConfig& cfg, SplitMix64& rng);

// Same bookkeeping over caller-chosen positions (hand-built scenarios).
Deployment deploy_fixed(const NetworkConfig& cfg, const std::vector<Point>& positions);

// id,x,y,layer
std::string deployment_csv(const Deployment& dep);

}  // namespace wsn
