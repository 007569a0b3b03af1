#pragma once

#include <vector>

#include "vortexdyn/vec2.hpp"

namespace vdyn {

/// Optimal transport plan between balanced positive measures: nonnegative
/// flows whose marginals match the supplies and demands, with
/// cost = sum flow * Euclidean distance.
struct TransportPlan {
    struct Flow {
        int source{0};
        int sink{0};
        double mass{0.0};
    };
    std::vector<Flow> flows;
    double cost{0.0};
};

/// Exact minimum-cost transport on the dense bipartite instance
/// (transportation simplex with a degeneracy-breaking perturbation; the
/// final basis is re-flowed with the exact masses). Supplies and demands
/// must be positive and balanced.
TransportPlan solve_transport(const std::vector<Vec2>& source_points,
                              const std::vector<double>& supply,
                              const std::vector<Vec2>& sink_points,
                              const std::vector<double>& demand);

}  // namespace vdyn
