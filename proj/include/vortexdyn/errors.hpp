#pragma once

#include <stdexcept>
#include <string>

namespace vdyn {

/// Bad scenario/domain configuration detected before any time stepping.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Linear-algebra failure inside a boundary solve (singular or
/// catastrophically ill-conditioned Nystrom system).
class solver_error : public std::runtime_error {
  public:
    explicit solver_error(const std::string& what) : std::runtime_error(what) {}
};

/// Query of a quadrature-backed evaluator closer to the boundary than its
/// accuracy clearance allows. Carries the offending distance.
class evaluation_error : public std::runtime_error {
  public:
    evaluation_error(const std::string& what, double boundary_dist, double clearance)
        : std::runtime_error(what), boundary_distance(boundary_dist), clearance(clearance) {}

    double boundary_distance;
    double clearance;
};

}  // namespace vdyn
