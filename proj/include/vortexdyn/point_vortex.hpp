#pragma once

#include <vector>

#include "vortexdyn/geometry.hpp"
#include "vortexdyn/monitor.hpp"

namespace vdyn {

/// State of the Kirchhoff-Routh system: N vortex positions and strengths,
/// M hole circulations, simulation clock.
struct PointVortexState {
    std::vector<Vec2> positions;
    std::vector<double> strengths;
    std::vector<double> circulations;
    double t{0.0};
};

/// separation_stop specialization carrying the last state that still
/// satisfied the monitor when a step had to be abandoned.
class pv_separation_stop : public separation_stop {
  public:
    pv_separation_stop(const std::string& what, SeparationReport report, std::string condition,
                       PointVortexState last_good)
        : separation_stop(what, report, std::move(condition)), last_good(std::move(last_good)) {}

    PointVortexState last_good;
};

/// Exact pairwise and boundary minima of the vortex positions against the
/// delta/2 threshold. Positions outside the domain report min_boundary = 0.
SeparationReport separation_monitor(const PointVortexState& state, const Domain& domain,
                                    double delta);

/// Right-hand side of the Kirchhoff-Routh system,
///   dY_i/dt = sum_{j != i} a_j K(Y_i - Y_j) + grad^perp theta(Y_i)
///           + sum_m (sum_j a_j w_m(Y_j) + gamma_m) xi_m(Y_i).
std::vector<Vec2> kr_rhs(const PointVortexState& state, const Domain& domain);

/// One classical RK4 step. The separation monitor is checked at every
/// internal stage; a violation aborts the step with a pv_separation_stop
/// carrying the input state.
PointVortexState step(const PointVortexState& state, const Domain& domain, double dt,
                      double delta);

/// Kirchhoff-Routh energy for simply connected domains (M = 0):
///   H = sum_{i<j} a_i a_j G_D(Y_i, Y_j) + 1/2 sum_i a_i^2 h_D(Y_i),
/// with G_D the domain Green function and h_D its regular part on the
/// diagonal. Constant along exact trajectories. Throws for M > 0.
double hamiltonian(const PointVortexState& state, const Domain& domain);

/// Default step size: 0.1 * min(delta^2, 0.1 * min_pair^2 / max|a_i|).
double suggested_dt(const PointVortexState& state, double delta);

}  // namespace vdyn
