#pragma once

#include <vector>

#include "vortexdyn/geometry.hpp"
#include "vortexdyn/monitor.hpp"
#include "vortexdyn/particle_field.hpp"
#include "vortexdyn/velocity.hpp"

namespace vdyn {

/// Deterministic cell quadrature of one patch profile: a square grid of
/// spacing h is centered on the patch, one particle per cell centroid inside
/// B_eps with the midpoint-rule cell mass, and the weights are rescaled at
/// the end so their sum equals the strength exactly. `p` is the field's
/// integrability exponent, used to resolve the automatic singular mass
/// fraction lambda = eps^(2/p) and to validate beta * p < 2.
std::vector<Particle> make_patch(const PatchSpec& spec, const Domain& domain, int patch_index,
                                 double p);

/// Assembles the full field from patch specs, enforcing the initial
/// clearances (pairwise patch-ball distance >= delta, boundary distance
/// >= delta) and recording the discrete norm proxies.
ParticleField build_field(const std::vector<PatchSpec>& specs, const Domain& domain,
                          double delta, double p);

/// One RK4 step of every particle along the flow of velocity_at. Velocities
/// are re-assembled at each internal stage (eta depends on the particle
/// positions). Weights, tags and patch labels are untouched.
ParticleField advect(const FlowState& state, double dt, double blob_delta);

/// Support separation: minimum distance over particle pairs in different
/// patches and minimum boundary distance, against delta/2 (delta from the
/// field metadata).
SeparationReport support_monitor(const ParticleField& field, const Domain& domain);

/// Exact minimum inter-patch particle distance (grid-bucketed; +infinity for
/// fewer than two patches).
double min_interpatch_distance(const ParticleField& field);

}  // namespace vdyn
