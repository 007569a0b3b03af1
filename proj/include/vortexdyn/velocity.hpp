#pragma once

#include <vector>

#include "vortexdyn/geometry.hpp"
#include "vortexdyn/harmonic.hpp"
#include "vortexdyn/particle_field.hpp"

namespace vdyn {

/// Immutable snapshot for velocity evaluation: the particle field together
/// with the solved eta for the current positions, the (domain-cached)
/// harmonic measures and hole fields, and the hole coefficients
///   c_m = sum_p weight_p w_m(x_p) + gamma_m.
/// Rebuild the state whenever particles move; queries are pure and safe to
/// issue from any number of threads.
struct FlowState {
    FlowState(Domain domain, ParticleField field, std::vector<double> circulations);

    Domain domain;
    ParticleField field;
    std::vector<double> circulations;
    HarmonicEvaluator eta;
    std::vector<HarmonicEvaluator> measures;
    std::vector<HoleField> xi;
    std::vector<double> hole_coeffs;
};

/// Blob sum over the particles, skipping `exclude_patch` if >= 0. A particle
/// at x contributes nothing (blob kernel vanishes at the origin).
Vec2 blob_velocity(const ParticleField& field, const Vec2& x, double blob_delta,
                   int exclude_patch = -1);

/// Full velocity u(x) = K_delta * omega + grad^perp eta + sum_m c_m xi_m.
Vec2 velocity_at(const FlowState& state, const Vec2& x, double blob_delta);

/// Far field of patch i: velocity_at minus the blob sum over patch i's own
/// particles.
Vec2 far_field_at(const FlowState& state, const Vec2& x, int patch, double blob_delta);

const std::vector<double>& hole_coefficients(const FlowState& state);

}  // namespace vdyn
