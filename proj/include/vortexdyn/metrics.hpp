#pragma once

#include <utility>
#include <vector>

#include "vortexdyn/particle_field.hpp"
#include "vortexdyn/transport.hpp"
#include "vortexdyn/velocity.hpp"

namespace vdyn {

struct WeightedAtom {
    Vec2 point;
    double mass{0.0};
};

/// Atomic measure with strictly positive masses.
struct DiscreteMeasure {
    std::vector<WeightedAtom> atoms;
};

/// Atoms with signed masses (equal-total-mass pairs feed w1_signed).
using SignedMeasure = std::vector<WeightedAtom>;

/// Patch intensity a_i = sum of the patch's weights; conserved exactly.
double intensity(const ParticleField& field, int patch);

/// Mass-weighted mean position of the patch.
Vec2 center_of_vorticity(const ParticleField& field, int patch);

/// W_2 distance from the normalized patch to a Dirac at `point`: the square
/// root of the weighted mean squared distance, with |weights| / |a_i| as the
/// probability masses.
double w2_to_dirac(const ParticleField& field, int patch, const Vec2& point);

/// Kantorovich-Rubinstein distance extended to signed measures of equal
/// total mass: the difference is formed on the union support (co-located
/// atoms cancel), split into positive and negative parts, and the
/// transportation problem between the parts is solved exactly.
double w1_signed(const SignedMeasure& f, const SignedMeasure& g);

/// Velocity of the center of vorticity,
///   dX_i/dt = (1/a_i) sum_{p in patch i} w_p F_i(x_p),
/// with F_i the far field of patch i.
Vec2 center_velocity(const FlowState& state, int patch, double blob_delta);

/// Least-squares slope of log(err) against log(eps). Needs >= 3 positive
/// pairs.
double rate_fit(const std::vector<std::pair<double, double>>& pairs);

SignedMeasure particle_measure(const ParticleField& field);
SignedMeasure empirical_measure(const std::vector<double>& strengths,
                                const std::vector<Vec2>& positions);

}  // namespace vdyn
