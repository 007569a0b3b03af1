#pragma once

#include <vector>

#include "vortexdyn/vec2.hpp"

namespace vdyn {

/// Tag of the L^p / L^infinity decomposition a particle's mass belongs to.
/// Bounded (uniform) profile mass is InfPart; the singular perturbation is
/// PPart.
enum class PartTag { PPart, InfPart };

struct Particle {
    Vec2 pos;
    double weight{0.0};  // signed; immutable under advection
    int patch{0};
    PartTag part{PartTag::InfPart};
};

/// Discrete norm proxies of one patch, computed from the initial cells and
/// carried as metadata. Transport never changes weights, so these are
/// time-invariant by construction.
struct PatchNorms {
    double mass{0.0};      // sum of weights = a_i
    double lp_proxy{0.0};  // (sum over p-part cells |w/h^2|^p h^2)^(1/p)
    double linf_proxy{0.0};// max over inf-part cells |w|/h^2
};

/// Weighted point set representing a vorticity field, partitioned into
/// labeled patches. Weights never change after construction; only positions
/// move.
struct ParticleField {
    std::vector<Particle> particles;
    int patch_count{0};
    double eps{0.0};    // concentration scale
    double delta{0.0};  // separation scale
    double p{3.0};      // integrability exponent (> 2)
    double h{0.0};      // initial grid spacing (norm-proxy cell size)
    std::vector<PatchNorms> patch_norms;
};

enum class PatchProfile { UniformDisc, SingularPerturbed };

/// Recipe for one concentrated patch supported on the ball B_eps(center).
struct PatchSpec {
    Vec2 center;
    double strength{1.0};
    PatchProfile profile{PatchProfile::UniformDisc};
    double eps{0.1};
    double h{0.0125};
    double beta{0.5};    // singular profile exponent, requires beta*p < 2
    double lambda{-1.0}; // singular mass fraction; < 0 selects eps^(2/p)
};

}  // namespace vdyn
