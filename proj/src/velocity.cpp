#include "vortexdyn/velocity.hpp"

#include <stdexcept>
#include <string>

#include "vortexdyn/kernels.hpp"

namespace vdyn {

FlowState::FlowState(Domain domain_in, ParticleField field_in,
                     std::vector<double> circulations_in)
    : domain(std::move(domain_in)), field(std::move(field_in)),
      circulations(std::move(circulations_in)), eta(eta_evaluator(domain, field)) {
    const int M = domain.hole_count();
    if (int(circulations.size()) != M)
        throw std::invalid_argument("FlowState: expected " + std::to_string(M) +
                                    " circulation values, got " +
                                    std::to_string(circulations.size()));
    measures.reserve(std::size_t(M));
    xi.reserve(std::size_t(M));
    hole_coeffs.reserve(std::size_t(M));
    for (int m = 1; m <= M; ++m) {
        measures.push_back(harmonic_measure(domain, m));
        xi.push_back(hole_field(domain, m));
        double c = circulations[std::size_t(m - 1)];
        for (const Particle& p : field.particles)
            c += p.weight * measures.back().value(p.pos);
        hole_coeffs.push_back(c);
    }
}

Vec2 blob_velocity(const ParticleField& field, const Vec2& x, double blob_delta,
                   int exclude_patch) {
    const double d2 = blob_delta * blob_delta;
    Vec2 v{0.0, 0.0};
    for (const Particle& p : field.particles) {
        if (p.patch == exclude_patch) continue;
        const Vec2 r = x - p.pos;
        const double s = p.weight * kInvTwoPi / (r.norm_sq() + d2);
        v.x -= r.y * s;
        v.y += r.x * s;
    }
    return v;
}

Vec2 velocity_at(const FlowState& state, const Vec2& x, double blob_delta) {
    Vec2 v = blob_velocity(state.field, x, blob_delta);
    v += state.eta.perp_gradient(x);
    for (std::size_t m = 0; m < state.xi.size(); ++m)
        v += state.xi[m].at(x) * state.hole_coeffs[m];
    return v;
}

Vec2 far_field_at(const FlowState& state, const Vec2& x, int patch, double blob_delta) {
    if (patch < 0 || patch >= state.field.patch_count)
        throw std::out_of_range("far_field_at: unknown patch index " + std::to_string(patch));
    Vec2 v = blob_velocity(state.field, x, blob_delta, patch);
    v += state.eta.perp_gradient(x);
    for (std::size_t m = 0; m < state.xi.size(); ++m)
        v += state.xi[m].at(x) * state.hole_coeffs[m];
    return v;
}

const std::vector<double>& hole_coefficients(const FlowState& state) {
    return state.hole_coeffs;
}

}  // namespace vdyn
