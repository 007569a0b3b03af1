#include "vortexdyn/euler_sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vortexdyn/errors.hpp"
#include "vortexdyn/kernels.hpp"
#include "vortexdyn/parallel.hpp"

namespace vdyn {

namespace {

double resolve_lambda(const PatchSpec& spec, double p) {
    if (spec.lambda >= 0.0) {
        if (spec.lambda > 1.0) throw config_error("make_patch: lambda must lie in [0, 1]");
        return spec.lambda;
    }
    return std::pow(spec.eps, 2.0 / p);
}

}  // namespace

std::vector<Particle> make_patch(const PatchSpec& spec, const Domain& domain, int patch_index,
                                 double p) {
    if (spec.eps <= 0.0) throw config_error("make_patch: eps must be positive");
    if (spec.h <= 0.0 || spec.h > spec.eps / 8.0)
        throw config_error("make_patch: need 0 < h <= eps/8");
    if (spec.strength == 0.0) throw config_error("make_patch: zero patch strength");
    if (!domain.contains(spec.center)) throw config_error("make_patch: center outside domain");

    const bool singular = spec.profile == PatchProfile::SingularPerturbed;
    if (singular && spec.beta * p >= 2.0)
        throw config_error("make_patch: beta * p >= 2 breaks L^p integrability");
    const double lambda = singular ? resolve_lambda(spec, p) : 0.0;

    const double eps = spec.eps;
    const double h = spec.h;
    const double uniform_density = (1.0 - lambda) / (std::numbers::pi * eps * eps);
    // Singular component c |x|^(-beta) carrying mass fraction lambda on
    // B_eps, truncated below radius h/2 to keep the midpoint rule finite;
    // the truncation deficit is absorbed by the exact-mass rescale.
    const double singular_density =
        lambda * (2.0 - spec.beta) / (kTwoPi * std::pow(eps, 2.0 - spec.beta));

    std::vector<Particle> out;
    const int span = int(std::ceil(eps / h)) + 1;
    const double cell_mass = h * h;
    for (int iy = -span; iy < span; ++iy) {
        for (int ix = -span; ix < span; ++ix) {
            const Vec2 c{spec.center.x + (ix + 0.5) * h, spec.center.y + (iy + 0.5) * h};
            const double r = distance(c, spec.center);
            if (r >= eps) continue;
            const double wu = uniform_density * cell_mass;
            if (wu > 0.0)
                out.push_back({c, wu, patch_index, PartTag::InfPart});
            if (singular && r >= 0.5 * h) {
                const double ws = singular_density * std::pow(r, -spec.beta) * cell_mass;
                out.push_back({c, ws, patch_index, PartTag::PPart});
            }
        }
    }
    if (out.empty()) throw config_error("make_patch: no quadrature cells inside the patch");

    // Rescale so the patch mass equals the strength exactly (bitwise),
    // then multiply by the signed strength.
    double total = 0.0;
    for (const Particle& q : out) total += q.weight;
    const double scale = spec.strength / total;
    for (Particle& q : out) q.weight *= scale;
    for (int iter = 0; iter < 4; ++iter) {
        double sum = 0.0;
        for (const Particle& q : out) sum += q.weight;
        const double residual = spec.strength - sum;
        if (residual == 0.0) break;
        out.front().weight += residual;
    }
    return out;
}

ParticleField build_field(const std::vector<PatchSpec>& specs, const Domain& domain,
                          double delta, double p) {
    if (p <= 2.0) throw config_error("build_field: integrability exponent p must exceed 2");
    ParticleField field;
    field.patch_count = int(specs.size());
    field.delta = delta;
    field.p = p;
    field.eps = 0.0;
    field.h = 0.0;

    for (std::size_t i = 0; i < specs.size(); ++i) {
        const PatchSpec& si = specs[i];
        field.eps = std::max(field.eps, si.eps);
        field.h = std::max(field.h, si.h);
        const double bd = domain.contains(si.center) ? domain.boundary_distance(si.center) : 0.0;
        if (bd - si.eps < delta) {
            std::ostringstream msg;
            msg << "patch " << i << " support ball violates the boundary clearance: "
                << "dist " << bd - si.eps << " < delta " << delta;
            throw config_error(msg.str());
        }
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            const double gap = distance(si.center, specs[j].center) - si.eps - specs[j].eps;
            if (gap < delta) {
                std::ostringstream msg;
                msg << "patches " << i << " and " << j
                    << " support balls violate the separation clearance: gap " << gap
                    << " < delta " << delta;
                throw config_error(msg.str());
            }
        }
        const auto particles = make_patch(si, domain, int(i), p);
        field.particles.insert(field.particles.end(), particles.begin(), particles.end());
    }

    field.patch_norms.assign(specs.size(), PatchNorms{});
    for (const Particle& q : field.particles) {
        PatchNorms& n = field.patch_norms[std::size_t(q.patch)];
        const double h2 = specs[std::size_t(q.patch)].h * specs[std::size_t(q.patch)].h;
        n.mass += q.weight;
        if (q.part == PartTag::PPart)
            n.lp_proxy += std::pow(std::abs(q.weight) / h2, p) * h2;
        else
            n.linf_proxy = std::max(n.linf_proxy, std::abs(q.weight) / h2);
    }
    for (PatchNorms& n : field.patch_norms) n.lp_proxy = std::pow(n.lp_proxy, 1.0 / p);

    for (const Particle& q : field.particles) {
        if (q.weight * field.patch_norms[std::size_t(q.patch)].mass < 0.0)
            throw config_error("build_field: mixed weight signs within a patch");
    }
    return field;
}

namespace {

std::vector<Vec2> stage_velocities(const FlowState& state, double blob_delta) {
    const int n = int(state.field.particles.size());
    std::vector<Vec2> v(static_cast<std::size_t>(n));
    parallel_for(n, [&](int q) {
        v[std::size_t(q)] =
            velocity_at(state, state.field.particles[std::size_t(q)].pos, blob_delta);
    });
    return v;
}

ParticleField displaced_field(const ParticleField& base, const std::vector<Vec2>& dir,
                              double scale) {
    ParticleField f = base;
    for (std::size_t q = 0; q < f.particles.size(); ++q)
        f.particles[q].pos += dir[q] * scale;
    return f;
}

}  // namespace

ParticleField advect(const FlowState& state, double dt, double blob_delta) {
    if (state.field.particles.empty()) return state.field;

    const std::vector<Vec2> k1 = stage_velocities(state, blob_delta);
    const FlowState s2(state.domain, displaced_field(state.field, k1, 0.5 * dt),
                       state.circulations);
    const std::vector<Vec2> k2 = stage_velocities(s2, blob_delta);
    const FlowState s3(state.domain, displaced_field(state.field, k2, 0.5 * dt),
                       state.circulations);
    const std::vector<Vec2> k3 = stage_velocities(s3, blob_delta);
    const FlowState s4(state.domain, displaced_field(state.field, k3, dt), state.circulations);
    const std::vector<Vec2> k4 = stage_velocities(s4, blob_delta);

    ParticleField out = state.field;
    for (std::size_t q = 0; q < out.particles.size(); ++q)
        out.particles[q].pos += (k1[q] + (k2[q] + k3[q]) * 2.0 + k4[q]) * (dt / 6.0);
    return out;
}

double min_interpatch_distance(const ParticleField& field) {
    if (field.patch_count < 2) return std::numeric_limits<double>::infinity();

    // Uniform-grid buckets: with cell size s, every pair closer than s lies
    // in neighboring cells, so the scan is exact whenever it finds any pair;
    // otherwise the cell size doubles.
    double cell = std::max(field.delta > 0.0 ? 0.5 * field.delta : 0.0, 4.0 * field.h);
    if (cell <= 0.0) cell = 1.0;
    for (;;) {
        std::map<std::pair<long, long>, std::vector<int>> buckets;
        for (std::size_t q = 0; q < field.particles.size(); ++q) {
            const Vec2& x = field.particles[q].pos;
            buckets[{long(std::floor(x.x / cell)), long(std::floor(x.y / cell))}].push_back(
                int(q));
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [key, ids] : buckets) {
            for (long dy = -1; dy <= 1; ++dy) {
                for (long dx = -1; dx <= 1; ++dx) {
                    const auto it = buckets.find({key.first + dx, key.second + dy});
                    if (it == buckets.end()) continue;
                    for (int a : ids) {
                        const Particle& pa = field.particles[std::size_t(a)];
                        for (int b : it->second) {
                            if (b <= a) continue;
                            const Particle& pb = field.particles[std::size_t(b)];
                            if (pa.patch == pb.patch) continue;
                            best = std::min(best, distance(pa.pos, pb.pos));
                        }
                    }
                }
            }
        }
        if (best < cell) return best;
        cell *= 2.0;
    }
}

SeparationReport support_monitor(const ParticleField& field, const Domain& domain) {
    double min_boundary = std::numeric_limits<double>::infinity();
    for (const Particle& q : field.particles)
        min_boundary = std::min(
            min_boundary, domain.contains(q.pos) ? domain.boundary_distance(q.pos) : 0.0);
    return SeparationReport::make(min_interpatch_distance(field), min_boundary, field.delta);
}

}  // namespace vdyn
