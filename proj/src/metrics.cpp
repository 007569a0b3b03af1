#include "vortexdyn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace vdyn {

namespace {

void check_patch(const ParticleField& field, int patch) {
    if (patch < 0 || patch >= field.patch_count)
        throw std::out_of_range("unknown patch index " + std::to_string(patch));
}

}  // namespace

double intensity(const ParticleField& field, int patch) {
    check_patch(field, patch);
    double a = 0.0;
    for (const Particle& q : field.particles)
        if (q.patch == patch) a += q.weight;
    return a;
}

Vec2 center_of_vorticity(const ParticleField& field, int patch) {
    const double a = intensity(field, patch);
    if (a == 0.0) throw std::domain_error("center_of_vorticity: zero patch intensity");
    Vec2 c{0.0, 0.0};
    for (const Particle& q : field.particles)
        if (q.patch == patch) c += q.pos * q.weight;
    return c / a;
}

double w2_to_dirac(const ParticleField& field, int patch, const Vec2& point) {
    check_patch(field, patch);
    double abs_mass = 0.0;
    double second_moment = 0.0;
    for (const Particle& q : field.particles) {
        if (q.patch != patch) continue;
        abs_mass += std::abs(q.weight);
        second_moment += std::abs(q.weight) * (q.pos - point).norm_sq();
    }
    if (abs_mass == 0.0) throw std::domain_error("w2_to_dirac: zero patch intensity");
    return std::sqrt(second_moment / abs_mass);
}

double w1_signed(const SignedMeasure& f, const SignedMeasure& g) {
    double total_f = 0.0, total_g = 0.0;
    for (const WeightedAtom& a : f) total_f += a.mass;
    for (const WeightedAtom& a : g) total_g += a.mass;
    const double scale = std::max({1.0, std::abs(total_f), std::abs(total_g)});
    if (std::abs(total_f - total_g) > 1e-10 * scale)
        throw std::invalid_argument("w1_signed: total masses differ (" +
                                    std::to_string(total_f) + " vs " + std::to_string(total_g) +
                                    ")");

    // Signed difference on the union support; bitwise co-located atoms merge.
    SignedMeasure diff;
    diff.reserve(f.size() + g.size());
    for (const WeightedAtom& a : f) diff.push_back(a);
    for (const WeightedAtom& a : g) diff.push_back({a.point, -a.mass});
    std::sort(diff.begin(), diff.end(), [](const WeightedAtom& a, const WeightedAtom& b) {
        return a.point.x != b.point.x ? a.point.x < b.point.x : a.point.y < b.point.y;
    });

    std::vector<Vec2> src_pts, snk_pts;
    std::vector<double> src_mass, snk_mass;
    std::size_t i = 0;
    while (i < diff.size()) {
        double net = diff[i].mass;
        std::size_t j = i + 1;
        while (j < diff.size() && diff[j].point == diff[i].point) net += diff[j++].mass;
        if (net > 0.0) {
            src_pts.push_back(diff[i].point);
            src_mass.push_back(net);
        } else if (net < 0.0) {
            snk_pts.push_back(diff[i].point);
            snk_mass.push_back(-net);
        }
        i = j;
    }
    if (src_pts.empty() || snk_pts.empty()) return 0.0;
    return solve_transport(src_pts, src_mass, snk_pts, snk_mass).cost;
}

Vec2 center_velocity(const FlowState& state, int patch, double blob_delta) {
    const double a = intensity(state.field, patch);
    if (a == 0.0) throw std::domain_error("center_velocity: zero patch intensity");
    Vec2 v{0.0, 0.0};
    for (const Particle& q : state.field.particles) {
        if (q.patch != patch) continue;
        v += far_field_at(state, q.pos, patch, blob_delta) * q.weight;
    }
    return v / a;
}

double rate_fit(const std::vector<std::pair<double, double>>& pairs) {
    if (pairs.size() < 3)
        throw std::invalid_argument("rate_fit: need at least 3 (eps, err) pairs");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [eps, err] : pairs) {
        if (eps <= 0.0 || err <= 0.0)
            throw std::invalid_argument("rate_fit: values must be positive");
        const double lx = std::log(eps), ly = std::log(err);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(pairs.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SignedMeasure particle_measure(const ParticleField& field) {
    SignedMeasure out;
    out.reserve(field.particles.size());
    for (const Particle& q : field.particles) out.push_back({q.pos, q.weight});
    return out;
}

SignedMeasure empirical_measure(const std::vector<double>& strengths,
                                const std::vector<Vec2>& positions) {
    SignedMeasure out;
    out.reserve(strengths.size());
    for (std::size_t i = 0; i < strengths.size(); ++i)
        out.push_back({positions[i], strengths[i]});
    return out;
}

}  // namespace vdyn
