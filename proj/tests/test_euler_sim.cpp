#include <cmath>
#include <random>

#include "doctest.h"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/euler_sim.hpp"
#include "vortexdyn/kernels.hpp"
#include "vortexdyn/metrics.hpp"

using namespace vdyn;

namespace {

PatchSpec uniform_spec(Vec2 center, double strength, double eps) {
    PatchSpec s;
    s.center = center;
    s.strength = strength;
    s.eps = eps;
    s.h = eps / 10.0;
    return s;
}

// Independent recomputation of the discrete L^p proxy from the particles.
double lp_proxy_oracle(const std::vector<Particle>& particles, double h, double p) {
    double sum = 0.0;
    for (const Particle& q : particles)
        if (q.part == PartTag::PPart) sum += std::pow(std::abs(q.weight) / (h * h), p) * h * h;
    return std::pow(sum, 1.0 / p);
}

}  // namespace

TEST_SUITE("euler_sim") {

TEST_CASE("uniform disc patch: exact mass, W2, sup proxy") {
    const Domain disk = Domain::unit_disk(64);
    const PatchSpec spec = uniform_spec({0.1, 0.0}, 1.0, 0.1);
    const ParticleField field = build_field({spec}, disk, 0.3, 3.0);

    double mass = 0.0;
    for (const Particle& q : field.particles) mass += q.weight;
    CHECK(mass == 1.0);  // bitwise, by the factory rescale

    CHECK(w2_to_dirac(field, 0, spec.center) ==
          doctest::Approx(spec.eps / std::numbers::sqrt2).epsilon(0.02));

    double sup = 0.0;
    for (const Particle& q : field.particles)
        sup = std::max(sup, std::abs(q.weight) / (spec.h * spec.h));
    CHECK(sup == doctest::Approx(1.0 / (std::numbers::pi * spec.eps * spec.eps)).epsilon(0.05));

    // Grid refinement drives W2 to eps / sqrt(2); the decay carries lattice
    // oscillations, so compare across a wide refinement.
    PatchSpec fine = spec;
    fine.h = spec.eps / 48.0;
    const ParticleField ff = build_field({fine}, disk, 0.3, 3.0);
    const double target = spec.eps / std::numbers::sqrt2;
    CHECK(std::abs(w2_to_dirac(ff, 0, spec.center) - target) < 0.001 * target);
    CHECK(std::abs(w2_to_dirac(field, 0, spec.center) - target) < 0.02 * target);

    // Negative strength rescales exactly.
    PatchSpec neg = uniform_spec({0.1, 0.0}, -2.0, 0.1);
    const ParticleField nf = build_field({neg}, disk, 0.3, 3.0);
    CHECK(intensity(nf, 0) == -2.0);
}

TEST_CASE("patch center of vorticity sits on the nominal center") {
    const Domain disk = Domain::unit_disk(64);
    const PatchSpec spec = uniform_spec({0.2, -0.1}, 1.0, 0.08);
    const ParticleField field = build_field({spec}, disk, 0.3, 3.0);
    const Vec2 c = center_of_vorticity(field, 0);
    CHECK(distance(c, spec.center) <= spec.h * spec.h);
}

TEST_CASE("singular-perturbed patch: L^p proxy scaling in eps") {
    const Domain disk = Domain::unit_disk(64);
    const double p = 3.0, beta = 0.5;
    double prev_scaled = -1.0;
    for (double eps : {0.1, 0.05}) {
        PatchSpec spec = uniform_spec({0.0, 0.0}, 1.0, eps);
        spec.profile = PatchProfile::SingularPerturbed;
        spec.beta = beta;
        const ParticleField field = build_field({spec}, disk, 0.5, p);
        const double proxy = lp_proxy_oracle(field.particles, spec.h, p);
        CHECK(field.patch_norms[0].lp_proxy == doctest::Approx(proxy).epsilon(1e-12));
        // Expected ~ eps^{-2 (1 - 2/p)}; the scaled value is eps-flat within 1.5x.
        const double scaled = proxy * std::pow(eps, 2.0 * (1.0 - 2.0 / p));
        if (prev_scaled > 0.0) {
            CHECK(scaled / prev_scaled < 1.5);
            CHECK(prev_scaled / scaled < 1.5);
        }
        prev_scaled = scaled;

        // Both parts present, same sign, total mass exact.
        bool has_p = false, has_inf = false;
        double mass = 0.0;
        for (const Particle& q : field.particles) {
            has_p |= q.part == PartTag::PPart;
            has_inf |= q.part == PartTag::InfPart;
            CHECK(q.weight > 0.0);
            mass += q.weight;
        }
        CHECK(has_p);
        CHECK(has_inf);
        CHECK(mass == 1.0);
    }
}

TEST_CASE("config validation errors") {
    const Domain disk = Domain::unit_disk(64);
    PatchSpec bad_beta = uniform_spec({0.0, 0.0}, 1.0, 0.1);
    bad_beta.profile = PatchProfile::SingularPerturbed;
    bad_beta.beta = 0.8;  // beta * p = 2.4 >= 2
    CHECK_THROWS_AS(build_field({bad_beta}, disk, 0.3, 3.0), config_error);

    // Boundary clearance violation.
    CHECK_THROWS_AS(build_field({uniform_spec({0.85, 0.0}, 1.0, 0.1)}, disk, 0.3, 3.0),
                    config_error);
    // Pairwise clearance violation.
    CHECK_THROWS_AS(build_field({uniform_spec({0.15, 0.0}, 1.0, 0.1),
                                 uniform_spec({-0.15, 0.0}, 1.0, 0.1)},
                                disk, 0.3, 3.0),
                    config_error);
    // Coarse grid rejected.
    PatchSpec coarse = uniform_spec({0.0, 0.0}, 1.0, 0.1);
    coarse.h = 0.05;
    CHECK_THROWS_AS(build_field({coarse}, disk, 0.3, 3.0), config_error);
}

TEST_CASE("support monitor: minima and bucketed scan vs brute force") {
    const Domain disk = Domain::unit_disk(64);
    ParticleField f;
    f.patch_count = 2;
    f.delta = 0.5;
    f.h = 0.01;
    f.particles.push_back({{0.2, 0.0}, 1.0, 0, PartTag::InfPart});
    f.particles.push_back({{-0.2, 0.0}, 1.0, 1, PartTag::InfPart});
    const SeparationReport r = support_monitor(f, disk);
    CHECK(r.min_pair == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(r.min_boundary == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(r.ok);

    ParticleField solo = f;
    solo.particles.pop_back();
    solo.patch_count = 1;
    CHECK(std::isinf(support_monitor(solo, disk).min_pair));

    // Random fields: bucketed result equals the O(P^2) scan.
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> coord(-0.6, 0.6);
    for (int trial = 0; trial < 10; ++trial) {
        ParticleField rf;
        rf.patch_count = 3;
        rf.delta = 0.2;
        rf.h = 0.01;
        for (int q = 0; q < 120; ++q)
            rf.particles.push_back({{coord(rng), coord(rng)}, 0.01, int(rng() % 3),
                                    PartTag::InfPart});
        double brute = std::numeric_limits<double>::infinity();
        for (std::size_t a = 0; a < rf.particles.size(); ++a)
            for (std::size_t b = a + 1; b < rf.particles.size(); ++b)
                if (rf.particles[a].patch != rf.particles[b].patch)
                    brute = std::min(brute,
                                     distance(rf.particles[a].pos, rf.particles[b].pos));
        CHECK(min_interpatch_distance(rf) == doctest::Approx(brute).epsilon(1e-14));
    }
}

TEST_CASE("advect: centered symmetric patch stays centered, W2 steady") {
    const Domain disk = Domain::unit_disk(128);
    PatchSpec spec = uniform_spec({0.0, 0.0}, 1.0, 0.2);
    spec.h = spec.eps / 10.0;
    ParticleField field = build_field({spec}, disk, 0.5, 3.0);
    const double blob = 2.0 * spec.h;
    const double w2_start = w2_to_dirac(field, 0, {0.0, 0.0});

    const double dt = 0.01;
    for (int k = 0; k < 100; ++k) {
        const FlowState state(disk, field, {});
        field = advect(state, dt, blob);
    }
    const Vec2 c = center_of_vorticity(field, 0);
    CHECK(c.norm() < 1e-8);
    CHECK(std::abs(w2_to_dirac(field, 0, {0.0, 0.0}) - w2_start) < 1e-4);

    // Mass unchanged to the bit.
    double mass = 0.0;
    for (const Particle& q : field.particles) mass += q.weight;
    CHECK(mass == 1.0);
}

TEST_CASE("advect: RK4 order via dt halving against a fine reference") {
    const Domain disk = Domain::unit_disk(64);
    PatchSpec spec = uniform_spec({0.3, 0.0}, 1.0, 0.1);
    spec.h = spec.eps / 8.0;
    const ParticleField start = build_field({spec}, disk, 0.3, 3.0);
    const double blob = 2.0 * spec.h;
    const double t_end = 0.1;

    const auto run = [&](double dt) {
        ParticleField f = start;
        const int steps = int(std::round(t_end / dt));
        for (int k = 0; k < steps; ++k) f = advect(FlowState(disk, f, {}), dt, blob);
        return f;
    };
    const ParticleField ref = run(t_end / 128.0);
    const auto err_against_ref = [&](const ParticleField& f) {
        double e = 0.0;
        for (std::size_t q = 0; q < f.particles.size(); ++q)
            e = std::max(e, distance(f.particles[q].pos, ref.particles[q].pos));
        return e;
    };
    const double e1 = err_against_ref(run(t_end / 8.0));
    const double e2 = err_against_ref(run(t_end / 16.0));
    CHECK(e1 / e2 > 8.0);   // ~16x for RK4, generous floor
    CHECK(e1 / e2 < 40.0);
}

TEST_CASE("advect is a no-op for an empty field") {
    const Domain disk = Domain::unit_disk(64);
    ParticleField empty;
    empty.patch_count = 0;
    const FlowState state(disk, empty, {});
    const ParticleField out = advect(state, 0.1, 0.01);
    CHECK(out.particles.empty());
}

}  // TEST_SUITE
