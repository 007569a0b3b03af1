#include <cmath>
#include <random>

#include "doctest.h"
#include "vortexdyn/euler_sim.hpp"
#include "vortexdyn/kernels.hpp"
#include "vortexdyn/metrics.hpp"

using namespace vdyn;

namespace {

ParticleField two_particle_patch() {
    ParticleField f;
    f.patch_count = 1;
    f.delta = 0.5;
    f.particles.push_back({{1.0, 0.0}, 0.3, 0, PartTag::InfPart});
    f.particles.push_back({{-1.0, 0.0}, 0.7, 0, PartTag::InfPart});
    return f;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("intensity") {
    const ParticleField f = two_particle_patch();
    CHECK(intensity(f, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(intensity(f, 3), std::out_of_range);
}

TEST_CASE("center of vorticity") {
    ParticleField f;
    f.patch_count = 2;
    f.particles.push_back({{1.0, 0.0}, 0.5, 0, PartTag::InfPart});
    f.particles.push_back({{-1.0, 0.0}, 0.5, 0, PartTag::InfPart});
    f.particles.push_back({{0.3, -0.4}, 2.0, 1, PartTag::InfPart});
    const Vec2 c0 = center_of_vorticity(f, 0);
    CHECK(std::abs(c0.x) <= 1e-15);
    CHECK(std::abs(c0.y) <= 1e-15);
    const Vec2 c1 = center_of_vorticity(f, 1);
    CHECK(c1.x == doctest::Approx(0.3));
    CHECK(c1.y == doctest::Approx(-0.4));
}

TEST_CASE("w2 to dirac basics and minimization at the center") {
    ParticleField f;
    f.patch_count = 1;
    f.particles.push_back({{0.2, 0.1}, 1.5, 0, PartTag::InfPart});
    CHECK(w2_to_dirac(f, 0, {0.2, 0.1}) == doctest::Approx(0.0));

    const Domain disk = Domain::unit_disk(64);
    PatchSpec spec;
    spec.center = {0.1, -0.05};
    spec.strength = 1.0;
    spec.eps = 0.1;
    spec.h = spec.eps / 10.0;
    const ParticleField patch = build_field({spec}, disk, 0.3, 3.0);

    // Uniform disc second moment: W2 to the center -> eps / sqrt(2).
    CHECK(w2_to_dirac(patch, 0, spec.center) ==
          doctest::Approx(spec.eps / std::numbers::sqrt2).epsilon(0.02));

    // The center of vorticity minimizes over the point argument.
    const Vec2 xc = center_of_vorticity(patch, 0);
    const double at_center = w2_to_dirac(patch, 0, xc);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> off(-0.2, 0.2);
    for (int k = 0; k < 50; ++k) {
        const Vec2 competitor{xc.x + off(rng), xc.y + off(rng)};
        CHECK(at_center <= w2_to_dirac(patch, 0, competitor) + 1e-15);
    }
}

TEST_CASE("signed W1") {
    const SignedMeasure a{{{0.0, 0.0}, 1.0}, {{2.0, 0.0}, 1.0}};
    const SignedMeasure b{{{1.0, 0.0}, 2.0}};
    CHECK(w1_signed(a, b) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w1_signed(a, a) == doctest::Approx(0.0));

    const SignedMeasure d0{{{0.0, 0.0}, 1.0}};
    const SignedMeasure d1{{{1.0, 0.0}, 1.0}};
    CHECK(w1_signed(d0, d1) == doctest::Approx(1.0).epsilon(1e-12));

    // Mixed signs: f - g splits across both input measures.
    const SignedMeasure f{{{0.0, 0.0}, 1.0}, {{1.0, 0.0}, -0.5}};
    const SignedMeasure g{{{0.0, 1.0}, 0.5}};
    CHECK_NOTHROW(w1_signed(f, g));

    CHECK_THROWS_AS(w1_signed(d0, b), std::invalid_argument);
}

TEST_CASE("rate fit") {
    std::vector<std::pair<double, double>> linear, quadratic, flat;
    for (double eps : {0.1, 0.05, 0.025, 0.0125}) {
        linear.push_back({eps, 3.0 * eps});
        quadratic.push_back({eps, eps * eps});
        flat.push_back({eps, 0.7});
    }
    CHECK(rate_fit(linear) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rate_fit(quadratic) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rate_fit(flat) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(rate_fit({{0.1, 1.0}, {0.05, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(rate_fit({{0.1, -1.0}, {0.05, 1.0}, {0.025, 1.0}}), std::invalid_argument);
}

TEST_CASE("center velocity identities") {
    const Domain disk = Domain::unit_disk(128);

    // Centered radially symmetric patch: far field averages to ~0.
    PatchSpec centered;
    centered.center = {0.0, 0.0};
    centered.strength = 1.0;
    centered.eps = 0.2;
    centered.h = centered.eps / 10.0;
    const ParticleField field = build_field({centered}, disk, 0.5, 3.0);
    const FlowState state(disk, field, {});
    const Vec2 v = center_velocity(state, 0, 2.0 * centered.h);
    CHECK(v.norm() <= 1e-6);

    // Identity: (1/a) sum w_p u(x_p) equals the far-field average because the
    // antisymmetric self blob sum cancels.
    PatchSpec offset;
    offset.center = {0.25, 0.1};
    offset.strength = 0.8;
    offset.eps = 0.15;
    offset.h = offset.eps / 8.0;
    const ParticleField field2 = build_field({offset}, disk, 0.4, 3.0);
    const FlowState state2(disk, field2, {});
    const double blob = 2.0 * offset.h;
    Vec2 via_full{0.0, 0.0};
    for (const Particle& q : field2.particles)
        if (q.patch == 0) via_full += velocity_at(state2, q.pos, blob) * q.weight;
    via_full = via_full / intensity(field2, 0);
    const Vec2 via_far = center_velocity(state2, 0, blob);
    CHECK((via_full - via_far).norm() <= 1e-10);
}

}  // TEST_SUITE
