#include <cmath>
#include <random>

#include "doctest.h"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/harmonic.hpp"
#include "vortexdyn/kernels.hpp"

using namespace vdyn;

namespace {

std::vector<Vec2> interior_points(int count, double max_radius, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> radial(0.05, max_radius);
    std::uniform_real_distribution<double> angular(0.0, kTwoPi);
    std::vector<Vec2> pts;
    for (int i = 0; i < count; ++i) {
        const double r = radial(rng), t = angular(rng);
        pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    return pts;
}

// Images-based closed form for the harmonic extension of the boundary trace
// of sum_j w_j G(x - y_j) on the unit disk (independent oracle).
double disk_images_value(const std::vector<double>& w, const std::vector<Vec2>& y,
                         const Vec2& x) {
    double v = 0.0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        const double r = y[j].norm();
        if (r == 0.0) continue;
        const Vec2 image = y[j] / (r * r);
        v -= w[j] * kInvTwoPi * std::log(r * distance(x, image));
    }
    return v;
}

Vec2 fd_gradient(const HarmonicEvaluator& ev, const Vec2& x, double h) {
    return {(ev.value({x.x + h, x.y}) - ev.value({x.x - h, x.y})) / (2.0 * h),
            (ev.value({x.x, x.y + h}) - ev.value({x.x, x.y - h})) / (2.0 * h)};
}

}  // namespace

TEST_SUITE("harmonic") {

TEST_CASE("disk solve: constants, linear data, cos 2 theta") {
    for (const Domain& disk :
         {Domain::unit_disk(128),
          Domain::boundary_integral(BoundaryCurve::circle({0.0, 0.0}, 1.0, 128), {})}) {
        const HarmonicEvaluator constant = solve_dirichlet(disk, [](const Vec2&) { return 2.5; });
        const HarmonicEvaluator linear = solve_dirichlet(disk, [](const Vec2& x) { return x.x; });
        const HarmonicEvaluator quad = solve_dirichlet(disk, [](const Vec2& x) {
            const double t = std::atan2(x.y, x.x);
            return std::cos(2.0 * t);
        });
        for (const Vec2& x : interior_points(30, 0.7, 17)) {
            CHECK(constant.value(x) == doctest::Approx(2.5).epsilon(1e-10));
            CHECK(linear.value(x) == doctest::Approx(x.x).epsilon(1e-10));
            // Poisson-series oracle: r^2 cos(2 theta).
            const double r = x.norm(), t = std::atan2(x.y, x.x);
            CHECK(quad.value(x) == doctest::Approx(r * r * std::cos(2.0 * t)).epsilon(1e-9));
            const Vec2 dc = constant.gradient(x);
            CHECK(dc.norm() <= 1e-10);
            const Vec2 dl = linear.gradient(x);
            CHECK(dl.x == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(std::abs(dl.y) <= 1e-9);
        }
    }
}

TEST_CASE("gradient matches finite differences of the evaluator") {
    const Domain disk = Domain::unit_disk(128);
    const HarmonicEvaluator ev = solve_dirichlet(disk, [](const Vec2& x) {
        return std::exp(x.x) * std::cos(x.y);  // harmonic, so the extension is itself
    });
    for (const Vec2& x : interior_points(20, 0.6, 29)) {
        const Vec2 g = ev.gradient(x);
        const Vec2 fd = fd_gradient(ev, x, 1e-5);
        CHECK((g - fd).norm() <= 1e-6 * std::max(1.0, g.norm()));
    }
}

TEST_CASE("maximum principle on solved problems") {
    const Domain disk = Domain::unit_disk(256);
    const auto g = [](const Vec2& x) { return std::sin(3.0 * std::atan2(x.y, x.x)) + 0.2 * x.x; };
    double gmin = 1e300, gmax = -1e300;
    for (const auto& node : disk.component_nodes(0)) {
        gmin = std::min(gmin, g(node.point));
        gmax = std::max(gmax, g(node.point));
    }
    const HarmonicEvaluator ev = solve_dirichlet(disk, g);
    for (const Vec2& x : interior_points(200, 0.8, 31)) {
        const double v = ev.value(x);
        CHECK(v >= gmin - 1e-8);
        CHECK(v <= gmax + 1e-8);
    }
}

TEST_CASE("annulus harmonic measure radial oracle") {
    const Domain ring = Domain::annulus(0.5, 1.0, 128);
    const HarmonicEvaluator w1 = harmonic_measure(ring, 1);
    CHECK(w1.value({0.7, 0.0}) ==
          doctest::Approx(std::log(0.7) / std::log(0.5)).epsilon(1e-12));
    for (const Vec2& x : interior_points(50, 0.95, 37)) {
        if (x.norm() < 0.55) continue;
        const double expected = std::log(x.norm() / 1.0) / std::log(0.5);
        CHECK(w1.value(x) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(w1.value(x) >= 0.0);
        CHECK(w1.value(x) <= 1.0);
    }
    CHECK_THROWS_AS(harmonic_measure(Domain::unit_disk(64), 1), std::out_of_range);
}

TEST_CASE("boundary-integral harmonic measure matches the radial formula") {
    const Domain ring = Domain::boundary_integral(
        BoundaryCurve::circle({0.0, 0.0}, 1.0, 256),
        {BoundaryCurve::circle({0.0, 0.0}, 0.5, 256)});
    const HarmonicEvaluator w1 = harmonic_measure(ring, 1);
    double max_err = 0.0;
    for (const Vec2& x : interior_points(50, 0.86, 41)) {
        if (x.norm() < 0.64) continue;
        const double expected = std::log(x.norm()) / std::log(0.5);
        max_err = std::max(max_err, std::abs(w1.value(x) - expected));
        CHECK(w1.value(x) >= -1e-8);
        CHECK(w1.value(x) <= 1.0 + 1e-8);
    }
    CHECK(max_err < 1e-6);
    // Boundary condition at the hole nodes is reproduced at nearby interior
    // probes: w1 -> 1 towards Gamma_1.
    CHECK(w1.value({0.64, 0.0}) == doctest::Approx(std::log(0.64) / std::log(0.5)).epsilon(1e-6));
}

TEST_CASE("annulus hole field satisfies all defining conditions") {
    const Domain ring = Domain::annulus(0.5, 1.0, 128);
    const HoleField xi = hole_field(ring, 1);

    // Analytic candidate: xi_1 = x^perp / (2 pi |x|^2).
    for (const Vec2& x : interior_points(40, 0.95, 43)) {
        if (x.norm() < 0.55) continue;
        const Vec2 expected = x.perp() * (kInvTwoPi / x.norm_sq());
        CHECK((xi.at(x) - expected).norm() <= 1e-12);
    }

    // Circulation around Gamma_1 by direct quadrature of xi . tau.
    double circ = 0.0;
    for (const auto& node : ring.component_nodes(1))
        circ += xi.at(node.point).dot(node.tangent) * node.weight;
    CHECK(circ == doctest::Approx(1.0).epsilon(1e-8));

    // Tangency at all boundary nodes.
    double max_normal = 0.0;
    for (int comp = 0; comp <= 1; ++comp)
        for (const auto& node : ring.component_nodes(comp))
            max_normal = std::max(max_normal, std::abs(xi.at(node.point).dot(node.normal)));
    CHECK(max_normal < 1e-8);

    // Divergence- and curl-free by central differences at interior samples.
    const double h = 1e-5;
    for (const Vec2& x : interior_points(20, 0.9, 47)) {
        if (x.norm() < 0.6) continue;
        const Vec2 xp = xi.at({x.x + h, x.y}), xm = xi.at({x.x - h, x.y});
        const Vec2 yp = xi.at({x.x, x.y + h}), ym = xi.at({x.x, x.y - h});
        const double div = (xp.x - xm.x + yp.y - ym.y) / (2.0 * h);
        const double curl = (yp.x - ym.x) / (2.0 * h) - (xp.y - xm.y) / (2.0 * h);
        CHECK(std::abs(div) <= 1e-6);
        CHECK(std::abs(curl) <= 1e-6);
    }
}

TEST_CASE("boundary-integral hole field matches the annulus candidate") {
    const Domain ring = Domain::boundary_integral(
        BoundaryCurve::circle({0.0, 0.0}, 1.0, 256),
        {BoundaryCurve::circle({0.0, 0.0}, 0.5, 256)});
    const HoleField xi = hole_field(ring, 1);
    for (const Vec2& x : interior_points(30, 0.86, 53)) {
        if (x.norm() < 0.64) continue;
        const Vec2 expected = x.perp() * (kInvTwoPi / x.norm_sq());
        CHECK((xi.at(x) - expected).norm() <= 1e-6);
    }
    // Independent circulation check on an offset contour inside the fluid.
    double circ = 0.0;
    const int nq = 512;
    for (int k = 0; k < nq; ++k) {
        const double t = kTwoPi * k / nq;
        const Vec2 p{0.75 * std::cos(t), 0.75 * std::sin(t)};
        const Vec2 tau{-std::sin(t), std::cos(t)};
        circ += xi.at(p).dot(tau) * 0.75 * kTwoPi / nq;
    }
    CHECK(circ == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("eta on the disk: centered particle and images oracle") {
    const Domain disk = Domain::unit_disk(128);
    ParticleField field;
    field.patch_count = 1;
    field.delta = 0.5;
    field.particles.push_back({{0.0, 0.0}, 1.7, 0, PartTag::InfPart});
    const HarmonicEvaluator eta = eta_evaluator(disk, field);
    for (const Vec2& x : interior_points(20, 0.8, 59)) CHECK(std::abs(eta.value(x)) <= 1e-13);

    ParticleField empty;
    empty.patch_count = 0;
    const HarmonicEvaluator eta0 = eta_evaluator(disk, empty);
    CHECK(eta0.value({0.3, 0.2}) == 0.0);

    // Two symmetric particles, boundary-integral backend vs images oracle.
    const Domain bi = Domain::boundary_integral(BoundaryCurve::circle({0.0, 0.0}, 1.0, 256), {});
    ParticleField sym;
    sym.patch_count = 1;
    sym.particles.push_back({{0.3, 0.0}, 0.5, 0, PartTag::InfPart});
    sym.particles.push_back({{-0.3, 0.0}, 0.5, 0, PartTag::InfPart});
    const HarmonicEvaluator eta_bi = eta_evaluator(bi, sym);
    for (const Vec2& x : interior_points(25, 0.8, 61)) {
        const double oracle = disk_images_value({0.5, 0.5}, {{0.3, 0.0}, {-0.3, 0.0}}, x);
        CHECK(eta_bi.value(x) == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("theta on the disk: images formula and cross-backend agreement") {
    const Domain disk = Domain::unit_disk(128);

    // Single vortex at the center: boundary data vanishes.
    const HarmonicEvaluator theta0 = theta_evaluator(disk, {2.0}, {{0.0, 0.0}});
    CHECK(std::abs(theta0.value({0.4, 0.1})) <= 1e-13);

    // grad^perp theta at the vortex: (0, a r / (2 pi (1 - r^2))).
    const double a = 1.3, r = 0.45;
    const HarmonicEvaluator theta = theta_evaluator(disk, {a}, {{r, 0.0}});
    const Vec2 v = theta.perp_gradient({r, 0.0});
    CHECK(std::abs(v.x) <= 1e-12);
    CHECK(v.y == doctest::Approx(a * r / (kTwoPi * (1.0 - r * r))).epsilon(1e-12));

    // Cross-backend: Nystrom vs images at 50 interior points.
    const Domain bi = Domain::boundary_integral(BoundaryCurve::circle({0.0, 0.0}, 1.0, 256), {});
    const std::vector<double> strengths{1.0, -0.7};
    const std::vector<Vec2> positions{{0.4, 0.1}, {-0.2, -0.5}};
    const HarmonicEvaluator theta_bi = theta_evaluator(bi, strengths, positions);
    double max_diff = 0.0;
    for (const Vec2& x : interior_points(50, 0.85, 67)) {
        const double oracle = disk_images_value(strengths, positions, x);
        max_diff = std::max(max_diff, std::abs(theta_bi.value(x) - oracle));
    }
    CHECK(max_diff < 1e-6);

    CHECK_THROWS_AS(theta_evaluator(disk, {1.0}, {{1.5, 0.0}}), std::domain_error);
}

TEST_CASE("spectral convergence of the disk cross-backend error") {
    const std::vector<double> strengths{1.0};
    const std::vector<Vec2> positions{{0.75, 0.05}};
    const auto probes = interior_points(20, 0.45, 71);
    double prev_err = -1.0;
    for (int n : {64, 128, 256}) {
        const Domain bi =
            Domain::boundary_integral(BoundaryCurve::circle({0.0, 0.0}, 1.0, n), {});
        const HarmonicEvaluator theta_bi = theta_evaluator(bi, strengths, positions);
        double err = 0.0;
        for (const Vec2& x : probes)
            err = std::max(err, std::abs(theta_bi.value(x) -
                                         disk_images_value(strengths, positions, x)));
        if (prev_err > 0.0 && prev_err > 1e-10) CHECK(err <= prev_err / 10.0);
        prev_err = err;
    }
    CHECK(prev_err < 1e-10);
}

TEST_CASE("clearance guards near-boundary evaluation") {
    const Domain bi = Domain::boundary_integral(BoundaryCurve::circle({0.0, 0.0}, 1.0, 64), {});
    const HarmonicEvaluator ev = solve_dirichlet(bi, [](const Vec2& x) { return x.x; });
    CHECK(ev.clearance() == doctest::Approx(5.0 * kTwoPi / 64.0).epsilon(1e-3));
    CHECK_THROWS_AS(ev.value({0.9, 0.0}), evaluation_error);
    CHECK_NOTHROW(ev.value({0.2, 0.0}));
}

TEST_CASE("two-hole domain: measures bounded and partition bound") {
    const Domain dom = Domain::boundary_integral(
        BoundaryCurve::circle({0.0, 0.0}, 1.0, 128),
        {BoundaryCurve::circle({-0.4, 0.0}, 0.15, 128),
         BoundaryCurve::circle({0.45, 0.1}, 0.2, 128)});
    const HarmonicEvaluator w1 = harmonic_measure(dom, 1);
    const HarmonicEvaluator w2 = harmonic_measure(dom, 2);
    for (const Vec2& x : {Vec2{0.0, 0.4}, Vec2{0.0, -0.5}, Vec2{-0.05, 0.05}}) {
        const double v1 = w1.value(x), v2 = w2.value(x);
        CHECK(v1 >= -1e-8);
        CHECK(v2 >= -1e-8);
        CHECK(v1 + v2 <= 1.0 + 1e-8);
    }
    // Hole-field circulations: delta_lm via offset contours around each hole.
    for (int m = 1; m <= 2; ++m) {
        const HoleField xi = hole_field(dom, m);
        for (int l = 1; l <= 2; ++l) {
            const Vec2 center = l == 1 ? Vec2{-0.4, 0.0} : Vec2{0.45, 0.1};
            const double radius = l == 1 ? 0.27 : 0.28;
            double circ = 0.0;
            const int nq = 1024;
            for (int k = 0; k < nq; ++k) {
                const double t = kTwoPi * k / nq;
                const Vec2 p = center + Vec2{radius * std::cos(t), radius * std::sin(t)};
                const Vec2 tau{-std::sin(t), std::cos(t)};
                circ += xi.at(p).dot(tau) * radius * kTwoPi / nq;
            }
            CHECK(std::abs(circ - (l == m ? 1.0 : 0.0)) <= 1e-6);
        }
    }
}

}  // TEST_SUITE
