#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vortexdyn/config.hpp"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/run_record.hpp"
#include "vortexdyn/runner.hpp"
#include "vortexdyn/validate.hpp"

using namespace vdyn;

namespace {

const char* kSmallScenario = R"(
schema = 1
name = small-two-patch

[domain]
backend = analytic-disk
n_quad = 128

[params]
eps = 0.05
delta = 0.5
p = 3.0
h_over_eps = 0.125
blob_over_h = 2.0
dt = 0.01
t_end = 0.05
frames_every = 2

[patch]
center = 0.31, 0.0
strength = 1.0
y_offset = 0.30, -0.20

[patch]
center = -0.31, 0.0
strength = 1.0
y_offset = -0.25, 0.15
)";

std::string temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("vdyn-" + tag);
    std::filesystem::remove_all(dir);
    return dir.string();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config parses sections, arrays and defaults") {
    const Scenario sc = parse_scenario(kSmallScenario);
    CHECK(sc.name == "small-two-patch");
    CHECK(sc.patches.size() == 2);
    CHECK(sc.patches[0].center.x == doctest::Approx(0.31));
    CHECK(sc.patches[1].y_offset.y == doctest::Approx(0.15));
    CHECK(sc.eps == doctest::Approx(0.05));
    CHECK(sc.circulations.empty());
    CHECK(sc.grid_h() == doctest::Approx(0.01));
    CHECK(sc.blob_delta() == doctest::Approx(0.02));
    CHECK(sc.config_hash != 0);

    CHECK_THROWS_AS(parse_scenario("schema = 2\n"), config_error);
    CHECK_THROWS_AS(parse_scenario("schema = 1\n[params]\ndt = -1\n"), config_error);
    CHECK_THROWS_AS(parse_scenario("schema = 1\nbroken line\n"), config_error);
}

TEST_CASE("zero-strength patches are rejected as config errors") {
    Scenario sc = parse_scenario(kSmallScenario);
    sc.patches[0].strength = 0.0;
    CHECK_THROWS_AS(run_scenario(sc), config_error);
}

TEST_CASE("run produces monotone frames and t_end stop") {
    const Scenario sc = parse_scenario(kSmallScenario);
    const RunRecord rec = run_scenario(sc);
    CHECK(rec.stopping_reason == "t_end");
    CHECK(rec.N == 2);
    CHECK(rec.frames.size() >= 3);
    for (std::size_t k = 1; k < rec.frames.size(); ++k)
        CHECK(rec.frames[k].t > rec.frames[k - 1].t);
    CHECK(rec.stop_time == doctest::Approx(sc.t_end));
    // Last frame still satisfies both monitors (no frame after a violation).
    const Frame& last = rec.frames.back();
    CHECK(last.c5.min_pair >= 0.25);
    CHECK(last.c12.min_pair >= 0.25);
    // The Jensen chain holds on every recorded frame.
    for (const Frame& f : rec.frames) {
        double bound = 1e-9;
        for (int i = 0; i < rec.N; ++i)
            bound += std::abs(rec.strengths[std::size_t(i)]) * f.vortices[std::size_t(i)].W2;
        CHECK(f.W1 <= bound);
    }
}

TEST_CASE("reruns are bit-identical") {
    const Scenario sc = parse_scenario(kSmallScenario);
    const RunRecord a = run_scenario(sc);
    const RunRecord b = run_scenario(sc);
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("run record round trip is lossless") {
    const Scenario sc = parse_scenario(kSmallScenario);
    const RunRecord rec = run_scenario(sc);
    const std::string dir = temp_dir("roundtrip");
    save_run(rec, dir);
    const RunRecord loaded = load_run(dir);
    CHECK(loaded.to_csv() == rec.to_csv());
    CHECK(loaded.scenario_name == rec.scenario_name);
    CHECK(loaded.stopping_reason == rec.stopping_reason);
    CHECK(loaded.config_hash == rec.config_hash);
    std::filesystem::remove_all(dir);
}

TEST_CASE("early stop reports the violated condition and keeps clean frames") {
    Scenario sc = parse_scenario(kSmallScenario);
    // Opposite-signed pair propels itself towards the boundary; a large
    // delta makes the C12 monitor fire quickly.
    sc.patches[0].center = {0.2, 0.0};
    sc.patches[1].center = {-0.2, 0.0};
    sc.patches[1].strength = -1.0;
    sc.delta = 0.38;
    sc.eps = 0.01;
    sc.t_end = 5.0;
    sc.dt = 0.01;
    const RunRecord rec = run_scenario(sc);
    CHECK(rec.stopping_reason != "t_end");
    CHECK(rec.stop_time < 5.0);
    for (const Frame& f : rec.frames) {
        CHECK(f.c5.ok);
        CHECK(f.c12.ok);
    }
}

TEST_CASE("converge with a stub runner fits exact slopes") {
    Scenario base = parse_scenario(kSmallScenario);
    base.t_min = base.t_end;
    const std::vector<double> eps{0.04, 0.02, 0.01};
    const RunFunction stub = [&](const Scenario& sc) {
        RunRecord rec;
        rec.scenario_name = sc.name;
        rec.N = 2;
        rec.M = 0;
        rec.strengths = {1.0, 1.0};
        rec.lp_proxy = {0.0, 0.0};
        rec.linf_proxy = {0.0, 0.0};
        Frame f;
        f.t = sc.t_end;
        for (int i = 0; i < 2; ++i) {
            FrameVortex v;
            v.W2 = 3.0 * sc.eps;            // exact slope 1
            v.X = {2.0 * sc.eps, 0.0};      // |X - Y| = 2 eps
            v.Y = {0.0, 0.0};
            v.dX = {0.0, 1.5 * sc.eps};     // |dX - dY| = 1.5 eps
            v.dY = {0.0, 0.0};
            f.vortices.push_back(v);
        }
        f.W1 = 5.0 * sc.eps;
        rec.frames.push_back(f);
        rec.stopping_reason = "t_end";
        rec.stop_time = sc.t_end;
        return rec;
    };
    const ConvergeReport report = converge(base, eps, stub);
    CHECK(report.fitted);
    CHECK(report.t_uniform);
    CHECK(report.slope_w2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.slope_xy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.slope_dxy == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.slope_w1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(report.rates_ok);
    CHECK(report.pass());

    // A run stopping before t_min flags non-uniform T instead of fitting.
    const RunFunction early_stub = [&](const Scenario& sc) {
        RunRecord rec = stub(sc);
        if (sc.eps < 0.02) {
            rec.stopping_reason = "C5-pair";
            rec.stop_time = 0.5 * sc.t_end;
        }
        return rec;
    };
    const ConvergeReport early = converge(base, eps, early_stub);
    CHECK_FALSE(early.t_uniform);
    CHECK_FALSE(early.fitted);
    CHECK_FALSE(early.pass());

    CHECK_THROWS_AS(converge(base, {0.04, 0.02}, stub), config_error);
    CHECK_THROWS_AS(converge(base, {0.2, 0.1, 0.05}, stub), config_error);
}

TEST_CASE("validation suite passes at production resolution") {
    DomainSpec spec;
    spec.backend = "analytic-disk";
    spec.n_quad = 256;
    const ValidationReport report = validate_domain(spec);
    for (const ValidationCheck& c : report.checks) {
        INFO(c.name, " value=", c.value, " threshold=", c.threshold);
        CHECK(c.pass);
    }
    CHECK(report.all_pass());
    CHECK(report.to_json().find("\"pass\"") != std::string::npos);
}

TEST_CASE("under-resolved quadrature is flagged by validation") {
    DomainSpec spec;
    spec.backend = "analytic-disk";
    spec.n_quad = 16;
    const ValidationReport report = validate_domain(spec);
    bool some_quadrature_failure = false;
    for (const ValidationCheck& c : report.checks)
        if (!c.pass && c.name.find("cross-check") != std::string::npos)
            some_quadrature_failure = true;
    CHECK(some_quadrature_failure);
    CHECK_FALSE(report.all_pass());
}

TEST_CASE("leapfrog demo: symmetry, conservation, exchanges") {
    // Symmetric placement across a diameter: trajectories congruent under
    // rotation by pi.
    LeapfrogParams sym;
    sym.r1 = 0.6;
    sym.r2 = -0.6;  // diametrically opposite
    sym.dt = 1e-3;
    sym.t_end = 0.2;
    sym.delta = 0.2;
    const LeapfrogResult s = demo_leapfrog(sym);
    for (const Frame& f : s.record.frames) {
        CHECK((f.vortices[0].Y + f.vortices[1].Y).norm() <= 1e-10);
    }

    // Documented parameter set: at least one radial-order exchange with tiny
    // energy drift.
    const LeapfrogResult lf = demo_leapfrog(LeapfrogParams{});
    CHECK(lf.exchanges >= 1);
    CHECK(lf.h_drift < 1e-6);
    CHECK(lf.record.stopping_reason == "t_end");
}

}  // TEST_SUITE
