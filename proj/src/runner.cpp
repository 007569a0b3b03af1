#include "vortexdyn/runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/euler_sim.hpp"
#include "vortexdyn/harmonic.hpp"
#include "vortexdyn/metrics.hpp"
#include "vortexdyn/point_vortex.hpp"

namespace vdyn {

namespace {

struct PatchFarField {
    Vec2 mean;
    double max_norm{0.0};
};

PatchFarField patch_far_field(const FlowState& flow, int patch, double blob) {
    PatchFarField out;
    double mass = 0.0;
    for (const Particle& q : flow.field.particles) {
        if (q.patch != patch) continue;
        const Vec2 F = far_field_at(flow, q.pos, patch, blob);
        out.mean += F * q.weight;
        out.max_norm = std::max(out.max_norm, F.norm());
        mass += q.weight;
    }
    if (mass != 0.0) out.mean = out.mean / mass;
    return out;
}

Frame make_frame(const Scenario& sc, const Domain& domain, const FlowState& flow,
                 const PointVortexState& pv, const SeparationReport& c5,
                 const SeparationReport& c12) {
    Frame f;
    f.t = pv.t;
    f.c5 = c5;
    f.c12 = c12;
    f.hole_coeffs = flow.hole_coeffs;
    f.H = domain.hole_count() == 0 ? hamiltonian(pv, domain)
                                   : std::numeric_limits<double>::quiet_NaN();

    const auto rhs = kr_rhs(pv, domain);
    const double blob = sc.blob_delta();
    const int n = int(sc.patches.size());
    for (int i = 0; i < n; ++i) {
        FrameVortex v;
        v.Y = pv.positions[std::size_t(i)];
        v.dY = rhs[std::size_t(i)];
        v.X = center_of_vorticity(flow.field, i);
        const PatchFarField ff = patch_far_field(flow, i, blob);
        v.dX = ff.mean;
        v.maxF = ff.max_norm;
        v.W2 = w2_to_dirac(flow.field, i, v.Y);
        f.vortices.push_back(v);
    }
    f.W1 = w1_signed(particle_measure(flow.field), empirical_measure(pv.strengths, pv.positions));
    return f;
}

}  // namespace

RunRecord run_scenario(const Scenario& sc) {
    const auto wall_start = std::chrono::steady_clock::now();
    const Domain domain = sc.domain_spec.build();
    if (int(sc.circulations.size()) != domain.hole_count())
        throw config_error("run: expected " + std::to_string(domain.hole_count()) +
                           " circulation values, got " + std::to_string(sc.circulations.size()));
    if (sc.patches.empty()) throw config_error("run: scenario has no patches");

    ParticleField field = build_field(sc.patch_specs(), domain, sc.delta, sc.p);

    PointVortexState pv;
    pv.positions = sc.initial_vortex_positions();
    pv.strengths = sc.strengths();
    pv.circulations = sc.circulations;
    pv.t = 0.0;
    for (const Vec2& y : pv.positions)
        if (!domain.contains(y)) throw config_error("run: initial vortex position outside domain");

    RunRecord rec;
    rec.scenario_name = sc.name;
    rec.N = int(sc.patches.size());
    rec.M = domain.hole_count();
    rec.strengths = pv.strengths;
    for (const PatchNorms& n : field.patch_norms) {
        rec.lp_proxy.push_back(n.lp_proxy);
        rec.linf_proxy.push_back(n.linf_proxy);
    }
    rec.config_hash = sc.config_hash;

    const int steps = int(std::llround(sc.t_end / sc.dt));
    const double blob = sc.blob_delta();
    std::string reason = "t_end";

    for (int s = 0;; ++s) {
        const SeparationReport c5 = support_monitor(field, domain);
        const SeparationReport c12 = separation_monitor(pv, domain, sc.delta);
        if (!c5.ok) {
            reason = c5.min_pair < c5.threshold ? "C5-pair" : "C5-boundary";
            break;
        }
        if (!c12.ok) {
            reason = c12.min_pair < c12.threshold ? "C12-pair" : "C12-boundary";
            break;
        }

        const FlowState flow(domain, field, sc.circulations);
        if (s % sc.frames_every == 0 || s == steps)
            rec.frames.push_back(make_frame(sc, domain, flow, pv, c5, c12));
        if (s == steps) break;

        try {
            field = advect(flow, sc.dt, blob);
            pv = step(pv, domain, sc.dt, sc.delta);
            pv.t = (s + 1) * sc.dt;  // keep the clock exact against drift
        } catch (const pv_separation_stop& stop) {
            reason = "C12-" + stop.condition;
            break;
        } catch (const evaluation_error&) {
            reason = "C5-boundary";  // particle crossed into the clearance band
            break;
        }
    }

    rec.stopping_reason = reason;
    rec.stop_time = rec.frames.empty() ? 0.0 : rec.frames.back().t;
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start)
                        .count();
    return rec;
}

// ---------------------------------------------------------------------------

namespace {

SweepEntry summarize(const Scenario& sc, const RunRecord& rec) {
    SweepEntry e;
    e.eps = sc.eps;
    e.stop_time = rec.stop_time;
    e.stopping_reason = rec.stopping_reason;
    e.max_farfield.assign(std::size_t(rec.N), 0.0);
    for (const Frame& f : rec.frames) {
        double w2_sum = 0.0;
        for (int i = 0; i < rec.N; ++i) {
            const FrameVortex& v = f.vortices[std::size_t(i)];
            e.max_w2 = std::max(e.max_w2, v.W2);
            e.max_xy = std::max(e.max_xy, distance(v.X, v.Y));
            e.max_dxy = std::max(e.max_dxy, distance(v.dX, v.dY));
            e.max_farfield[std::size_t(i)] =
                std::max(e.max_farfield[std::size_t(i)], v.maxF);
            w2_sum += std::abs(rec.strengths[std::size_t(i)]) * v.W2;
        }
        e.max_w1 = std::max(e.max_w1, f.W1);
        const double margin = f.W1 - (w2_sum + 1e-9);
        if (margin > 0.0) e.jensen_ok = false;
        e.jensen_worst = std::max(e.jensen_worst, margin);
    }
    for (std::size_t i = 0; i < rec.lp_proxy.size(); ++i)
        e.lp_proxy_scaled = std::max(
            e.lp_proxy_scaled, rec.lp_proxy[i] * std::pow(sc.eps, 2.0 * (1.0 - 2.0 / sc.p)));
    return e;
}

}  // namespace

ConvergeReport converge(const Scenario& base, const std::vector<double>& eps_list,
                        const RunFunction& runner) {
    if (eps_list.size() < 3)
        throw config_error("converge: need at least 3 eps values");
    ConvergeReport report;
    report.window_lo = base.rate_window_lo;
    report.window_hi = base.rate_window_hi;
    report.t_min = base.t_min >= 0.0 ? base.t_min : base.t_end;

    for (double eps : eps_list) {
        if (eps > base.delta / 10.0)
            throw config_error("converge: eps exceeds delta/10, patches cannot stay separated");
        if (eps > base.delta / 20.0) report.relaxed_regime = true;
        Scenario sc = base;
        sc.eps = eps;
        report.entries.push_back(summarize(sc, runner(sc)));
    }

    report.t_uniform = true;
    report.jensen_ok = true;
    for (const SweepEntry& e : report.entries) {
        if (e.stop_time < report.t_min - 1e-12) report.t_uniform = false;
        if (!e.jensen_ok) report.jensen_ok = false;
    }

    if (report.t_uniform) {
        std::vector<std::pair<double, double>> w2, xy, dxy, w1;
        for (const SweepEntry& e : report.entries) {
            w2.push_back({e.eps, e.max_w2});
            xy.push_back({e.eps, e.max_xy});
            dxy.push_back({e.eps, e.max_dxy});
            w1.push_back({e.eps, e.max_w1});
        }
        report.slope_w2 = rate_fit(w2);
        report.slope_xy = rate_fit(xy);
        report.slope_dxy = rate_fit(dxy);
        report.slope_w1 = rate_fit(w1);
        report.fitted = true;
        const auto inside = [&](double s) {
            return s >= report.window_lo && s <= report.window_hi;
        };
        report.rates_ok = inside(report.slope_w2) && inside(report.slope_xy) &&
                          inside(report.slope_dxy) && inside(report.slope_w1);
    }
    return report;
}

std::string ConvergeReport::to_json() const {
    nlohmann::json j;
    j["fitted"] = fitted;
    j["t_uniform"] = t_uniform;
    j["rates_ok"] = rates_ok;
    j["jensen_ok"] = jensen_ok;
    j["relaxed_regime"] = relaxed_regime;
    j["pass"] = pass();
    j["window"] = {window_lo, window_hi};
    j["t_min"] = t_min;
    if (fitted) {
        j["slope_w2"] = slope_w2;
        j["slope_xy"] = slope_xy;
        j["slope_dxy"] = slope_dxy;
        j["slope_w1"] = slope_w1;
    }
    j["entries"] = nlohmann::json::array();
    for (const SweepEntry& e : entries) {
        nlohmann::json je;
        je["eps"] = e.eps;
        je["max_w2"] = e.max_w2;
        je["max_xy"] = e.max_xy;
        je["max_dxy"] = e.max_dxy;
        je["max_w1"] = e.max_w1;
        je["stop_time"] = e.stop_time;
        je["stopping_reason"] = e.stopping_reason;
        je["max_farfield"] = e.max_farfield;
        je["lp_proxy_scaled"] = e.lp_proxy_scaled;
        je["jensen_ok"] = e.jensen_ok;
        j["entries"].push_back(je);
    }
    return j.dump(2);
}

// ---------------------------------------------------------------------------

LeapfrogResult demo_leapfrog(const LeapfrogParams& params) {
    if (params.a1 * params.a2 <= 0.0)
        throw config_error("leapfrog: the two vortices must have like signs");

    const Domain disk = Domain::unit_disk(256);
    PointVortexState pv;
    pv.positions = {{params.r1, 0.0}, {params.r2, 0.0}};
    pv.strengths = {params.a1, params.a2};
    pv.t = 0.0;

    LeapfrogResult result;
    RunRecord& rec = result.record;
    rec.scenario_name = "leapfrog";
    rec.N = 2;
    rec.M = 0;
    rec.strengths = pv.strengths;
    rec.lp_proxy = {0.0, 0.0};
    rec.linf_proxy = {0.0, 0.0};

    const double H0 = hamiltonian(pv, disk);
    double radial_gap = pv.positions[0].norm() - pv.positions[1].norm();
    const int steps = int(std::llround(params.t_end / params.dt));
    std::string reason = "t_end";

    const auto record_frame = [&](const SeparationReport& c12) {
        Frame f;
        f.t = pv.t;
        f.c12 = c12;
        f.c5 = c12;  // no particle system in the demo
        f.H = hamiltonian(pv, disk);
        const auto rhs = kr_rhs(pv, disk);
        for (int i = 0; i < 2; ++i) {
            FrameVortex v;
            v.Y = pv.positions[std::size_t(i)];
            v.X = v.Y;
            v.dY = rhs[std::size_t(i)];
            v.dX = v.dY;
            f.vortices.push_back(v);
        }
        result.h_drift = std::max(result.h_drift, std::abs(f.H - H0) / std::abs(H0));
        rec.frames.push_back(f);
    };

    for (int s = 0;; ++s) {
        const SeparationReport c12 = separation_monitor(pv, disk, params.delta);
        if (!c12.ok) {
            reason = c12.min_pair < c12.threshold ? "C12-pair" : "C12-boundary";
            break;
        }
        if (s % params.frames_every == 0 || s == steps) record_frame(c12);
        if (s == steps) break;
        try {
            pv = step(pv, disk, params.dt, params.delta);
            pv.t = (s + 1) * params.dt;
        } catch (const pv_separation_stop& stop) {
            reason = "C12-" + stop.condition;
            break;
        }
        const double gap = pv.positions[0].norm() - pv.positions[1].norm();
        if (gap * radial_gap < 0.0) {
            ++result.exchanges;
            radial_gap = gap;
        }
    }

    rec.stopping_reason = reason;
    rec.stop_time = rec.frames.empty() ? 0.0 : rec.frames.back().t;
    return result;
}

}  // namespace vdyn
