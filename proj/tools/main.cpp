#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vortexdyn/config.hpp"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/kernels.hpp"
#include "vortexdyn/parallel.hpp"
#include "vortexdyn/run_record.hpp"
#include "vortexdyn/runner.hpp"
#include "vortexdyn/svg_plot.hpp"
#include "vortexdyn/validate.hpp"

namespace {

using namespace vdyn;

const std::vector<std::string> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                           "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string default_out_dir(const std::string& name) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", std::localtime(&tt));
    return "runs/" + name + "-" + stamp;
}

void plot_trajectories(const RunRecord& rec, const Scenario* scenario,
                       const std::string& path) {
    std::vector<PlotSeries> series;
    const double r_outer = scenario && scenario->domain_spec.backend == "analytic-annulus"
                               ? scenario->domain_spec.r1
                               : 1.0;
    PlotSeries boundary;
    boundary.color = "#999999";
    for (int k = 0; k <= 256; ++k) {
        const double t = kTwoPi * k / 256;
        boundary.points.push_back({r_outer * std::cos(t), r_outer * std::sin(t)});
    }
    series.push_back(boundary);
    if (scenario && scenario->domain_spec.backend == "analytic-annulus") {
        PlotSeries hole;
        hole.color = "#999999";
        for (int k = 0; k <= 256; ++k) {
            const double t = kTwoPi * k / 256;
            hole.points.push_back(
                {scenario->domain_spec.r0 * std::cos(t), scenario->domain_spec.r0 * std::sin(t)});
        }
        series.push_back(hole);
    }
    for (int i = 0; i < rec.N; ++i) {
        PlotSeries y_track, x_track;
        y_track.label = "Y" + std::to_string(i + 1);
        y_track.color = kPalette[std::size_t(i) % kPalette.size()];
        x_track.label = "X" + std::to_string(i + 1);
        x_track.color = kPalette[std::size_t(i + 4) % kPalette.size()];
        for (const Frame& f : rec.frames) {
            y_track.points.push_back(f.vortices[std::size_t(i)].Y);
            x_track.points.push_back(f.vortices[std::size_t(i)].X);
        }
        series.push_back(y_track);
        if (rec.scenario_name != "leapfrog") series.push_back(x_track);
    }
    PlotOptions opt;
    opt.title = rec.scenario_name + " trajectories";
    opt.x_label = "x1";
    opt.y_label = "x2";
    opt.equal_aspect = true;
    write_svg_plot(path, series, opt);
}

void plot_w2(const RunRecord& rec, const std::string& path) {
    std::vector<PlotSeries> series;
    for (int i = 0; i < rec.N; ++i) {
        PlotSeries s;
        s.label = "W2 patch " + std::to_string(i + 1);
        s.color = kPalette[std::size_t(i) % kPalette.size()];
        for (const Frame& f : rec.frames)
            s.points.push_back({f.t, f.vortices[std::size_t(i)].W2});
        series.push_back(s);
    }
    PlotSeries w1;
    w1.label = "W1 total";
    w1.color = "#333333";
    for (const Frame& f : rec.frames) w1.points.push_back({f.t, f.W1});
    series.push_back(w1);
    PlotOptions opt;
    opt.title = rec.scenario_name + " concentration metrics";
    opt.x_label = "t";
    opt.y_label = "distance";
    write_svg_plot(path, series, opt);
}

void plot_rates(const ConvergeReport& report, const std::string& path) {
    const auto series_of = [&](const std::string& label, const std::string& color,
                               double SweepEntry::*member) {
        PlotSeries s;
        s.label = label;
        s.color = color;
        s.markers = true;
        for (const SweepEntry& e : report.entries) s.points.push_back({e.eps, e.*member});
        return s;
    };
    const std::vector<PlotSeries> series = {
        series_of("max W2", kPalette[0], &SweepEntry::max_w2),
        series_of("max |X-Y|", kPalette[1], &SweepEntry::max_xy),
        series_of("max |dX-dY|", kPalette[2], &SweepEntry::max_dxy),
        series_of("max W1", kPalette[3], &SweepEntry::max_w1),
    };
    PlotOptions opt;
    opt.title = "concentration errors vs eps";
    opt.x_label = "eps";
    opt.y_label = "max over time";
    opt.log_x = true;
    opt.log_y = true;
    write_svg_plot(path, series, opt);
}

int cmd_run(const std::string& config_path, std::string out_dir, int frames_every) {
    Scenario sc = load_scenario(config_path);
    if (frames_every > 0) sc.frames_every = frames_every;
    if (out_dir.empty()) out_dir = default_out_dir(sc.name);

    const RunRecord rec = run_scenario(sc);
    save_run(rec, out_dir);
    plot_trajectories(rec, &sc, out_dir + "/trajectories.svg");
    plot_w2(rec, out_dir + "/metrics.svg");
    std::printf("run '%s': %zu frames, stop at t=%.6g (%s), wall %.2fs\n", sc.name.c_str(),
                rec.frames.size(), rec.stop_time, rec.stopping_reason.c_str(), rec.wall_time);
    std::printf("outputs in %s\n", out_dir.c_str());
    return rec.stopping_reason == "t_end" ? 0 : 2;
}

int cmd_converge(const std::string& config_path, const std::vector<double>& eps_list,
                 std::string out_dir) {
    const Scenario base = load_scenario(config_path);
    if (out_dir.empty()) out_dir = default_out_dir(base.name + "-converge");
    std::filesystem::create_directories(out_dir);

    const ConvergeReport report = converge(base, eps_list, [&](const Scenario& sc) {
        const RunRecord rec = run_scenario(sc);
        std::ostringstream sub;
        sub << out_dir << "/eps-" << sc.eps;
        save_run(rec, sub.str());
        return rec;
    });

    std::ofstream(out_dir + "/rates.json") << report.to_json() << "\n";
    plot_rates(report, out_dir + "/rates.svg");

    for (const SweepEntry& e : report.entries)
        std::printf("eps=%-8g maxW2=%.4e maxXY=%.4e maxdXY=%.4e maxW1=%.4e T=%g (%s)\n", e.eps,
                    e.max_w2, e.max_xy, e.max_dxy, e.max_w1, e.stop_time,
                    e.stopping_reason.c_str());
    if (report.fitted)
        std::printf("slopes: W2 %.3f | X-Y %.3f | dX-dY %.3f | W1 %.3f  (window [%.2f, %.2f])\n",
                    report.slope_w2, report.slope_xy, report.slope_dxy, report.slope_w1,
                    report.window_lo, report.window_hi);
    else
        std::printf("stopping times not uniform (t_min %.4g); no fit\n", report.t_min);
    std::printf("T uniform: %s | rates ok: %s | jensen ok: %s -> %s\n",
                report.t_uniform ? "yes" : "no", report.rates_ok ? "yes" : "no",
                report.jensen_ok ? "yes" : "no", report.pass() ? "PASS" : "FAIL");
    std::printf("outputs in %s\n", out_dir.c_str());
    return report.pass() ? 0 : 2;
}

int cmd_validate(const std::string& config_path, std::string out_dir) {
    const Scenario sc = load_scenario(config_path);
    const ValidationReport report = validate_domain(sc.domain_spec);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream(out_dir + "/validation.json") << report.to_json() << "\n";
    }
    for (const ValidationCheck& c : report.checks)
        std::printf("%-38s %s  (value %.3e, threshold %.3e)\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.value, c.threshold);
    std::printf("validation: %s\n", report.all_pass() ? "PASS" : "FAIL");
    return report.all_pass() ? 0 : 2;
}

int cmd_leapfrog(const LeapfrogParams& params, std::string out_dir) {
    if (out_dir.empty()) out_dir = default_out_dir("leapfrog");
    const LeapfrogResult result = demo_leapfrog(params);
    save_run(result.record, out_dir);
    plot_trajectories(result.record, nullptr, out_dir + "/trajectories.svg");
    std::printf("leapfrog: %d radial-order exchange(s), H drift %.3e, stop %s at t=%.4g\n",
                result.exchanges, result.h_drift, result.record.stopping_reason.c_str(),
                result.record.stop_time);
    std::printf("outputs in %s\n", out_dir.c_str());
    return result.exchanges >= 1 && result.h_drift < 1e-6 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortex dynamics toolkit: point vortices and particle Euler runs in bounded "
                 "domains with Wasserstein concentration metrics"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int frames_every = 0;
    int threads = 1;
    std::vector<double> eps_list;
    app.add_option("--threads", threads, "worker threads for velocity evaluation");

    CLI::App* run = app.add_subcommand("run", "advance a scenario and record frames");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--frames-every", frames_every, "record every k-th step");

    CLI::App* conv = app.add_subcommand("converge", "rate study across a list of eps");
    conv->add_option("config", config_path, "scenario template")->required();
    conv->add_option("--eps", eps_list, "eps values (>= 3)")->required()->delimiter(',');
    conv->add_option("--out", out_dir, "output directory");

    CLI::App* val = app.add_subcommand("validate", "run the solver oracle checks");
    val->add_option("config", config_path, "scenario config (domain resolution)")->required();
    val->add_option("--out", out_dir, "output directory for validation.json");

    CLI::App* demo = app.add_subcommand("demo", "built-in demonstrations");
    LeapfrogParams lf;
    CLI::App* leap = demo->add_subcommand("leapfrog", "two like-signed vortices near the wall");
    leap->add_option("--r1", lf.r1, "first vortex radius");
    leap->add_option("--r2", lf.r2, "second vortex radius");
    leap->add_option("--a1", lf.a1, "first strength");
    leap->add_option("--a2", lf.a2, "second strength");
    leap->add_option("--dt", lf.dt, "time step");
    leap->add_option("--t-end", lf.t_end, "end time");
    leap->add_option("--delta", lf.delta, "separation scale");
    leap->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);
    set_thread_count(threads);

    try {
        if (run->parsed()) return cmd_run(config_path, out_dir, frames_every);
        if (conv->parsed()) return cmd_converge(config_path, eps_list, out_dir);
        if (val->parsed()) return cmd_validate(config_path, out_dir);
        if (demo->parsed() && leap->parsed()) return cmd_leapfrog(lf, out_dir);
        std::fprintf(stderr, "no subcommand\n");
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
