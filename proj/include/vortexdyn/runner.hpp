#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vortexdyn/config.hpp"
#include "vortexdyn/run_record.hpp"

namespace vdyn {

/// Advances the particle discretization and the Kirchhoff-Routh system side
/// by side with the same dt (one-directional coupling: the vortices never
/// feed back into the particles) and records frames every `frames_every`
/// steps up to t_end or the first monitor violation.
RunRecord run_scenario(const Scenario& scenario);

struct SweepEntry {
    double eps{0.0};
    double max_w2{0.0};    // max over frames and patches
    double max_xy{0.0};    // max |X_i - Y_i|
    double max_dxy{0.0};   // max |dX_i/dt - dY_i/dt|
    double max_w1{0.0};
    double stop_time{0.0};
    std::string stopping_reason;
    std::vector<double> max_farfield;  // per patch, max over frames
    double lp_proxy_scaled{0.0};       // max_i lp_proxy_i * eps^(2 (1 - 2/p))
    bool jensen_ok{true};              // W1 <= sum |a_i| W2_i + 1e-9 on every frame
    double jensen_worst{0.0};          // most positive violation margin
};

struct ConvergeReport {
    std::vector<SweepEntry> entries;
    bool fitted{false};
    double slope_w2{0.0}, slope_xy{0.0}, slope_dxy{0.0}, slope_w1{0.0};
    bool t_uniform{false};  // every run reached t_min
    bool rates_ok{false};   // all four slopes inside the window
    bool jensen_ok{false};
    bool relaxed_regime{false};  // some eps > delta / 20
    double window_lo{0.7}, window_hi{1.3};
    double t_min{0.0};

    bool pass() const { return t_uniform && rates_ok && jensen_ok; }
    std::string to_json() const;
};

using RunFunction = std::function<RunRecord(const Scenario&)>;

/// Runs the scenario template across the eps list (h and blob_delta scale
/// with eps through the configured ratios), extracts the max-over-time
/// errors, and fits log-log slopes against eps. Sub-runs that stop before
/// t_min flag a non-uniform stopping time instead of fitting.
ConvergeReport converge(const Scenario& base, const std::vector<double>& eps_list,
                        const RunFunction& runner = run_scenario);

struct LeapfrogParams {
    double r1{0.74};
    double r2{0.86};
    double a1{1.0};
    double a2{1.0};
    double delta{0.1};
    double dt{2e-4};
    double t_end{1.5};
    int frames_every{10};
};

struct LeapfrogResult {
    RunRecord record;
    int exchanges{0};       // radial-order swaps between the two vortices
    double h_drift{0.0};    // relative Hamiltonian drift over the run
};

/// Two like-signed vortices near the disk boundary (point-vortex run only).
LeapfrogResult demo_leapfrog(const LeapfrogParams& params);

}  // namespace vdyn
