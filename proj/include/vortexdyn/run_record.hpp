#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexdyn/monitor.hpp"
#include "vortexdyn/vec2.hpp"

namespace vdyn {

struct FrameVortex {
    Vec2 Y;        // point-vortex position
    Vec2 X;        // center of vorticity
    Vec2 dX;       // center velocity (far-field average)
    Vec2 dY;       // Kirchhoff-Routh right-hand side
    double W2{0.0};    // W2(omega_i / a_i, dirac at Y_i)
    double maxF{0.0};  // max |F_i| over the patch's particles
};

struct Frame {
    double t{0.0};
    std::vector<FrameVortex> vortices;
    double W1{0.0};  // signed W1 between the field and the empirical measure
    double H{0.0};   // Kirchhoff-Routh energy (NaN when M > 0)
    SeparationReport c5;   // particle supports
    SeparationReport c12;  // point vortices
    std::vector<double> hole_coeffs;
};

/// Full time series of one run plus the stopping diagnosis. Serializes to a
/// fixed-header CSV (17 significant digits, lossless round trip) and a JSON
/// manifest.
struct RunRecord {
    std::string scenario_name;
    int N{0};
    int M{0};
    std::vector<double> strengths;
    std::vector<double> lp_proxy;    // per patch, initial-cell metadata
    std::vector<double> linf_proxy;  // per patch
    std::vector<Frame> frames;
    std::string stopping_reason;  // t_end | C5-pair | C5-boundary | C12-pair | C12-boundary
    double stop_time{0.0};
    double wall_time{0.0};
    std::uint64_t config_hash{0};

    std::string to_csv() const;
    std::string manifest_json() const;
};

/// Writes frames.csv and manifest.json into `dir` (created if needed).
void save_run(const RunRecord& record, const std::string& dir);

/// Reloads a saved run losslessly.
RunRecord load_run(const std::string& dir);

}  // namespace vdyn
