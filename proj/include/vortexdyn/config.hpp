#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexdyn/geometry.hpp"
#include "vortexdyn/particle_field.hpp"

namespace vdyn {

/// Fourier coefficients of one boundary curve as they appear in the config.
struct CurveSpec {
    std::vector<double> cos_x, sin_x, cos_y, sin_y;
    int n_quad{256};
};

struct DomainSpec {
    std::string backend{"analytic-disk"};
    int n_quad{256};
    double r0{0.5};
    double r1{1.0};
    CurveSpec outer;               // boundary-integral backend
    std::vector<CurveSpec> holes;  // boundary-integral backend

    Domain build() const;
};

struct PatchConfig {
    Vec2 center;
    double strength{1.0};
    std::string profile{"uniform"};  // uniform | singular
    double beta{0.5};
    double lambda{-1.0};  // < 0 selects eps^(2/p)
    Vec2 y_offset;        // initial point-vortex offset, in units of eps
};

/// Fully deterministic scenario description (versioned key-value file).
struct Scenario {
    int schema{1};
    std::string name{"unnamed"};
    DomainSpec domain_spec;
    std::vector<PatchConfig> patches;
    std::vector<double> circulations;

    double eps{0.05};
    double delta{0.5};
    double p{3.0};
    double h_over_eps{0.1};
    double blob_over_h{2.0};
    double dt{0.002};
    double t_end{0.5};
    int frames_every{10};
    double t_min{-1.0};  // converge gate; < 0 means t_end
    double rate_window_lo{0.7};
    double rate_window_hi{1.3};

    std::uint64_t config_hash{0};

    std::vector<PatchSpec> patch_specs() const;  // resolved at the current eps
    std::vector<Vec2> initial_vortex_positions() const;
    std::vector<double> strengths() const;
    double grid_h() const { return h_over_eps * eps; }
    double blob_delta() const { return blob_over_h * grid_h(); }
};

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace vdyn
