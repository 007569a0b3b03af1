#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace vdyn {

/// Result of a separation check against the delta/2 threshold. `min_pair`
/// is +infinity when fewer than two vortices/patches exist.
struct SeparationReport {
    double min_pair{std::numeric_limits<double>::infinity()};
    double min_boundary{std::numeric_limits<double>::infinity()};
    double threshold{0.0};  // delta / 2
    bool ok{false};

    static SeparationReport make(double min_pair, double min_boundary, double delta) {
        SeparationReport r;
        r.min_pair = min_pair;
        r.min_boundary = min_boundary;
        r.threshold = 0.5 * delta;
        r.ok = min_pair >= r.threshold && min_boundary >= r.threshold;
        return r;
    }
};

/// Raised when a separation monitor fires during time stepping: the run's
/// stopping time T has been reached. `condition` is "pair" or "boundary".
class separation_stop : public std::runtime_error {
  public:
    separation_stop(const std::string& what, SeparationReport report, std::string condition)
        : std::runtime_error(what), report(report), condition(std::move(condition)) {}

    SeparationReport report;
    std::string condition;
};

}  // namespace vdyn
