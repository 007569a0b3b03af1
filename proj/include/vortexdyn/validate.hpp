#pragma once

#include <string>
#include <vector>

#include "vortexdyn/config.hpp"

namespace vdyn {

struct ValidationCheck {
    std::string name;
    bool pass{false};
    double value{0.0};      // measured error / quantity
    double threshold{0.0};  // pass iff value <= threshold (or as documented)
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const {
        for (const ValidationCheck& c : checks)
            if (!c.pass) return false;
        return true;
    }
    std::string to_json() const;
};

/// Runs the oracle suite: disk image cross-checks for theta/eta, annulus
/// radial oracles, hole-field conditions, maximum-principle sweeps, kernel
/// identities and quadrature convergence. The cross-checks use the resolution
/// of `spec` (an under-resolved n_quad is reported as failing entries, not
/// as errors).
ValidationReport validate_domain(const DomainSpec& spec);

}  // namespace vdyn
