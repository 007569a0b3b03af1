#pragma once

#include <memory>
#include <mutex>
#include <vector>

#include "vortexdyn/geometry.hpp"

namespace vdyn {

/// Shared immutable state behind a Domain handle. The `harmonic_cache` slot
/// holds the per-domain Laplace solver state (factorized Nystrom system,
/// harmonic measures, hole fields); it is owned here so its lifetime matches
/// the geometry, but only the harmonic module knows the concrete type.
struct Domain::Impl {
    Impl(DomainBackend b, BoundaryCurve out, std::vector<BoundaryCurve> h)
        : backend(b), outer(std::move(out)), holes(std::move(h)) {}

    DomainBackend backend;
    BoundaryCurve outer;
    std::vector<BoundaryCurve> holes;
    double r0{0.0};
    double r1{0.0};

    mutable std::mutex cache_mutex;
    mutable std::shared_ptr<const void> harmonic_cache;
};

}  // namespace vdyn
