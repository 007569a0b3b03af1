#pragma once

#include <numbers>
#include <stdexcept>

#include "vortexdyn/vec2.hpp"

namespace vdyn {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInvTwoPi = 1.0 / kTwoPi;

/// Newtonian potential G(z) = -log|z| / (2*pi).
inline double newtonian_potential(const Vec2& z) {
    const double r2 = z.norm_sq();
    if (r2 == 0.0) throw std::domain_error("newtonian_potential: singular at z = 0");
    return -0.5 * kInvTwoPi * std::log(r2);
}

/// Biot-Savart kernel K(z) = z^perp / (2*pi*|z|^2), the rotated gradient
/// of the Newtonian potential (K = -grad^perp G).
inline Vec2 biot_savart_kernel(const Vec2& z) {
    const double r2 = z.norm_sq();
    if (r2 == 0.0) throw std::domain_error("biot_savart_kernel: singular at z = 0");
    return z.perp() * (kInvTwoPi / r2);
}

/// Algebraically regularized kernel K_d(z) = z^perp / (2*pi*(|z|^2 + d^2)).
/// Smooth everywhere; K_d(0) = 0, so a particle induces no velocity on itself.
inline Vec2 blob_kernel(const Vec2& z, double blob_delta) {
    return z.perp() * (kInvTwoPi / (z.norm_sq() + blob_delta * blob_delta));
}

}  // namespace vdyn
