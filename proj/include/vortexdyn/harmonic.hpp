#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "vortexdyn/geometry.hpp"
#include "vortexdyn/particle_field.hpp"

namespace vdyn {

using BoundaryFunction = std::function<double(const Vec2&)>;

/// A solved interior Dirichlet problem, queryable for values and gradients
/// at interior points. Quadrature-backed evaluators refuse queries closer to
/// the boundary than their accuracy clearance (5 * curve length / n_quad);
/// closed-form evaluators have clearance zero.
class HarmonicEvaluator {
  public:
    double value(const Vec2& x) const;
    Vec2 gradient(const Vec2& x) const;
    Vec2 perp_gradient(const Vec2& x) const {
        const Vec2 g = gradient(x);
        return {-g.y, g.x};
    }
    double clearance() const;

    struct Impl;
    explicit HarmonicEvaluator(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  private:
    std::shared_ptr<const Impl> impl_;
};

/// Divergence- and curl-free field xi_m, tangential at the boundary, with
/// unit circulation around hole m and zero around the other holes. Realized
/// as the perp-gradient of a harmonic stream function that is constant on
/// every boundary component (zero on the outer contour by gauge choice).
class HoleField {
  public:
    Vec2 at(const Vec2& x) const;
    int index() const;

    /// Stream-function constants per component (entry 0 = outer contour).
    const std::vector<double>& stream_constants() const;

    struct Impl;
    explicit HoleField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  private:
    std::shared_ptr<const Impl> impl_;
};

/// Harmonic function with boundary trace g. Analytic backends solve in
/// Fourier space on each circle; the boundary-integral backend solves the
/// double-layer Nystrom system (with one interior source per hole to fix the
/// multiply-connected rank deficiency).
HarmonicEvaluator solve_dirichlet(const Domain& domain, const BoundaryFunction& g);

/// Harmonic measure w_m: 1 on Gamma_m, 0 on the other components.
HarmonicEvaluator harmonic_measure(const Domain& domain, int m);

HoleField hole_field(const Domain& domain, int m);

/// Harmonic extension eta of the boundary trace of G * omega for a particle
/// field: boundary data g(x) = sum_p weight_p G(x - x_p).
HarmonicEvaluator eta_evaluator(const Domain& domain, const ParticleField& field);

/// Boundary interaction theta of the point-vortex system: boundary data
/// sum_j a_j G(x - Y_j). On the unit disk this is the exact image formula
///   theta(x) = -sum_j (a_j / 2 pi) log(|Y_j| |x - Y_j / |Y_j|^2|).
HarmonicEvaluator theta_evaluator(const Domain& domain, const std::vector<double>& strengths,
                                  const std::vector<Vec2>& positions);

}  // namespace vdyn
