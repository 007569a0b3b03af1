#pragma once

#include <memory>
#include <vector>

#include "vortexdyn/vec2.hpp"

namespace vdyn {

/// Node of the trapezoidal (Nystrom) rule on a closed curve. `tangent` and
/// `normal` are unit vectors; `normal` points outward with respect to the
/// fluid domain, `weight` is |gamma'(s)| * 2*pi/n.
struct QuadratureNode {
    Vec2 point;
    Vec2 tangent;
    Vec2 normal;
    double weight{0.0};
};

/// Smooth closed curve given as a truncated Fourier series of its
/// parameterization,
///
///   x(s) = sum_k cx[k] cos(ks) + sx[k] sin(ks),   s in [0, 2*pi),
///
/// and likewise for y(s). The representation is periodic and analytic by
/// construction, so derivatives are exact and the trapezoidal rule on it is
/// spectrally accurate. Curves are expected counterclockwise.
class BoundaryCurve {
  public:
    BoundaryCurve(std::vector<double> cx, std::vector<double> sx,
                  std::vector<double> cy, std::vector<double> sy, int n_quad);

    static BoundaryCurve circle(Vec2 center, double radius, int n_quad);
    static BoundaryCurve ellipse(Vec2 center, double semi_x, double semi_y, int n_quad);

    Vec2 point(double s) const;
    Vec2 derivative(double s) const;
    Vec2 second_derivative(double s) const;

    int n_quad() const { return n_quad_; }
    bool counterclockwise() const { return counterclockwise_; }

    /// Curve length from high-order quadrature of |gamma'|.
    double length() const { return length_; }

    /// Trapezoidal nodes at s_k = 2*pi*k/n. For a counterclockwise curve the
    /// stored normal is tangent rotated clockwise, which points out of the
    /// enclosed region; `as_hole` flips it so it is outward w.r.t. the fluid.
    std::vector<QuadratureNode> quadrature_nodes(bool as_hole = false) const;

    /// Distance from x to the polyline through the quadrature nodes.
    double polyline_distance(const Vec2& x) const;

    /// Winding-number test against the node polygon.
    bool encloses(const Vec2& x) const;

    const std::vector<double>& coeff_cx() const { return cx_; }
    const std::vector<double>& coeff_sx() const { return sx_; }
    const std::vector<double>& coeff_cy() const { return cy_; }
    const std::vector<double>& coeff_sy() const { return sy_; }

  private:
    std::vector<double> cx_, sx_, cy_, sy_;
    int n_quad_;
    bool counterclockwise_{true};
    double length_{0.0};
    std::vector<Vec2> node_points_;  // sampled once for distance/winding queries
};

enum class DomainBackend { AnalyticDisk, AnalyticAnnulus, BoundaryIntegral };

/// Bounded domain: exterior contour Gamma_0 plus M disjoint hole contours
/// Gamma_1..Gamma_M. Immutable after construction; cheap to copy (shared
/// implementation). The analytic backends (unit disk, origin-centered
/// annulus) answer distance and containment queries exactly.
class Domain {
  public:
    static Domain unit_disk(int n_quad);
    static Domain annulus(double r0, double r1, int n_quad);
    static Domain boundary_integral(BoundaryCurve outer, std::vector<BoundaryCurve> holes);

    DomainBackend backend() const;
    int hole_count() const;
    const BoundaryCurve& outer() const;
    const BoundaryCurve& hole(int m) const;  // m in [1, M]

    /// Annulus radii (AnalyticAnnulus backend only).
    double inner_radius() const;
    double outer_radius() const;

    /// True iff x lies in the open fluid region. Points within 1e-12 of the
    /// sampled boundary are reported outside, so every accepted point has
    /// strictly positive boundary_distance.
    bool contains(const Vec2& x) const;

    /// Distance to the nearest boundary component. Exact for the analytic
    /// backends, polyline distance at quadrature resolution otherwise
    /// (error O(n_quad^-2)). Throws std::domain_error for x outside.
    double boundary_distance(const Vec2& x) const;

    /// Quadrature nodes of component `comp` (0 = outer, 1..M = holes) with
    /// normals outward w.r.t. the fluid domain.
    std::vector<QuadratureNode> component_nodes(int comp) const;

    /// Distance from x to boundary component `comp` alone (exact for the
    /// analytic backends where it may be signed, polyline otherwise).
    double component_distance(const Vec2& x, int comp) const;

    /// Identity token for per-domain solver caches.
    const void* id() const;

    struct Impl;
    const Impl& impl() const { return *impl_; }

  private:
    explicit Domain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace vdyn
