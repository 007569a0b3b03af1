#include "vortexdyn/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "vortexdyn/domain_impl.hpp"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/kernels.hpp"

namespace vdyn {

namespace {

double fourier_eval(const std::vector<double>& c, const std::vector<double>& s, double t) {
    double v = c.empty() ? 0.0 : c[0];
    for (std::size_t k = 1; k < c.size(); ++k) v += c[k] * std::cos(double(k) * t);
    for (std::size_t k = 1; k < s.size(); ++k) v += s[k] * std::sin(double(k) * t);
    return v;
}

double fourier_deriv(const std::vector<double>& c, const std::vector<double>& s, double t) {
    double v = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) v -= double(k) * c[k] * std::sin(double(k) * t);
    for (std::size_t k = 1; k < s.size(); ++k) v += double(k) * s[k] * std::cos(double(k) * t);
    return v;
}

double fourier_deriv2(const std::vector<double>& c, const std::vector<double>& s, double t) {
    double v = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) v -= double(k * k) * c[k] * std::cos(double(k) * t);
    for (std::size_t k = 1; k < s.size(); ++k) v -= double(k * k) * s[k] * std::sin(double(k) * t);
    return v;
}

double point_segment_distance(const Vec2& x, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = ab.norm_sq();
    if (len2 == 0.0) return distance(x, a);
    const double t = std::clamp((x - a).dot(ab) / len2, 0.0, 1.0);
    return distance(x, a + ab * t);
}

int orientation_sign(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double v = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (v > 0) return 1;
    if (v < 0) return -1;
    return 0;
}

// Proper segment crossing test (shared endpoints do not count).
bool segments_cross(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const int o1 = orientation_sign(a, b, c);
    const int o2 = orientation_sign(a, b, d);
    const int o3 = orientation_sign(c, d, a);
    const int o4 = orientation_sign(c, d, b);
    return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

bool polygon_contains(const std::vector<Vec2>& poly, const Vec2& x) {
    // Crossing-number test. Callers exclude near-boundary points first.
    bool inside = false;
    const std::size_t n = poly.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const bool straddles = (poly[i].y > x.y) != (poly[j].y > x.y);
        if (!straddles) continue;
        const double x_cross =
            poly[j].x + (poly[i].x - poly[j].x) * (x.y - poly[j].y) / (poly[i].y - poly[j].y);
        if (x.x < x_cross) inside = !inside;
    }
    return inside;
}

constexpr double kBoundarySnapTol = 1e-12;

}  // namespace

BoundaryCurve::BoundaryCurve(std::vector<double> cx, std::vector<double> sx,
                             std::vector<double> cy, std::vector<double> sy, int n_quad)
    : cx_(std::move(cx)), sx_(std::move(sx)), cy_(std::move(cy)), sy_(std::move(sy)),
      n_quad_(n_quad) {
    if (n_quad_ < 16) throw config_error("BoundaryCurve: n_quad must be at least 16");

    node_points_.resize(std::size_t(n_quad_));
    for (int k = 0; k < n_quad_; ++k) {
        const double s = kTwoPi * k / n_quad_;
        node_points_[std::size_t(k)] = point(s);
        if (derivative(s).norm() <= 0.0)
            throw config_error("BoundaryCurve: vanishing speed at quadrature node");
    }

    // Length from a fine trapezoidal rule; spectrally exact for the Fourier
    // parameterization.
    const int nl = std::max(4096, 4 * n_quad_);
    double len = 0.0;
    for (int k = 0; k < nl; ++k) len += derivative(kTwoPi * k / nl).norm();
    length_ = len * kTwoPi / nl;

    // Signed area of the node polygon fixes the orientation flag.
    double area2 = 0.0;
    for (int k = 0; k < n_quad_; ++k) {
        const Vec2& a = node_points_[std::size_t(k)];
        const Vec2& b = node_points_[std::size_t((k + 1) % n_quad_)];
        area2 += a.x * b.y - a.y * b.x;
    }
    counterclockwise_ = area2 > 0.0;

    // Simplicity check at quadrature resolution.
    for (int i = 0; i < n_quad_; ++i) {
        for (int j = i + 2; j < n_quad_; ++j) {
            if (i == 0 && j == n_quad_ - 1) continue;  // adjacent around the seam
            if (segments_cross(node_points_[std::size_t(i)],
                               node_points_[std::size_t((i + 1) % n_quad_)],
                               node_points_[std::size_t(j)],
                               node_points_[std::size_t((j + 1) % n_quad_)]))
                throw config_error("BoundaryCurve: self-intersection at quadrature resolution");
        }
    }
}

BoundaryCurve BoundaryCurve::circle(Vec2 center, double radius, int n_quad) {
    if (radius <= 0.0) throw config_error("BoundaryCurve::circle: radius must be positive");
    return BoundaryCurve({center.x, radius}, {0.0, 0.0}, {center.y, 0.0}, {0.0, radius}, n_quad);
}

BoundaryCurve BoundaryCurve::ellipse(Vec2 center, double semi_x, double semi_y, int n_quad) {
    if (semi_x <= 0.0 || semi_y <= 0.0)
        throw config_error("BoundaryCurve::ellipse: semi-axes must be positive");
    return BoundaryCurve({center.x, semi_x}, {0.0, 0.0}, {center.y, 0.0}, {0.0, semi_y}, n_quad);
}

Vec2 BoundaryCurve::point(double s) const {
    return {fourier_eval(cx_, sx_, s), fourier_eval(cy_, sy_, s)};
}

Vec2 BoundaryCurve::derivative(double s) const {
    return {fourier_deriv(cx_, sx_, s), fourier_deriv(cy_, sy_, s)};
}

Vec2 BoundaryCurve::second_derivative(double s) const {
    return {fourier_deriv2(cx_, sx_, s), fourier_deriv2(cy_, sy_, s)};
}

std::vector<QuadratureNode> BoundaryCurve::quadrature_nodes(bool as_hole) const {
    std::vector<QuadratureNode> nodes(static_cast<std::size_t>(n_quad_));
    for (int k = 0; k < n_quad_; ++k) {
        const double s = kTwoPi * k / n_quad_;
        const Vec2 d = derivative(s);
        const double speed = d.norm();
        QuadratureNode& node = nodes[std::size_t(k)];
        node.point = node_points_[std::size_t(k)];
        node.tangent = d / speed;
        // Clockwise rotation of the tangent: outward for a counterclockwise
        // outer contour, flipped on holes so the normal leaves the fluid.
        node.normal = Vec2{node.tangent.y, -node.tangent.x};
        if (as_hole) node.normal = -node.normal;
        node.weight = speed * kTwoPi / n_quad_;
    }
    return nodes;
}

double BoundaryCurve::polyline_distance(const Vec2& x) const {
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = node_points_.size();
    for (std::size_t i = 0; i < n; ++i) {
        best = std::min(best, point_segment_distance(x, node_points_[i],
                                                     node_points_[(i + 1) % n]));
    }
    return best;
}

bool BoundaryCurve::encloses(const Vec2& x) const { return polygon_contains(node_points_, x); }

// ---------------------------------------------------------------------------
// Domain

namespace {

std::shared_ptr<const Domain::Impl> make_impl(DomainBackend backend, BoundaryCurve outer,
                                              std::vector<BoundaryCurve> holes, double r0,
                                              double r1) {
    if (!outer.counterclockwise())
        throw config_error("Domain: outer contour must be counterclockwise");
    for (std::size_t m = 0; m < holes.size(); ++m) {
        if (!holes[m].counterclockwise())
            throw config_error("Domain: hole " + std::to_string(m + 1) +
                               " must be counterclockwise");
    }
    // Holes strictly inside the outer contour and pairwise disjoint, checked
    // at quadrature resolution.
    for (std::size_t m = 0; m < holes.size(); ++m) {
        for (const auto& node : holes[m].quadrature_nodes()) {
            if (!outer.encloses(node.point) || outer.polyline_distance(node.point) <= 0.0)
                throw config_error("Domain: hole " + std::to_string(m + 1) +
                                   " not strictly inside the outer contour");
        }
        for (std::size_t l = m + 1; l < holes.size(); ++l) {
            for (const auto& node : holes[l].quadrature_nodes()) {
                if (holes[m].encloses(node.point))
                    throw config_error("Domain: holes " + std::to_string(m + 1) + " and " +
                                       std::to_string(l + 1) + " overlap");
            }
        }
    }
    auto impl = std::make_shared<Domain::Impl>(backend, std::move(outer), std::move(holes));
    impl->r0 = r0;
    impl->r1 = r1;
    return impl;
}

}  // namespace

Domain Domain::unit_disk(int n_quad) {
    return Domain(make_impl(DomainBackend::AnalyticDisk,
                            BoundaryCurve::circle({0.0, 0.0}, 1.0, n_quad), {}, 0.0, 1.0));
}

Domain Domain::annulus(double r0, double r1, int n_quad) {
    if (!(0.0 < r0 && r0 < r1))
        throw config_error("Domain::annulus: need 0 < r0 < r1");
    std::vector<BoundaryCurve> holes;
    holes.push_back(BoundaryCurve::circle({0.0, 0.0}, r0, n_quad));
    return Domain(make_impl(DomainBackend::AnalyticAnnulus,
                            BoundaryCurve::circle({0.0, 0.0}, r1, n_quad), std::move(holes), r0,
                            r1));
}

Domain Domain::boundary_integral(BoundaryCurve outer, std::vector<BoundaryCurve> holes) {
    return Domain(make_impl(DomainBackend::BoundaryIntegral, std::move(outer), std::move(holes),
                            0.0, 0.0));
}

DomainBackend Domain::backend() const { return impl_->backend; }
int Domain::hole_count() const { return int(impl_->holes.size()); }
const BoundaryCurve& Domain::outer() const { return impl_->outer; }

const BoundaryCurve& Domain::hole(int m) const {
    if (m < 1 || m > hole_count())
        throw std::out_of_range("Domain::hole: index " + std::to_string(m) + " out of range");
    return impl_->holes[std::size_t(m - 1)];
}

double Domain::inner_radius() const {
    if (impl_->backend != DomainBackend::AnalyticAnnulus)
        throw std::logic_error("Domain::inner_radius: not an analytic annulus");
    return impl_->r0;
}

double Domain::outer_radius() const {
    if (impl_->backend == DomainBackend::BoundaryIntegral)
        throw std::logic_error("Domain::outer_radius: not an analytic backend");
    return impl_->r1;
}

bool Domain::contains(const Vec2& x) const {
    switch (impl_->backend) {
        case DomainBackend::AnalyticDisk:
            return 1.0 - x.norm() > kBoundarySnapTol;
        case DomainBackend::AnalyticAnnulus: {
            const double r = x.norm();
            return r - impl_->r0 > kBoundarySnapTol && impl_->r1 - r > kBoundarySnapTol;
        }
        case DomainBackend::BoundaryIntegral: {
            if (impl_->outer.polyline_distance(x) <= kBoundarySnapTol) return false;
            if (!impl_->outer.encloses(x)) return false;
            for (const auto& h : impl_->holes) {
                if (h.polyline_distance(x) <= kBoundarySnapTol) return false;
                if (h.encloses(x)) return false;
            }
            return true;
        }
    }
    return false;
}

double Domain::boundary_distance(const Vec2& x) const {
    if (!contains(x)) throw std::domain_error("boundary_distance: point outside the domain");
    switch (impl_->backend) {
        case DomainBackend::AnalyticDisk:
            return 1.0 - x.norm();
        case DomainBackend::AnalyticAnnulus: {
            const double r = x.norm();
            return std::min(r - impl_->r0, impl_->r1 - r);
        }
        case DomainBackend::BoundaryIntegral: {
            double best = impl_->outer.polyline_distance(x);
            for (const auto& h : impl_->holes) best = std::min(best, h.polyline_distance(x));
            return best;
        }
    }
    return 0.0;
}

std::vector<QuadratureNode> Domain::component_nodes(int comp) const {
    if (comp == 0) return impl_->outer.quadrature_nodes(false);
    return hole(comp).quadrature_nodes(true);
}

double Domain::component_distance(const Vec2& x, int comp) const {
    switch (impl_->backend) {
        case DomainBackend::AnalyticDisk:
            return 1.0 - x.norm();
        case DomainBackend::AnalyticAnnulus:
            return comp == 0 ? impl_->r1 - x.norm() : x.norm() - impl_->r0;
        case DomainBackend::BoundaryIntegral:
            return comp == 0 ? impl_->outer.polyline_distance(x)
                             : hole(comp).polyline_distance(x);
    }
    return 0.0;
}

const void* Domain::id() const { return impl_.get(); }

}  // namespace vdyn
