#include "vortexdyn/harmonic.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "vortexdyn/domain_impl.hpp"
#include "vortexdyn/errors.hpp"
#include "vortexdyn/kernels.hpp"

namespace vdyn {

namespace {
using Complex = std::complex<double>;
}

// ---------------------------------------------------------------------------
// Evaluator plumbing

struct HarmonicEvaluator::Impl {
    explicit Impl(Domain d) : domain(std::move(d)) {}
    virtual ~Impl() = default;
    virtual double value_at(const Vec2& x) const = 0;
    virtual Vec2 gradient_at(const Vec2& x) const = 0;
    Domain domain;
    // Per-component accuracy clearance (5 * curve length / n_quad for
    // quadrature-backed solves); empty for exact closed forms.
    std::vector<double> clearances;
};

namespace {

std::vector<double> quadrature_clearances(const Domain& domain) {
    std::vector<double> cl;
    cl.push_back(5.0 * domain.outer().length() / domain.outer().n_quad());
    for (int m = 1; m <= domain.hole_count(); ++m)
        cl.push_back(5.0 * domain.hole(m).length() / domain.hole(m).n_quad());
    return cl;
}

void check_clearances(const Domain& domain, const std::vector<double>& clearances,
                      const Vec2& x) {
    domain.boundary_distance(x);  // throws std::domain_error if x is outside
    for (std::size_t c = 0; c < clearances.size(); ++c) {
        const double d = domain.component_distance(x, int(c));
        if (d <= clearances[c]) {
            std::ostringstream msg;
            msg << "harmonic evaluation too close to boundary component " << c << ": distance "
                << d << " <= clearance " << clearances[c];
            throw evaluation_error(msg.str(), d, clearances[c]);
        }
    }
}

}  // namespace

double HarmonicEvaluator::value(const Vec2& x) const {
    check_clearances(impl_->domain, impl_->clearances, x);
    return impl_->value_at(x);
}

Vec2 HarmonicEvaluator::gradient(const Vec2& x) const {
    check_clearances(impl_->domain, impl_->clearances, x);
    return impl_->gradient_at(x);
}

double HarmonicEvaluator::clearance() const {
    double cl = 0.0;
    for (double c : impl_->clearances) cl = std::max(cl, c);
    return cl;
}

// ---------------------------------------------------------------------------
// Closed-form evaluators

namespace {

struct ConstantEvaluator final : HarmonicEvaluator::Impl {
    ConstantEvaluator(Domain d, double c) : Impl(std::move(d)), c(c) {}
    double value_at(const Vec2&) const override { return c; }
    Vec2 gradient_at(const Vec2&) const override { return {0.0, 0.0}; }
    double c;
};

/// Image representation on the unit disk: the harmonic extension of the
/// boundary trace of sum_j w_j G(x - y_j) is
///   -sum_j (w_j / 2 pi) log(|y_j| |x - y_j / |y_j|^2|),
/// with vanishing contribution from sources at the center.
struct DiskImagesEvaluator final : HarmonicEvaluator::Impl {
    DiskImagesEvaluator(Domain d, std::vector<double> w, std::vector<Vec2> y)
        : Impl(std::move(d)), weights(std::move(w)), sources(std::move(y)) {
        images.reserve(sources.size());
        for (const Vec2& s : sources) {
            const double r2 = s.norm_sq();
            images.push_back(r2 > 0.0 ? s / r2 : Vec2{0.0, 0.0});
        }
    }

    double value_at(const Vec2& x) const override {
        double v = 0.0;
        for (std::size_t j = 0; j < sources.size(); ++j) {
            const double r = sources[j].norm();
            if (r == 0.0) continue;
            v -= weights[j] * kInvTwoPi * std::log(r * distance(x, images[j]));
        }
        return v;
    }

    Vec2 gradient_at(const Vec2& x) const override {
        Vec2 g{0.0, 0.0};
        for (std::size_t j = 0; j < sources.size(); ++j) {
            if (sources[j].norm_sq() == 0.0) continue;
            const Vec2 r = x - images[j];
            g -= r * (weights[j] * kInvTwoPi / r.norm_sq());
        }
        return g;
    }

    std::vector<double> weights;
    std::vector<Vec2> sources;
    std::vector<Vec2> images;
};

/// Radial harmonic measure of the annulus hole: log(|x|/r1) / log(r0/r1).
struct AnnulusMeasureEvaluator final : HarmonicEvaluator::Impl {
    AnnulusMeasureEvaluator(Domain d, double r0, double r1)
        : Impl(std::move(d)), inv_log_ratio(1.0 / std::log(r0 / r1)), r1(r1) {}

    double value_at(const Vec2& x) const override {
        return std::log(x.norm() / r1) * inv_log_ratio;
    }
    Vec2 gradient_at(const Vec2& x) const override {
        return x * (inv_log_ratio / x.norm_sq());
    }

    double inv_log_ratio;
    double r1;
};

/// Truncated holomorphic series on the unit disk, u = Re sum_k c_k z^k,
/// fitted to trapezoidal boundary samples. Gradient comes from the
/// derivative series: grad u = (Re f', -Im f').
struct DiskFourierEvaluator final : HarmonicEvaluator::Impl {
    DiskFourierEvaluator(Domain d, const std::vector<double>& samples) : Impl(std::move(d)) {
        const int n = int(samples.size());
        const int modes = n / 2;  // c_0 .. c_{modes-1}
        coeffs.assign(std::size_t(modes), Complex{0.0, 0.0});
        for (int j = 0; j < n; ++j) {
            const Complex step = std::exp(Complex{0.0, -kTwoPi * j / n});
            Complex e{1.0, 0.0};
            for (int k = 0; k < modes; ++k) {
                coeffs[std::size_t(k)] += samples[std::size_t(j)] * e;
                e *= step;
            }
        }
        coeffs[0] = Complex{coeffs[0].real() / n, 0.0};
        for (int k = 1; k < modes; ++k) coeffs[std::size_t(k)] *= 2.0 / n;
        clearances = quadrature_clearances(domain);
    }

    double value_at(const Vec2& x) const override {
        const Complex z{x.x, x.y};
        Complex zk{1.0, 0.0};
        Complex acc{0.0, 0.0};
        for (const Complex& c : coeffs) {
            acc += c * zk;
            zk *= z;
        }
        return acc.real();
    }

    Vec2 gradient_at(const Vec2& x) const override {
        const Complex z{x.x, x.y};
        Complex zk{1.0, 0.0};
        Complex deriv{0.0, 0.0};
        for (std::size_t k = 1; k < coeffs.size(); ++k) {
            deriv += double(k) * coeffs[k] * zk;
            zk *= z;
        }
        return {deriv.real(), -deriv.imag()};
    }

    std::vector<Complex> coeffs;
};

/// Laurent-mode solution on the annulus r0 < |z| < r1,
///   u = A + B log|z| + Re sum_k [ alpha_k (z/r1)^k + beta_k (r0/z)^k ],
/// fitted per mode to the boundary samples on both circles. The scaled
/// basis keeps every 2x2 mode system well conditioned at any order.
struct AnnulusFourierEvaluator final : HarmonicEvaluator::Impl {
    AnnulusFourierEvaluator(Domain d, const std::vector<double>& outer_samples,
                            const std::vector<double>& hole_samples)
        : Impl(std::move(d)), r0(domain.inner_radius()), r1(domain.outer_radius()) {
        const int n = int(outer_samples.size());
        const int modes = n / 2;
        std::vector<Complex> g1(static_cast<std::size_t>(modes)), g0(static_cast<std::size_t>(modes));
        for (int j = 0; j < n; ++j) {
            const Complex step = std::exp(Complex{0.0, -kTwoPi * j / n});
            Complex e{1.0, 0.0};
            for (int k = 0; k < modes; ++k) {
                g1[std::size_t(k)] += outer_samples[std::size_t(j)] * e;
                g0[std::size_t(k)] += hole_samples[std::size_t(j)] * e;
                e *= step;
            }
        }
        for (int k = 0; k < modes; ++k) {
            const double scale = (k == 0) ? 1.0 / n : 2.0 / n;
            g1[std::size_t(k)] *= scale;
            g0[std::size_t(k)] *= scale;
        }

        log_coeff = (g0[0].real() - g1[0].real()) / std::log(r0 / r1);
        constant = g1[0].real() - log_coeff * std::log(r1);

        alpha.assign(std::size_t(modes), Complex{0.0, 0.0});
        beta.assign(std::size_t(modes), Complex{0.0, 0.0});
        const double q = r0 / r1;
        double qk = 1.0;
        for (int k = 1; k < modes; ++k) {
            qk *= q;
            const double det = qk * qk - 1.0;
            alpha[std::size_t(k)] = (qk * g0[std::size_t(k)] - g1[std::size_t(k)]) / det;
            beta[std::size_t(k)] = (qk * g1[std::size_t(k)] - g0[std::size_t(k)]) / det;
        }
        clearances = quadrature_clearances(domain);
    }

    double value_at(const Vec2& x) const override {
        const Complex z{x.x, x.y};
        const Complex w1 = z / r1;
        const Complex w0 = r0 / z;
        Complex p1{1.0, 0.0}, p0{1.0, 0.0};
        double v = constant + log_coeff * std::log(std::abs(z));
        for (std::size_t k = 1; k < alpha.size(); ++k) {
            p1 *= w1;
            p0 *= w0;
            v += (alpha[k] * p1 + beta[k] * p0).real();
        }
        return v;
    }

    Vec2 gradient_at(const Vec2& x) const override {
        const Complex z{x.x, x.y};
        const Complex w1 = z / r1;
        const Complex w0 = r0 / z;
        Complex p1{1.0, 0.0}, p0{1.0, 0.0};
        Complex deriv = log_coeff / z;
        for (std::size_t k = 1; k < alpha.size(); ++k) {
            p1 *= w1;
            p0 *= w0;
            deriv += double(k) * (alpha[k] * p1 - beta[k] * p0) / z;
        }
        return {deriv.real(), -deriv.imag()};
    }

    double r0, r1;
    double constant{0.0}, log_coeff{0.0};
    std::vector<Complex> alpha, beta;
};

}  // namespace

// ---------------------------------------------------------------------------
// Nystrom solver (boundary-integral backend)

namespace {

struct NystromNode {
    Vec2 point;
    Vec2 normal;
    double weight{0.0};
    int comp{0};
};

/// Double-layer representation with one interior log source per hole,
///   u = D[phi] + sum_m A_m G(. - z_m),  A_m = integral of phi over Gamma_m,
/// which restores unique solvability of the interior Dirichlet problem in
/// multiply connected domains. Collocated at the trapezoidal nodes; the
/// smooth diagonal limit of the double-layer kernel is
/// (gamma'' . nu) / (2 |gamma'|^2) / (2 pi).
struct NystromSystem {
    std::vector<NystromNode> nodes;
    std::vector<int> comp_begin;     // size M+2; nodes of comp c in [begin[c], begin[c+1])
    std::vector<Vec2> hole_sources;  // z_m
    Eigen::PartialPivLU<Eigen::MatrixXd> lu;

    struct Density {
        Eigen::VectorXd phi;
        std::vector<double> source_coeffs;  // A_m
    };

    Density solve(const Eigen::VectorXd& g) const {
        Density d;
        d.phi = lu.solve(g);
        d.source_coeffs.assign(hole_sources.size(), 0.0);
        for (std::size_t m = 0; m < hole_sources.size(); ++m) {
            double a = 0.0;
            for (int j = comp_begin[m + 1]; j < comp_begin[m + 2]; ++j)
                a += d.phi[j] * nodes[std::size_t(j)].weight;
            d.source_coeffs[m] = a;
        }
        return d;
    }
};

double double_layer_kernel(const Vec2& x, const NystromNode& node) {
    const Vec2 r = x - node.point;
    return kInvTwoPi * r.dot(node.normal) / r.norm_sq();
}

// Hager's 1-norm estimate of ||B^{-1}||.
double inverse_norm1_estimate(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, int n) {
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / n);
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        const Eigen::VectorXd y = lu.solve(x);
        est = y.lpNorm<1>();
        Eigen::VectorXd xi(n);
        for (int i = 0; i < n; ++i) xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
        const Eigen::VectorXd z = lu.transpose().solve(xi);
        int j = 0;
        const double zmax = z.cwiseAbs().maxCoeff(&j);
        if (zmax <= z.dot(x)) break;
        x.setZero();
        x[j] = 1.0;
    }
    return est;
}

std::unique_ptr<NystromSystem> build_nystrom(const Domain& domain) {
    auto sys = std::make_unique<NystromSystem>();
    const int ncomp = domain.hole_count() + 1;
    sys->comp_begin.assign(std::size_t(ncomp + 1), 0);

    std::vector<double> diag;
    for (int c = 0; c < ncomp; ++c) {
        const BoundaryCurve& curve = (c == 0) ? domain.outer() : domain.hole(c);
        const int n = curve.n_quad();
        sys->comp_begin[std::size_t(c)] = int(sys->nodes.size());
        const auto qn = domain.component_nodes(c);
        Vec2 centroid{0.0, 0.0};
        for (int k = 0; k < n; ++k) {
            const QuadratureNode& node = qn[std::size_t(k)];
            sys->nodes.push_back({node.point, node.normal, node.weight, c});
            const double s = kTwoPi * k / n;
            const Vec2 d1 = curve.derivative(s);
            const Vec2 d2 = curve.second_derivative(s);
            diag.push_back(kInvTwoPi * d2.dot(node.normal) / (2.0 * d1.norm_sq()));
            centroid += node.point * (1.0 / n);
        }
        if (c > 0) sys->hole_sources.push_back(centroid);
    }
    sys->comp_begin[std::size_t(ncomp)] = int(sys->nodes.size());

    const int n_total = int(sys->nodes.size());
    Eigen::MatrixXd B(n_total, n_total);
    for (int i = 0; i < n_total; ++i) {
        const Vec2 xi = sys->nodes[std::size_t(i)].point;
        for (int j = 0; j < n_total; ++j) {
            const NystromNode& nj = sys->nodes[std::size_t(j)];
            double k = (i == j) ? diag[std::size_t(j)] : double_layer_kernel(xi, nj);
            double b = k * nj.weight;
            if (nj.comp > 0)
                b += newtonian_potential(xi - sys->hole_sources[std::size_t(nj.comp - 1)]) *
                     nj.weight;
            B(i, j) = b + (i == j ? -0.5 : 0.0);
        }
    }

    const double norm1 = B.cwiseAbs().colwise().sum().maxCoeff();
    sys->lu.compute(B);
    const double cond = norm1 * inverse_norm1_estimate(sys->lu, n_total);
    if (!std::isfinite(cond) || cond > 1e12) {
        std::ostringstream msg;
        msg << "Nystrom system ill-conditioned (cond estimate " << cond
            << ") for domain with outer n_quad " << domain.outer().n_quad() << " and "
            << domain.hole_count() << " hole(s)";
        throw solver_error(msg.str());
    }
    return sys;
}

struct NystromEvaluator final : HarmonicEvaluator::Impl {
    NystromEvaluator(Domain d, const NystromSystem* sys, NystromSystem::Density density)
        : Impl(std::move(d)), sys(sys), density(std::move(density)) {
        clearances = quadrature_clearances(domain);
    }

    double value_at(const Vec2& x) const override {
        double v = 0.0;
        for (std::size_t j = 0; j < sys->nodes.size(); ++j)
            v += density.phi[long(j)] * sys->nodes[j].weight * double_layer_kernel(x, sys->nodes[j]);
        for (std::size_t m = 0; m < sys->hole_sources.size(); ++m)
            v += density.source_coeffs[m] * newtonian_potential(x - sys->hole_sources[m]);
        return v;
    }

    Vec2 gradient_at(const Vec2& x) const override {
        Vec2 g{0.0, 0.0};
        for (std::size_t j = 0; j < sys->nodes.size(); ++j) {
            const NystromNode& nj = sys->nodes[j];
            const Vec2 r = x - nj.point;
            const double r2 = r.norm_sq();
            const double rn = r.dot(nj.normal);
            const double c = density.phi[long(j)] * nj.weight * kInvTwoPi;
            g += (nj.normal / r2 - r * (2.0 * rn / (r2 * r2))) * c;
        }
        for (std::size_t m = 0; m < sys->hole_sources.size(); ++m) {
            const Vec2 r = x - sys->hole_sources[m];
            g -= r * (density.source_coeffs[m] * kInvTwoPi / r.norm_sq());
        }
        return g;
    }

    const NystromSystem* sys;  // owned by the domain cache
    NystromSystem::Density density;
};

}  // namespace

// ---------------------------------------------------------------------------
// Hole fields

struct HoleField::Impl {
    virtual ~Impl() = default;
    virtual Vec2 at(const Vec2& x) const = 0;
    int m{0};
    std::vector<double> stream_constants;
};

Vec2 HoleField::at(const Vec2& x) const { return impl_->at(x); }
int HoleField::index() const { return impl_->m; }
const std::vector<double>& HoleField::stream_constants() const { return impl_->stream_constants; }

namespace {

/// xi_1 of the origin-centered annulus: x^perp / (2 pi |x|^2).
struct AnnulusXiField final : HoleField::Impl {
    Vec2 at(const Vec2& x) const override { return x.perp() * (kInvTwoPi / x.norm_sq()); }
};

/// xi_m = sum_k beta_k grad^perp w_k for the boundary-integral backend.
struct CombinationXiField final : HoleField::Impl {
    Vec2 at(const Vec2& x) const override {
        Vec2 v{0.0, 0.0};
        for (std::size_t k = 0; k < measures.size(); ++k) {
            const Vec2 g = measures[k].gradient(x);
            v += Vec2{-g.y, g.x} * beta[k];
        }
        return v;
    }
    std::vector<HarmonicEvaluator> measures;
    std::vector<double> beta;
};

}  // namespace

// ---------------------------------------------------------------------------
// Per-domain cache

namespace {

struct DomainHarmonics {
    std::unique_ptr<NystromSystem> nystrom;
    std::vector<HarmonicEvaluator> measures;
    std::vector<HoleField> fields;
};

std::vector<double> sample_component(const Domain& domain, int comp, const BoundaryFunction& g) {
    std::vector<double> out;
    for (const auto& node : domain.component_nodes(comp)) out.push_back(g(node.point));
    return out;
}

HarmonicEvaluator make_nystrom_evaluator(const Domain& domain, const NystromSystem& sys,
                                         const Eigen::VectorXd& g) {
    return HarmonicEvaluator(
        std::make_shared<NystromEvaluator>(domain, &sys, sys.solve(g)));
}

const DomainHarmonics& harmonics_for(const Domain& domain) {
    const Domain::Impl& impl = domain.impl();
    std::lock_guard<std::mutex> lock(impl.cache_mutex);
    if (impl.harmonic_cache)
        return *static_cast<const DomainHarmonics*>(impl.harmonic_cache.get());

    auto cache = std::make_shared<DomainHarmonics>();
    const int M = domain.hole_count();

    if (domain.backend() == DomainBackend::BoundaryIntegral)
        cache->nystrom = build_nystrom(domain);

    if (M > 0) {
        if (domain.backend() == DomainBackend::AnalyticAnnulus) {
            cache->measures.push_back(HarmonicEvaluator(std::make_shared<AnnulusMeasureEvaluator>(
                domain, domain.inner_radius(), domain.outer_radius())));
            auto xi = std::make_shared<AnnulusXiField>();
            xi->m = 1;
            xi->stream_constants = {0.0, kInvTwoPi *
                                             std::log(domain.inner_radius() / domain.outer_radius())};
            cache->fields.push_back(HoleField(std::move(xi)));
        } else {
            const NystromSystem& sys = *cache->nystrom;
            const int n_total = int(sys.nodes.size());
            std::vector<NystromSystem::Density> densities;
            for (int m = 1; m <= M; ++m) {
                Eigen::VectorXd g = Eigen::VectorXd::Zero(n_total);
                for (int j = sys.comp_begin[std::size_t(m)]; j < sys.comp_begin[std::size_t(m + 1)];
                     ++j)
                    g[j] = 1.0;
                densities.push_back(sys.solve(g));
                cache->measures.push_back(HarmonicEvaluator(std::make_shared<NystromEvaluator>(
                    domain, &sys, densities.back())));
            }
            // Period matrix P(l,k) = circulation of grad^perp w_k around hole l.
            // With the log-source completion this is -A_l of the solved density:
            // the double layers carry no net flux and each unit source at z_l
            // contributes -1 through any contour enclosing hole l.
            Eigen::MatrixXd period(M, M);
            for (int k = 0; k < M; ++k)
                for (int l = 0; l < M; ++l)
                    period(l, k) = -densities[std::size_t(k)].source_coeffs[std::size_t(l)];
            Eigen::PartialPivLU<Eigen::MatrixXd> plu(period);
            const double cond =
                period.cwiseAbs().colwise().sum().maxCoeff() * inverse_norm1_estimate(plu, M);
            if (!std::isfinite(cond) || cond > 1e12)
                throw solver_error("hole-field constant system is singular");
            for (int m = 0; m < M; ++m) {
                Eigen::VectorXd rhs = Eigen::VectorXd::Zero(M);
                rhs[m] = 1.0;
                const Eigen::VectorXd beta = plu.solve(rhs);
                auto xi = std::make_shared<CombinationXiField>();
                xi->m = m + 1;
                xi->measures = cache->measures;
                xi->beta.assign(beta.data(), beta.data() + M);
                xi->stream_constants.assign(std::size_t(M + 1), 0.0);
                for (int l = 0; l < M; ++l) xi->stream_constants[std::size_t(l + 1)] = beta[l];
                cache->fields.push_back(HoleField(std::move(xi)));
            }
        }
    }

    impl.harmonic_cache = cache;
    return *cache;
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface

HarmonicEvaluator solve_dirichlet(const Domain& domain, const BoundaryFunction& g) {
    switch (domain.backend()) {
        case DomainBackend::AnalyticDisk:
            return HarmonicEvaluator(
                std::make_shared<DiskFourierEvaluator>(domain, sample_component(domain, 0, g)));
        case DomainBackend::AnalyticAnnulus:
            return HarmonicEvaluator(std::make_shared<AnnulusFourierEvaluator>(
                domain, sample_component(domain, 0, g), sample_component(domain, 1, g)));
        case DomainBackend::BoundaryIntegral: {
            const NystromSystem& sys = *harmonics_for(domain).nystrom;
            Eigen::VectorXd rhs(long(sys.nodes.size()));
            for (std::size_t j = 0; j < sys.nodes.size(); ++j) rhs[long(j)] = g(sys.nodes[j].point);
            return make_nystrom_evaluator(domain, sys, rhs);
        }
    }
    throw std::logic_error("solve_dirichlet: unknown backend");
}

HarmonicEvaluator harmonic_measure(const Domain& domain, int m) {
    if (m < 1 || m > domain.hole_count())
        throw std::out_of_range("harmonic_measure: hole index out of range");
    return harmonics_for(domain).measures[std::size_t(m - 1)];
}

HoleField hole_field(const Domain& domain, int m) {
    if (m < 1 || m > domain.hole_count())
        throw std::out_of_range("hole_field: hole index out of range");
    return harmonics_for(domain).fields[std::size_t(m - 1)];
}

namespace {

HarmonicEvaluator extend_point_sources(const Domain& domain, const std::vector<double>& weights,
                                       const std::vector<Vec2>& points, bool require_clearance) {
    // theta only needs its vortices strictly inside; eta's particles must
    // additionally clear the quadrature resolution band (a violation there
    // signals the C5 boundary condition upstream).
    const std::vector<double> clearances =
        require_clearance && domain.backend() != DomainBackend::AnalyticDisk
            ? quadrature_clearances(domain)
            : std::vector<double>{};
    for (const Vec2& y : points) check_clearances(domain, clearances, y);

    if (points.empty())
        return HarmonicEvaluator(std::make_shared<ConstantEvaluator>(domain, 0.0));

    if (domain.backend() == DomainBackend::AnalyticDisk)
        return HarmonicEvaluator(std::make_shared<DiskImagesEvaluator>(domain, weights, points));

    const auto g = [&](const Vec2& x) {
        double v = 0.0;
        for (std::size_t j = 0; j < points.size(); ++j)
            v += weights[j] * newtonian_potential(x - points[j]);
        return v;
    };
    return solve_dirichlet(domain, g);
}

}  // namespace

HarmonicEvaluator eta_evaluator(const Domain& domain, const ParticleField& field) {
    std::vector<double> weights;
    std::vector<Vec2> points;
    weights.reserve(field.particles.size());
    points.reserve(field.particles.size());
    for (const Particle& p : field.particles) {
        weights.push_back(p.weight);
        points.push_back(p.pos);
    }
    return extend_point_sources(domain, weights, points, true);
}

HarmonicEvaluator theta_evaluator(const Domain& domain, const std::vector<double>& strengths,
                                  const std::vector<Vec2>& positions) {
    if (strengths.size() != positions.size())
        throw std::invalid_argument("theta_evaluator: strengths/positions size mismatch");
    return extend_point_sources(domain, strengths, positions, false);
}

}  // namespace vdyn
