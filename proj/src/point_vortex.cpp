#include "vortexdyn/point_vortex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vortexdyn/harmonic.hpp"
#include "vortexdyn/kernels.hpp"

namespace vdyn {

SeparationReport separation_monitor(const PointVortexState& state, const Domain& domain,
                                    double delta) {
    const std::size_t n = state.positions.size();
    double min_pair = std::numeric_limits<double>::infinity();
    double min_boundary = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& y = state.positions[i];
        min_boundary = std::min(min_boundary,
                                domain.contains(y) ? domain.boundary_distance(y) : 0.0);
        for (std::size_t j = i + 1; j < n; ++j)
            min_pair = std::min(min_pair, distance(y, state.positions[j]));
    }
    return SeparationReport::make(min_pair, min_boundary, delta);
}

std::vector<Vec2> kr_rhs(const PointVortexState& state, const Domain& domain) {
    const std::size_t n = state.positions.size();
    const HarmonicEvaluator theta =
        theta_evaluator(domain, state.strengths, state.positions);

    const int M = domain.hole_count();
    std::vector<double> coeff(std::size_t(M), 0.0);
    std::vector<HoleField> xi;
    for (int m = 1; m <= M; ++m) {
        const HarmonicEvaluator wm = harmonic_measure(domain, m);
        double c = state.circulations[std::size_t(m - 1)];
        for (std::size_t j = 0; j < n; ++j)
            c += state.strengths[j] * wm.value(state.positions[j]);
        coeff[std::size_t(m - 1)] = c;
        xi.push_back(hole_field(domain, m));
    }

    std::vector<Vec2> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 v{0.0, 0.0};
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            v += biot_savart_kernel(state.positions[i] - state.positions[j]) *
                 state.strengths[j];
        }
        v += theta.perp_gradient(state.positions[i]);
        for (int m = 0; m < M; ++m)
            v += xi[std::size_t(m)].at(state.positions[i]) * coeff[std::size_t(m)];
        rhs[i] = v;
    }
    return rhs;
}

namespace {

void check_stage(const PointVortexState& stage, const Domain& domain, double delta,
                 const PointVortexState& last_good) {
    const SeparationReport r = separation_monitor(stage, domain, delta);
    if (r.ok) return;
    const std::string condition = r.min_pair < r.threshold ? "pair" : "boundary";
    std::ostringstream msg;
    msg << "separation monitor violated (" << condition << "): min_pair " << r.min_pair
        << ", min_boundary " << r.min_boundary << ", threshold " << r.threshold;
    throw pv_separation_stop(msg.str(), r, condition, last_good);
}

PointVortexState displaced(const PointVortexState& base, const std::vector<Vec2>& dir,
                           double scale) {
    PointVortexState s = base;
    for (std::size_t i = 0; i < s.positions.size(); ++i) s.positions[i] += dir[i] * scale;
    return s;
}

}  // namespace

PointVortexState step(const PointVortexState& state, const Domain& domain, double dt,
                      double delta) {
    check_stage(state, domain, delta, state);
    const std::vector<Vec2> k1 = kr_rhs(state, domain);

    PointVortexState s2 = displaced(state, k1, 0.5 * dt);
    check_stage(s2, domain, delta, state);
    const std::vector<Vec2> k2 = kr_rhs(s2, domain);

    PointVortexState s3 = displaced(state, k2, 0.5 * dt);
    check_stage(s3, domain, delta, state);
    const std::vector<Vec2> k3 = kr_rhs(s3, domain);

    PointVortexState s4 = displaced(state, k3, dt);
    check_stage(s4, domain, delta, state);
    const std::vector<Vec2> k4 = kr_rhs(s4, domain);

    PointVortexState out = state;
    for (std::size_t i = 0; i < out.positions.size(); ++i)
        out.positions[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
    out.t = state.t + dt;
    check_stage(out, domain, delta, state);
    return out;
}

double hamiltonian(const PointVortexState& state, const Domain& domain) {
    if (domain.hole_count() > 0)
        throw std::logic_error(
            "hamiltonian: only simply connected domains (M = 0) are supported");
    const std::size_t n = state.positions.size();
    const auto& y = state.positions;
    const auto& a = state.strengths;

    if (domain.backend() == DomainBackend::AnalyticDisk) {
        // Unit-disk Green function via images:
        //   G_D(x, y) = G(x - y) + log(|y| |x - y*|) / 2 pi,  y* = y / |y|^2,
        // with diagonal regular part h_D(y) = G_D - G -> log(1 - |y|^2) / 2 pi.
        // This sign pairing is the one conserved by the dynamics.
        double H = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r2 = y[i].norm_sq();
            H += 0.5 * a[i] * a[i] * kInvTwoPi * std::log(1.0 - r2);
            for (std::size_t j = i + 1; j < n; ++j) {
                double g = newtonian_potential(y[i] - y[j]);
                const double rj2 = y[j].norm_sq();
                if (rj2 > 0.0) {
                    const Vec2 image = y[j] / rj2;
                    g += kInvTwoPi * std::log(std::sqrt(rj2) * distance(y[i], image));
                }
                H += a[i] * a[j] * g;
            }
        }
        return H;
    }

    // Boundary-integral backend: the harmonic extension of the source's
    // boundary trace gives the image part, one Dirichlet solve per vortex;
    // the diagonal regular part is its negated on-source value.
    double H = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const HarmonicEvaluator ext = theta_evaluator(domain, {1.0}, {y[j]});
        H -= 0.5 * a[j] * a[j] * ext.value(y[j]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            H += 0.5 * a[i] * a[j] * (newtonian_potential(y[i] - y[j]) - ext.value(y[i]));
        }
    }
    return H;
}

double suggested_dt(const PointVortexState& state, double delta) {
    double max_a = 0.0;
    for (double a : state.strengths) max_a = std::max(max_a, std::abs(a));
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < state.positions.size(); ++i)
        for (std::size_t j = i + 1; j < state.positions.size(); ++j)
            min_pair = std::min(min_pair, distance(state.positions[i], state.positions[j]));
    double dt = delta * delta;
    if (std::isfinite(min_pair) && max_a > 0.0)
        dt = std::min(dt, 0.1 * min_pair * min_pair / max_a);
    return 0.1 * dt;
}

}  // namespace vdyn
