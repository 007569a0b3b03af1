#include "vortexdyn/transport.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexdyn/errors.hpp"

namespace vdyn {

namespace {

struct BasisArc {
    int i{0};  // source index
    int j{0};  // sink index
    double flow{0.0};
};

// Node ids: sources are 0..m-1, sinks m..m+n-1.
struct Tree {
    int m{0}, n{0};
    std::vector<std::vector<int>> adjacency;  // node -> basis arc ids

    void rebuild(const std::vector<BasisArc>& basis) {
        adjacency.assign(std::size_t(m + n), {});
        for (std::size_t a = 0; a < basis.size(); ++a) {
            adjacency[std::size_t(basis[a].i)].push_back(int(a));
            adjacency[std::size_t(m + basis[a].j)].push_back(int(a));
        }
    }
};

int other_node(const BasisArc& arc, int node, int m) {
    return node == arc.i ? m + arc.j : arc.i;
}

}  // namespace

TransportPlan solve_transport(const std::vector<Vec2>& source_points,
                              const std::vector<double>& supply,
                              const std::vector<Vec2>& sink_points,
                              const std::vector<double>& demand) {
    const int m = int(source_points.size());
    const int n = int(sink_points.size());
    if (m == 0 || n == 0) throw std::invalid_argument("solve_transport: empty instance");
    if (supply.size() != source_points.size() || demand.size() != sink_points.size())
        throw std::invalid_argument("solve_transport: size mismatch");

    double total_s = 0.0, total_d = 0.0;
    for (double s : supply) {
        if (s <= 0.0) throw std::invalid_argument("solve_transport: supplies must be positive");
        total_s += s;
    }
    for (double d : demand) {
        if (d <= 0.0) throw std::invalid_argument("solve_transport: demands must be positive");
        total_d += d;
    }
    if (std::abs(total_s - total_d) > 1e-9 * std::max(1.0, std::max(total_s, total_d)))
        throw std::invalid_argument("solve_transport: unbalanced instance (" +
                                    std::to_string(total_s) + " vs " + std::to_string(total_d) +
                                    ")");

    const auto cost = [&](int i, int j) {
        return distance(source_points[std::size_t(i)], sink_points[std::size_t(j)]);
    };

    // Perturbed masses give a nondegenerate northwest-corner start; the
    // perturbation only steers pivoting, the final flows use exact masses.
    const double rho = 1e-13 * total_s / (m + 1);
    std::vector<double> s_pert(supply), d_pert(demand);
    for (int i = 0; i < m; ++i) s_pert[std::size_t(i)] += rho * (i + 1);
    d_pert[std::size_t(n - 1)] += rho * double(m) * double(m + 1) / 2.0;

    std::vector<BasisArc> basis;
    basis.reserve(std::size_t(m + n - 1));
    {
        int i = 0, j = 0;
        double rs = s_pert[0], rd = d_pert[0];
        for (;;) {
            basis.push_back({i, j, std::min(rs, rd)});
            const bool last_i = (i == m - 1), last_j = (j == n - 1);
            if (last_i && last_j) break;
            if (!last_i && (rs < rd || last_j)) {
                rd -= rs;
                ++i;
                rs = s_pert[std::size_t(i)];
            } else {
                rs -= rd;
                ++j;
                rd = d_pert[std::size_t(j)];
            }
        }
    }

    Tree tree;
    tree.m = m;
    tree.n = n;
    std::vector<double> u(static_cast<std::size_t>(m)), v(static_cast<std::size_t>(n));
    std::vector<int> stack, parent_node(static_cast<std::size_t>(m + n)), parent_arc(static_cast<std::size_t>(m + n));
    std::vector<char> seen(static_cast<std::size_t>(m + n));

    const long max_iters = 200L * (m + n) + 1000;
    double max_cost = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) max_cost = std::max(max_cost, cost(i, j));
    const double opt_tol = 1e-12 * std::max(1.0, max_cost);

    for (long iter = 0;; ++iter) {
        if (iter > max_iters)
            throw solver_error("solve_transport: pivot limit exceeded (" +
                               std::to_string(max_iters) + ")");
        tree.rebuild(basis);

        // Duals from the spanning tree: u_i + v_j = c_ij on basic arcs.
        std::fill(seen.begin(), seen.end(), 0);
        u[0] = 0.0;
        seen[0] = 1;
        stack.assign(1, 0);
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            for (int a : tree.adjacency[std::size_t(node)]) {
                const BasisArc& arc = basis[std::size_t(a)];
                const int next = other_node(arc, node, m);
                if (seen[std::size_t(next)]) continue;
                seen[std::size_t(next)] = 1;
                if (next >= m)
                    v[std::size_t(next - m)] = cost(arc.i, arc.j) - u[std::size_t(arc.i)];
                else
                    u[std::size_t(next)] = cost(arc.i, arc.j) - v[std::size_t(arc.j)];
                stack.push_back(next);
            }
        }

        // Entering arc: most negative reduced cost.
        int enter_i = -1, enter_j = -1;
        double best_rc = -opt_tol;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const double rc = cost(i, j) - u[std::size_t(i)] - v[std::size_t(j)];
                if (rc < best_rc) {
                    best_rc = rc;
                    enter_i = i;
                    enter_j = j;
                }
            }
        }
        if (enter_i < 0) break;  // optimal

        // Tree path from the entering source to the entering sink.
        std::fill(seen.begin(), seen.end(), 0);
        seen[std::size_t(enter_i)] = 1;
        parent_node[std::size_t(enter_i)] = -1;
        stack.assign(1, enter_i);
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            if (node == m + enter_j) break;
            for (int a : tree.adjacency[std::size_t(node)]) {
                const int next = other_node(basis[std::size_t(a)], node, m);
                if (seen[std::size_t(next)]) continue;
                seen[std::size_t(next)] = 1;
                parent_node[std::size_t(next)] = node;
                parent_arc[std::size_t(next)] = a;
                stack.push_back(next);
            }
        }

        // Walk the cycle: the entering arc takes +theta, path arcs alternate
        // starting with -theta at the sink end.
        double theta = std::numeric_limits<double>::infinity();
        int leaving = -1;
        {
            int node = m + enter_j;
            int sign = -1;
            while (parent_node[std::size_t(node)] >= 0) {
                const int a = parent_arc[std::size_t(node)];
                if (sign < 0 && basis[std::size_t(a)].flow < theta) {
                    theta = basis[std::size_t(a)].flow;
                    leaving = a;
                }
                node = parent_node[std::size_t(node)];
                sign = -sign;
            }
        }
        if (leaving < 0) throw solver_error("solve_transport: degenerate cycle");
        {
            int node = m + enter_j;
            int sign = -1;
            while (parent_node[std::size_t(node)] >= 0) {
                const int a = parent_arc[std::size_t(node)];
                basis[std::size_t(a)].flow += sign * theta;
                node = parent_node[std::size_t(node)];
                sign = -sign;
            }
        }
        basis[std::size_t(leaving)] = {enter_i, enter_j, theta};
    }

    // Re-flow the optimal tree with the exact masses by leaf elimination.
    tree.rebuild(basis);
    std::vector<double> residual(static_cast<std::size_t>(m + n));
    for (int i = 0; i < m; ++i) residual[std::size_t(i)] = supply[std::size_t(i)];
    for (int j = 0; j < n; ++j) residual[std::size_t(m + j)] = demand[std::size_t(j)];
    std::vector<int> degree(std::size_t(m + n), 0);
    std::vector<std::vector<int>>& adj = tree.adjacency;
    for (int node = 0; node < m + n; ++node) degree[std::size_t(node)] = int(adj[std::size_t(node)].size());
    std::vector<char> arc_done(basis.size(), 0), node_done(std::size_t(m + n), 0);
    std::vector<double> exact_flow(basis.size(), 0.0);
    stack.clear();
    for (int node = 0; node < m + n; ++node)
        if (degree[std::size_t(node)] == 1) stack.push_back(node);
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        if (node_done[std::size_t(node)]) continue;
        int arc_id = -1;
        for (int a : adj[std::size_t(node)])
            if (!arc_done[std::size_t(a)]) arc_id = a;
        if (arc_id < 0) continue;  // root of the elimination order
        node_done[std::size_t(node)] = 1;
        arc_done[std::size_t(arc_id)] = 1;
        exact_flow[std::size_t(arc_id)] = residual[std::size_t(node)];
        const int next = other_node(basis[std::size_t(arc_id)], node, m);
        residual[std::size_t(next)] -= residual[std::size_t(node)];
        residual[std::size_t(node)] = 0.0;
        if (--degree[std::size_t(next)] == 1 && !node_done[std::size_t(next)])
            stack.push_back(next);
    }

    TransportPlan plan;
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const double f = std::max(0.0, exact_flow[a]);
        if (f <= 0.0) continue;
        plan.flows.push_back({basis[a].i, basis[a].j, f});
        plan.cost += f * cost(basis[a].i, basis[a].j);
    }
    return plan;
}

}  // namespace vdyn
