#pragma once

#include <cmath>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "euler_lagrange.hpp"
#include "grid_function.hpp"
#include "lagrangian.hpp"
#include "memory_window.hpp"
#include "operators.hpp"

namespace fracvar {

/**
 * A fractional variational problem for the direct method: minimize the
 * action integral of `lagrangian` over [window.A, window.B], the p slot
 * filled by the selected fractional derivative computed on [a,b].
 * The left boundary value is always pinned; the right one optionally.
 */
struct ProblemSpec {
    Lagrangian lagrangian;
    MemoryWindow window;
    FractionalOrder order;
    DerivativeKind derivative_kind = DerivativeKind::riemann_liouville;
    double boundary_left = 0.0;
    std::optional<double> boundary_right;
    std::size_t grid_n = 256;
};

struct SolveOptions {
    double gtol = 0.0;          // absolute; <= 0 selects 1e-8 (1 + |objective_0|)
    int max_iterations = 2000;
    int memory = 10;            // quasi-Newton history length
    double armijo_c = 1e-4;
};

struct SolveResult {
    GridFunction u;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
    ResidualReport el_check;
};

namespace detail {

// Dense weight matrix of the chosen left fractional derivative on the
// grid, row-major (n+1)x(n+1).  Built from the L1 construction: the
// kernel is integrated exactly against the derivative of the
// piecewise-linear interpolant, which keeps the left operators
// lower-triangular and the direct-method systems stable.  Row 0 of the
// one-sided operators is structurally empty (the derivative at the memory
// start is not resolvable from the grid) and is left zero.
inline std::vector<double> l1_caputo_matrix(double alpha, double h, std::size_t n) {
    std::vector<double> M((n + 1) * (n + 1), 0.0);
    const double c = std::pow(h, -alpha) / gamma_fn(2.0 - alpha);
    std::vector<double> pw(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
        pw[m] = std::pow(static_cast<double>(m), 1.0 - alpha);
    for (std::size_t j = 1; j <= n; ++j) {
        double* row = M.data() + j * (n + 1);
        for (std::size_t k = 0; k < j; ++k) {
            const double d = c * (pw[j - k] - pw[j - k - 1]);  // weight of u_{k+1}-u_k
            row[k + 1] += d;
            row[k] -= d;
        }
    }
    return M;
}

inline void reflect_matrix(std::vector<double>& M, std::size_t n) {
    std::vector<double> R((n + 1) * (n + 1));
    for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t k = 0; k <= n; ++k)
            R[j * (n + 1) + k] = M[(n - j) * (n + 1) + (n - k)];
    M.swap(R);
}

} // namespace detail

/// Weight matrix u -> p of the problem's fractional derivative
/// (precomputed once per (alpha, grid) pair; lower-triangular for the
/// left operators, so its transpose action realizes the adjoint).
inline std::vector<double> derivative_weight_matrix(FractionalOrder order, DerivativeKind kind,
                                                    double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    if (order.alpha == 0.0) {  // identity
        std::vector<double> M((n + 1) * (n + 1), 0.0);
        for (std::size_t j = 0; j <= n; ++j) M[j * (n + 1) + j] = 1.0;
        return M;
    }
    auto M = detail::l1_caputo_matrix(order.alpha, h, n);
    switch (kind) {
        case DerivativeKind::caputo: return M;
        case DerivativeKind::riemann_liouville: {
            // RL = Caputo + u(a) (t-a)^{-alpha}/Gamma(1-alpha); exact for the
            // piecewise-linear interpolant.  Row 0 stays zero (singular node).
            const double ig = 1.0 / gamma_fn(1.0 - order.alpha);
            for (std::size_t j = 1; j <= n; ++j)
                M[j * (n + 1)] += ig * std::pow(static_cast<double>(j) * h, -order.alpha);
            return M;
        }
        case DerivativeKind::riesz_caputo: {
            auto R = M;
            detail::reflect_matrix(R, n);
            for (std::size_t i = 0; i < M.size(); ++i) M[i] = 0.5 * (M[i] - R[i]);
            return M;
        }
    }
    throw std::logic_error("derivative_weight_matrix");
}

namespace detail {

// Trapezoid weights over [A,B] embedded in the full grid, with the
// singular-node masking the fractional integrand requires:
//  - when A coincides with the memory start a, the t = A node cannot carry
//    a meaningful derivative value (one-sided operators are empty there);
//    the first panel is integrated with the right-endpoint value instead;
//  - when the Lagrangian declares an integrand singularity at b and B = b,
//    the t = B node is treated symmetrically.
// The weights still sum to B - A exactly.
inline std::vector<double> action_weights(const ProblemSpec& spec) {
    const std::size_t n = spec.grid_n;
    const double h = (spec.window.b - spec.window.a) / static_cast<double>(n);
    GridFunction shape(spec.window.a, spec.window.b, n);
    const auto [iA, iB] = spec.window.locate(shape);
    std::vector<double> w(n + 1, 0.0);
    for (std::size_t k = iA; k <= iB; ++k) w[k] = h;
    w[iA] = 0.5 * h;
    w[iB] = 0.5 * h;
    if (!spec.window.has_memory_segment()) {
        w[iA] = 0.0;
        w[iA + 1] += 0.5 * h;
    }
    if (spec.lagrangian.du_singular_b && spec.window.B == spec.window.b) {
        w[iB] = 0.0;
        w[iB - 1] += 0.5 * h;
    }
    return w;
}

inline std::vector<std::size_t> free_indices(const ProblemSpec& spec) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 1; k < spec.grid_n; ++k) idx.push_back(k);
    if (!spec.boundary_right) idx.push_back(spec.grid_n);
    return idx;
}

inline void check_boundary(const ProblemSpec& spec, const GridFunction& u) {
    if (u.n() != spec.grid_n || u.a != spec.window.a || u.b != spec.window.b)
        throw std::invalid_argument("solver: grid mismatch with problem spec");
    const double tol = 1e-12 * std::max(1.0, std::abs(spec.boundary_left));
    if (std::abs(u.values.front() - spec.boundary_left) > tol)
        throw std::invalid_argument("solver: left boundary value mismatch");
    if (spec.boundary_right) {
        const double tolr = 1e-12 * std::max(1.0, std::abs(*spec.boundary_right));
        if (std::abs(u.values.back() - *spec.boundary_right) > tolr)
            throw std::invalid_argument("solver: right boundary value mismatch");
    }
}

struct FunctionalWorkspace {
    std::vector<double> M;  // derivative weight matrix
    std::vector<double> w;  // action quadrature weights

    explicit FunctionalWorkspace(const ProblemSpec& spec)
        : M(derivative_weight_matrix(spec.order, spec.derivative_kind, spec.window.a,
                                     spec.window.b, spec.grid_n)),
          w(action_weights(spec)) {}

    // objective, and optionally its exact gradient:
    //   dJ/du_k = w_k d_u(k) + [M^T (w .* d_p)]_k
    double evaluate(const ProblemSpec& spec, const std::vector<double>& u,
                    std::vector<double>* grad) const {
        const std::size_t n = spec.grid_n;
        std::vector<double> p(n + 1, 0.0);
        for (std::size_t j = 0; j <= n; ++j) {
            const double* row = M.data() + j * (n + 1);
            double acc = 0.0;
            for (std::size_t k = 0; k <= n; ++k) acc += row[k] * u[k];
            p[j] = acc;
        }
        const double h = (spec.window.b - spec.window.a) / static_cast<double>(n);
        double J = 0.0;
        std::vector<double> wdp;
        if (grad) {
            grad->assign(n + 1, 0.0);
            wdp.assign(n + 1, 0.0);
        }
        for (std::size_t k = 0; k <= n; ++k) {
            if (w[k] == 0.0) continue;
            const double t = spec.window.a + h * static_cast<double>(k);
            const double Lv = spec.lagrangian.value(t, u[k], p[k]);
            if (!std::isfinite(Lv))
                throw std::runtime_error("solver: Lagrangian produced a non-finite value at t = " +
                                         std::to_string(t));
            J += w[k] * Lv;
            if (grad) {
                (*grad)[k] += w[k] * spec.lagrangian.d_u(t, u[k], p[k]);
                wdp[k] = w[k] * spec.lagrangian.d_p(t, u[k], p[k]);
            }
        }
        if (grad) {
            for (std::size_t j = 0; j <= n; ++j) {
                if (wdp[j] == 0.0) continue;
                const double* row = M.data() + j * (n + 1);
                for (std::size_t k = 0; k <= n; ++k) (*grad)[k] += wdp[j] * row[k];
            }
        }
        return J;
    }
};

} // namespace detail

/// Composite trapezoid rule over [A,B] of L(t, u, p), p the problem's
/// fractional derivative of u computed on [a,b] (see action_weights for
/// the singular-node treatment).
inline double discretize_functional(const ProblemSpec& spec, const GridFunction& u) {
    detail::check_boundary(spec, u);
    detail::FunctionalWorkspace ws(spec);
    return ws.evaluate(spec, u.values, nullptr);
}

/// Cross-check of the direct-method output against the Euler-Lagrange
/// residuals, with p taken consistently as the problem's derivative kind.
inline ResidualReport verify_extremal(const ProblemSpec& spec, const GridFunction& u) {
    if (spec.window.has_memory_segment())
        return residual_generalized(spec.lagrangian, u, spec.order, spec.window,
                                    spec.derivative_kind)
            .action;
    return residual_corrected(spec.lagrangian, u, spec.order, spec.derivative_kind);
}

/**
 * Direct method: limited-memory quasi-Newton minimization (memory 10,
 * Armijo backtracking) of the discretized functional over the free grid
 * values (interior nodes, plus the right endpoint when it is not pinned).
 *
 * Non-convergence is reported through the `converged` flag, never
 * silently; a NaN from the Lagrangian aborts with a diagnostic.
 */
inline SolveResult solve_direct(const ProblemSpec& spec, const GridFunction& initial,
                                const SolveOptions& options = {}) {
    detail::check_boundary(spec, initial);
    detail::FunctionalWorkspace ws(spec);
    const auto free = detail::free_indices(spec);
    const std::size_t m = free.size();

    std::vector<double> u = initial.values;
    std::vector<double> grad_full;
    double J = ws.evaluate(spec, u, &grad_full);
    const double gtol =
        options.gtol > 0.0 ? options.gtol : 1e-8 * (1.0 + std::abs(J));

    auto pack = [&](const std::vector<double>& full, std::vector<double>& v) {
        v.resize(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = full[free[i]];
    };
    std::vector<double> g, gprev, x, xprev;
    pack(grad_full, g);
    pack(u, x);

    auto sup_norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double q : v) s = std::max(s, std::abs(q));
        return s;
    };

    std::deque<std::vector<double>> s_hist, y_hist;
    std::deque<double> rho_hist;

    int iter = 0;
    bool converged = sup_norm(g) <= gtol;
    while (!converged && iter < options.max_iterations) {
        // two-loop recursion
        std::vector<double> q = g;
        std::vector<double> alpha_coef(s_hist.size());
        for (std::size_t i = s_hist.size(); i-- > 0;) {
            double sq = 0.0;
            for (std::size_t k = 0; k < m; ++k) sq += s_hist[i][k] * q[k];
            alpha_coef[i] = rho_hist[i] * sq;
            for (std::size_t k = 0; k < m; ++k) q[k] -= alpha_coef[i] * y_hist[i][k];
        }
        double gamma = 1.0;
        if (!s_hist.empty()) {
            double sy = 0.0, yy = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                sy += s_hist.back()[k] * y_hist.back()[k];
                yy += y_hist.back()[k] * y_hist.back()[k];
            }
            if (yy > 0.0) gamma = sy / yy;
        }
        for (double& q_k : q) q_k *= gamma;
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            double yq = 0.0;
            for (std::size_t k = 0; k < m; ++k) yq += y_hist[i][k] * q[k];
            const double beta = rho_hist[i] * yq;
            for (std::size_t k = 0; k < m; ++k) q[k] += (alpha_coef[i] - beta) * s_hist[i][k];
        }
        std::vector<double> dir(m);
        for (std::size_t k = 0; k < m; ++k) dir[k] = -q[k];
        double gd = 0.0;
        for (std::size_t k = 0; k < m; ++k) gd += g[k] * dir[k];
        if (gd >= 0.0) {  // not a descent direction; restart from steepest descent
            for (std::size_t k = 0; k < m; ++k) dir[k] = -g[k];
            gd = 0.0;
            for (std::size_t k = 0; k < m; ++k) gd += g[k] * dir[k];
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        // Armijo backtracking
        double step = 1.0;
        double J_new = J;
        std::vector<double> u_trial = u;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t k = 0; k < m; ++k) u_trial[free[k]] = x[k] + step * dir[k];
            J_new = ws.evaluate(spec, u_trial, nullptr);
            if (J_new <= J + options.armijo_c * step * gd) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // line search failed; report non-convergence

        xprev = x;
        gprev = g;
        u = u_trial;
        J = ws.evaluate(spec, u, &grad_full);
        pack(u, x);
        pack(grad_full, g);
        ++iter;

        std::vector<double> s_vec(m), y_vec(m);
        double sy = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            s_vec[k] = x[k] - xprev[k];
            y_vec[k] = g[k] - gprev[k];
            sy += s_vec[k] * y_vec[k];
        }
        if (sy > 1e-14) {
            s_hist.push_back(std::move(s_vec));
            y_hist.push_back(std::move(y_vec));
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > options.memory) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }
        converged = sup_norm(g) <= gtol;
    }

    SolveResult res;
    res.u = GridFunction(spec.window.a, spec.window.b, spec.grid_n);
    res.u.values = u;
    res.objective = ws.evaluate(spec, u, nullptr);  // recomputed, not cached
    res.iterations = iter;
    res.converged = converged;
    res.el_check = verify_extremal(spec, res.u);
    return res;
}

/// Default initial guess: linear interpolation of the boundary data,
/// constant extension when the right end is free.
inline GridFunction default_initial_guess(const ProblemSpec& spec) {
    GridFunction u(spec.window.a, spec.window.b, spec.grid_n);
    const double left = spec.boundary_left;
    const double right = spec.boundary_right.value_or(left);
    for (std::size_t k = 0; k <= spec.grid_n; ++k) {
        const double s = static_cast<double>(k) / static_cast<double>(spec.grid_n);
        u.values[k] = left + (right - left) * s;
    }
    return u;
}

} // namespace fracvar
