#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "grid_function.hpp"
#include "special_functions.hpp"

namespace fracvar {

// Fractional order restricted to the interval handled here: 0 <= alpha < 1.
struct FractionalOrder {
    double alpha;
    explicit FractionalOrder(double a) : alpha(a) {
        if (!(a >= 0.0) || !(a < 1.0))
            throw std::invalid_argument("FractionalOrder: requires 0 <= alpha < 1");
    }
};

enum class Side { left, right };

namespace detail {

// Weights of the product-integration (product-trapezoidal) rule for the
// left fractional integral of order beta: the (t_j - theta)^{beta-1}
// kernel is integrated exactly against the piecewise-linear interpolant
// of u.  Row j:  I[j] = h^beta / Gamma(beta+2) * sum_k w_{j,k} u_k.
//
//   w_{j,j} = 1
//   w_{j,0} = (j-1)^{beta+1} - j^{beta+1} + (beta+1) j^beta
//   w_{j,k} = (j-k+1)^{beta+1} - 2 (j-k)^{beta+1} + (j-k-1)^{beta+1}
//
// The rule is exact for piecewise-linear u, second order for smooth u.
inline std::vector<double> frac_integral_apply(const std::vector<double>& u,
                                               double h, double beta) {
    const std::size_t n = u.size() - 1;
    std::vector<double> pw(n + 2);  // pw[m] = m^{beta+1}
    for (std::size_t m = 0; m <= n + 1; ++m)
        pw[m] = std::pow(static_cast<double>(m), beta + 1.0);

    const double scale = std::pow(h, beta) / gamma_fn(beta + 2.0);
    std::vector<double> out(n + 1, 0.0);
    for (std::size_t j = 1; j <= n; ++j) {
        const double jd = static_cast<double>(j);
        double acc = u[j] + u[0] * (pw[j - 1] - pw[j] + (beta + 1.0) * std::pow(jd, beta));
        for (std::size_t k = 1; k < j; ++k) {
            const std::size_t d = j - k;
            acc += u[k] * (pw[d + 1] - 2.0 * pw[d] + pw[d - 1]);
        }
        out[j] = scale * acc;
    }
    return out;
}

// Second-order first derivative: centered in the interior, one-sided
// three-point stencils at the endpoints.
inline std::vector<double> stencil_derivative(const std::vector<double>& v, double h) {
    const std::size_t n = v.size() - 1;
    std::vector<double> d(n + 1);
    d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t k = 1; k < n; ++k) d[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
    d[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
    return d;
}

} // namespace detail

/**
 * Riemann-Liouville fractional integral I^alpha u of order alpha in (0,1),
 * left or right, on the same grid.  Product-integration quadrature treats
 * the kernel singularity exactly on each subinterval.
 *
 * alpha = 0 is rejected: the order-0 integral is the identity and callers
 * should use u directly.
 */
inline GridFunction frac_integral(const GridFunction& u, FractionalOrder order, Side side) {
    if (order.alpha == 0.0)
        throw std::invalid_argument("frac_integral: order 0 is the identity; use u directly");
    if (!u.all_finite()) throw std::invalid_argument("frac_integral: non-finite input");
    if (side == Side::right) return reversed(frac_integral(reversed(u), order, Side::left));
    GridFunction out(u.a, u.b, u.n());
    out.values = detail::frac_integral_apply(u.values, u.step(), order.alpha);
    return out;
}

/**
 * Riemann-Liouville fractional derivative of order alpha in [0,1):
 * d/dt of the (1-alpha) fractional integral (right side uses -d/dt via
 * reflection).  alpha = 0 returns u unchanged.
 *
 * Where the kernel makes the true derivative unbounded (t = a on the left
 * with u(a) != 0) the endpoint value is reported as computed; callers
 * mask endpoints.  The output carries the matching singularity tag.
 */
inline GridFunction rl_derivative(const GridFunction& u, FractionalOrder order, Side side) {
    if (order.alpha == 0.0) return u;
    if (!u.all_finite()) throw std::invalid_argument("rl_derivative: non-finite input");
    if (side == Side::right) return reversed(rl_derivative(reversed(u), order, Side::left));
    GridFunction out(u.a, u.b, u.n());
    auto v = detail::frac_integral_apply(u.values, u.step(), 1.0 - order.alpha);
    out.values = detail::stencil_derivative(v, u.step());
    out.singular_a = order.alpha;
    return out;
}

/**
 * Caputo fractional derivative of order alpha in [0,1): differentiates u
 * first (same stencils), then applies the (1-alpha) product-integration
 * quadrature.  The right version carries the leading minus sign, which the
 * reflection construction supplies.  alpha = 0 returns u.
 */
inline GridFunction caputo_derivative(const GridFunction& u, FractionalOrder order, Side side) {
    if (order.alpha == 0.0) return u;
    if (!u.all_finite()) throw std::invalid_argument("caputo_derivative: non-finite input");
    if (side == Side::right) return reversed(caputo_derivative(reversed(u), order, Side::left));
    GridFunction out(u.a, u.b, u.n());
    auto ud = detail::stencil_derivative(u.values, u.step());
    out.values = detail::frac_integral_apply(ud, u.step(), 1.0 - order.alpha);
    return out;
}

/// Riesz-Caputo (symmetrized Caputo) derivative: (left - right)/2.
/// alpha = 0 is defined as the identity directly.
inline GridFunction riesz_caputo_derivative(const GridFunction& u, FractionalOrder order) {
    if (order.alpha == 0.0) return u;
    GridFunction l = caputo_derivative(u, order, Side::left);
    GridFunction r = caputo_derivative(u, order, Side::right);
    GridFunction out(u.a, u.b, u.n());
    for (std::size_t k = 0; k <= u.n(); ++k)
        out.values[k] = 0.5 * (l.values[k] - r.values[k]);
    return out;
}

/**
 * The closed-form gap between the Riemann-Liouville and Caputo
 * derivatives:
 *
 *   left:   u(a) / (Gamma(1-alpha) (t-a)^alpha)
 *   right:  u(b) / (Gamma(1-alpha) (b-t)^alpha)
 *
 * The grid entry at the singular endpoint is set to the value at the
 * adjacent evaluable node (documented convention).
 */
inline GridFunction rl_caputo_gap(const GridFunction& u, FractionalOrder order, Side side) {
    if (!(order.alpha > 0.0))
        throw std::invalid_argument("rl_caputo_gap: requires alpha > 0");
    const double inv_gamma = 1.0 / gamma_fn(1.0 - order.alpha);
    const std::size_t n = u.n();
    GridFunction out(u.a, u.b, n);
    if (side == Side::left) {
        const double ua = u.values.front();
        for (std::size_t k = 1; k <= n; ++k)
            out.values[k] = ua * inv_gamma * std::pow(out.t(k) - u.a, -order.alpha);
        out.values[0] = out.values[1];
        out.singular_a = order.alpha;
    } else {
        const double ub = u.values.back();
        for (std::size_t k = 0; k < n; ++k)
            out.values[k] = ub * inv_gamma * std::pow(u.b - out.t(k), -order.alpha);
        out.values[n] = out.values[n - 1];
        out.singular_b = order.alpha;
    }
    return out;
}

} // namespace fracvar
