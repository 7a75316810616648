#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "expansion.hpp"
#include "grid_function.hpp"
#include "lagrangian.hpp"
#include "memory_window.hpp"
#include "operators.hpp"
#include "smooth_model.hpp"

namespace fracvar {

/// Per-grid-point residual of one Euler-Lagrange formulation plus its
/// interior sup-norm (masked bands excluded).
struct ResidualReport {
    std::string formulation;
    GridFunction residual;
    double interior_sup = 0.0;
    double masked_fraction = 0.0;
};

namespace detail {

inline ResidualReport make_report(std::string formulation, GridFunction r,
                                  double mask_fraction) {
    ResidualReport rep;
    rep.formulation = std::move(formulation);
    rep.interior_sup = r.interior_sup(mask_fraction);
    auto [lo, hi] = r.unmasked_range(mask_fraction);
    rep.masked_fraction =
        1.0 - static_cast<double>(hi - lo + 1) / static_cast<double>(r.n() + 1);
    rep.residual = std::move(r);
    return rep;
}

inline GridFunction derivative_of_kind(const GridFunction& u, FractionalOrder order,
                                       DerivativeKind kind) {
    switch (kind) {
        case DerivativeKind::riemann_liouville: return rl_derivative(u, order, Side::left);
        case DerivativeKind::caputo: return caputo_derivative(u, order, Side::left);
        case DerivativeKind::riesz_caputo: return riesz_caputo_derivative(u, order);
    }
    throw std::logic_error("derivative_of_kind");
}

// d_p along the candidate: g(t) = dL/dp (t, u(t), p(t)).
inline GridFunction composite_dp(const Lagrangian& L, const GridFunction& u,
                                 const GridFunction& p) {
    GridFunction g(u.a, u.b, u.n());
    for (std::size_t k = 0; k <= u.n(); ++k)
        g.values[k] = L.d_p(u.t(k), u.values[k], p.values[k]);
    return g;
}

} // namespace detail

/**
 * Residual of the Euler-Lagrange equation in Riemann-Liouville form,
 * classical window (a = A, B = b):
 *
 *   dL/du + D_right^alpha ( dL/dp )                        evaluated at (u, p)
 *
 * with p the left derivative of the given kind (RL unless the problem is
 * posed with a Caputo or Riesz-Caputo derivative).
 */
inline ResidualReport residual_rl(const Lagrangian& L, const GridFunction& u,
                                  FractionalOrder order,
                                  DerivativeKind kind = DerivativeKind::riemann_liouville,
                                  double mask_fraction = 0.05) {
    const GridFunction p = detail::derivative_of_kind(u, order, kind);
    GridFunction g = detail::composite_dp(L, u, p);
    GridFunction rd = rl_derivative(g, order, Side::right);
    GridFunction r(u.a, u.b, u.n());
    for (std::size_t k = 0; k <= u.n(); ++k)
        r.values[k] = L.d_u(u.t(k), u.values[k], p.values[k]) + rd.values[k];
    r.singular_b = order.alpha;
    return detail::make_report("rl", std::move(r), mask_fraction);
}

/**
 * Residual of the corrected Euler-Lagrange equation (classical window):
 *
 *   dL/du + cD_right^alpha ( dL/dp ) + dL/dp|_{t=b} (b-t)^{-alpha}/Gamma(1-alpha)
 *
 * The boundary term is singular at t = b; that node is inside the masked
 * band and reported as computed.
 */
inline ResidualReport residual_corrected(const Lagrangian& L, const GridFunction& u,
                                         FractionalOrder order,
                                         DerivativeKind kind = DerivativeKind::riemann_liouville,
                                         double mask_fraction = 0.05) {
    const GridFunction p = detail::derivative_of_kind(u, order, kind);
    GridFunction g = detail::composite_dp(L, u, p);
    GridFunction cd = caputo_derivative(g, order, Side::right);
    const double gb = g.values.back();
    const double inv_gamma = 1.0 / gamma_fn(1.0 - order.alpha);
    GridFunction r(u.a, u.b, u.n());
    for (std::size_t k = 0; k <= u.n(); ++k) {
        const double bterm =
            (gb == 0.0) ? 0.0 : gb * inv_gamma * std::pow(u.b - u.t(k), -order.alpha);
        r.values[k] = L.d_u(u.t(k), u.values[k], p.values[k]) + cd.values[k] + bterm;
    }
    if (gb != 0.0 || L.du_singular_b) r.singular_b = order.alpha;
    return detail::make_report("corrected", std::move(r), mask_fraction);
}

struct GeneralizedResiduals {
    ResidualReport action;                 // (A,B) equation
    std::optional<ResidualReport> memory;  // (a,A) equation; absent when a = A
};

/**
 * Residuals of the generalized Euler-Lagrange equations for the memory
 * window a <= A < B <= b.  The fractional derivative inside L always
 * starts at a; the action equation lives on (A,B), the memory equation
 *
 *   D_B^alpha (dL/dp) - D_A^alpha (dL/dp)
 *
 * on (a,A) and is reported only when a < A.
 */
inline GeneralizedResiduals residual_generalized(const Lagrangian& L, const GridFunction& u,
                                                 FractionalOrder order, const MemoryWindow& w,
                                                 DerivativeKind kind = DerivativeKind::riemann_liouville,
                                                 double mask_fraction = 0.05) {
    const auto [iA, iB] = w.locate(u);
    if (iB - iA < 4)
        throw std::invalid_argument("residual_generalized: action window too few nodes");
    const GridFunction p = detail::derivative_of_kind(u, order, kind);
    GridFunction g = detail::composite_dp(L, u, p);

    // action equation on [A,B]
    GridFunction gsub(w.A, w.B, iB - iA);
    std::copy(g.values.begin() + static_cast<std::ptrdiff_t>(iA),
              g.values.begin() + static_cast<std::ptrdiff_t>(iB) + 1, gsub.values.begin());
    GridFunction cd = caputo_derivative(gsub, order, Side::right);
    const double gB = gsub.values.back();
    const double inv_gamma = 1.0 / gamma_fn(1.0 - order.alpha);
    GridFunction r1(w.A, w.B, iB - iA);
    for (std::size_t k = 0; k <= r1.n(); ++k) {
        const std::size_t kg = iA + k;
        const double bterm =
            (gB == 0.0) ? 0.0 : gB * inv_gamma * std::pow(w.B - r1.t(k), -order.alpha);
        r1.values[k] = L.d_u(u.t(kg), u.values[kg], p.values[kg]) + cd.values[k] + bterm;
    }
    if (gB != 0.0 || L.du_singular_b) r1.singular_b = order.alpha;

    GeneralizedResiduals out{detail::make_report("generalized-AB", std::move(r1), mask_fraction),
                             std::nullopt};
    if (iA == 0) return out;

    // memory equation on [a,A]
    if (iA < 4)
        throw std::invalid_argument("residual_generalized: memory segment too few nodes");
    GridFunction gaB(u.a, w.B, iB);
    std::copy(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(iB) + 1,
              gaB.values.begin());
    GridFunction gaA(u.a, w.A, iA);
    std::copy(g.values.begin(), g.values.begin() + static_cast<std::ptrdiff_t>(iA) + 1,
              gaA.values.begin());
    const GridFunction dB = rl_derivative(gaB, order, Side::right);
    const GridFunction dA = rl_derivative(gaA, order, Side::right);
    GridFunction r2(u.a, w.A, iA);
    for (std::size_t k = 0; k <= iA; ++k) r2.values[k] = dB.values[k] - dA.values[k];
    out.memory = detail::make_report("generalized-aA", std::move(r2), mask_fraction);
    return out;
}

namespace detail {
// Exact integral of s^{-alpha} (c0 + c1 s) over [e0, e1], 0 <= e0 < e1.
inline double power_kernel_panel(double alpha, double e0, double e1, double c0, double c1) {
    const double p1 = 1.0 - alpha, p2 = 2.0 - alpha;
    return c0 * (std::pow(e1, p1) - std::pow(e0, p1)) / p1 +
           c1 * (std::pow(e1, p2) - std::pow(e0, p2)) / p2;
}
} // namespace detail

/**
 * The memory-segment constancy map of the A -> a limit:
 *
 *   t  |->  (1/Gamma(1-alpha)) int_A^B dL/dp(theta) (theta - t)^{-alpha} dtheta,
 *
 * for t in (a,A); its total variation over the segment is the constancy
 * defect.  The kernel is integrated exactly against the piecewise-linear
 * interpolant of the composite.
 */
inline GridFunction memory_constancy(const Lagrangian& L, const GridFunction& u,
                                     FractionalOrder order, const MemoryWindow& w) {
    if (!w.has_memory_segment())
        throw std::invalid_argument("memory_constancy: requires a < A");
    const auto [iA, iB] = w.locate(u);
    if (iA < 2) throw std::invalid_argument("memory_constancy: memory segment too few nodes");
    const GridFunction p = detail::derivative_of_kind(
        u, order, DerivativeKind::riemann_liouville);
    GridFunction g = detail::composite_dp(L, u, p);
    const double h = u.step();
    const double inv_gamma = 1.0 / gamma_fn(1.0 - order.alpha);
    GridFunction out(u.a, w.A, iA);
    for (std::size_t k = 0; k <= iA; ++k) {
        const double t = out.t(k);
        double acc = 0.0;
        for (std::size_t j = iA; j < iB; ++j) {
            const double e0 = u.t(j) - t, e1 = u.t(j + 1) - t;
            const double slope = (g.values[j + 1] - g.values[j]) / h;
            const double c0 = g.values[j] - slope * e0;
            acc += detail::power_kernel_panel(order.alpha, e0, e1, c0, slope);
        }
        out.values[k] = inv_gamma * acc;
    }
    return out;
}

inline double total_variation(const GridFunction& f) {
    double tv = 0.0;
    for (std::size_t k = 0; k + 1 <= f.n(); ++k)
        tv += std::abs(f.values[k + 1] - f.values[k]);
    return tv;
}

/**
 * Residual of the order-N approximated Euler-Lagrange equation:
 *
 *   dL/du + sum_{i=0}^{N} (-d/dt)^i [ dL/dp binom(alpha,i) (t-a)^{i-alpha} / Gamma(i+1-alpha) ]
 *
 * with p replaced by the order-N expansion of the left RL derivative of u.
 * The composite t -> dL/dp(t, u(t), p_N(t)) is resampled onto Chebyshev
 * points and differentiated spectrally, so it must be smooth on [a,b]
 * (non-finite composite samples are rejected).
 */
inline ResidualReport residual_approx_N(const Lagrangian& L, const SmoothFunctionModel& u,
                                        FractionalOrder order, int N, double a, double b,
                                        std::size_t n, double mask_fraction = 0.05) {
    if (N > L.max_t_order)
        throw std::invalid_argument("residual_approx_N: N exceeds the Lagrangian budget");
    detail::check_expansion_args(u, N, a, b);

    const ExpansionTermTable table(order, N);
    auto pN_at = [&](double t) {
        double acc = 0.0;
        for (int i = 0; i <= N; ++i)
            acc += table.coefficients[static_cast<std::size_t>(i)] *
                   std::pow(t - a, static_cast<double>(i) - order.alpha) * u.derivative(i, t);
        return acc;
    };
    auto composite = [&](double t) { return L.d_p(t, u.value(t), pN_at(t)); };
    const auto g = SmoothFunctionModel::chebyshev_fit(composite, a, b, 96, N);

    GridFunction r = detail::adjoint_partial_sum(
        [&g](int j, double t) { return g.derivative(j, t); }, order, a, N, b, n);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = r.t(k);
        r.values[k] += L.d_u(t, u.value(t), pN_at(t));
    }
    if (L.du_singular_b) r.singular_b = order.alpha;
    return detail::make_report("approx-N" + std::to_string(N), std::move(r), mask_fraction);
}

/// Diagnostic for the natural (transversality) condition at t = b:
/// true when |dL/dp| at the right endpoint is below tol along (u, p).
inline bool transversality_holds(const Lagrangian& L, const GridFunction& u,
                                 FractionalOrder order,
                                 DerivativeKind kind = DerivativeKind::riemann_liouville,
                                 double tol = 1e-8) {
    const GridFunction p = detail::derivative_of_kind(u, order, kind);
    return std::abs(L.d_p(u.b, u.values.back(), p.values.back())) <= tol;
}

} // namespace fracvar
