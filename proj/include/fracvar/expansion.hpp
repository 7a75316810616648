#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "grid_function.hpp"
#include "operators.hpp"
#include "smooth_model.hpp"
#include "special_functions.hpp"

namespace fracvar {

// Expansion indices beyond this mix scales that exceed double-precision
// headroom (generalized binomials against (t-a)^{i-alpha} growth).
inline constexpr int kMaxExpansionOrder = 30;

/// Generalized binomial coefficient binom(alpha, i), computed by the
/// recurrence binom(alpha,i) = binom(alpha,i-1) (alpha-i+1)/i.
inline double frac_binomial(FractionalOrder order, int i) {
    if (i < 0) throw std::invalid_argument("frac_binomial: negative index");
    double b = 1.0;
    for (int k = 1; k <= i; ++k)
        b *= (order.alpha - static_cast<double>(k) + 1.0) / static_cast<double>(k);
    return b;
}

/**
 * The coefficient structure of the integer-order expansion of the left
 * Riemann-Liouville derivative:
 *
 *   coefficients[i] = binom(alpha, i) / Gamma(i+1-alpha),
 *
 * the factor multiplying (t-a)^{i-alpha} f^{(i)}(t) in term i.
 */
struct ExpansionTermTable {
    int N;
    FractionalOrder alpha;
    std::vector<double> coefficients;

    ExpansionTermTable(FractionalOrder order, int N_) : N(N_), alpha(order) {
        if (N < 0 || N > kMaxExpansionOrder)
            throw std::invalid_argument("ExpansionTermTable: N out of range");
        coefficients.resize(static_cast<std::size_t>(N) + 1);
        for (int i = 0; i <= N; ++i)
            coefficients[static_cast<std::size_t>(i)] =
                frac_binomial(order, i) / gamma_fn(static_cast<double>(i) + 1.0 - order.alpha);
    }
};

namespace detail {
inline void check_expansion_args(const SmoothFunctionModel& f, int N,
                                 double a, double b) {
    if (N < 0 || N > kMaxExpansionOrder)
        throw std::invalid_argument("expansion: N out of [0, 30]");
    if (N > f.max_derivative_order())
        throw std::invalid_argument("expansion: N exceeds the model's derivative budget");
    if (!f.window_contains_expansion_range(a, b))
        throw std::invalid_argument(
            "expansion: model window must contain [a-(b-a), b+(b-a)]");
}
} // namespace detail

/**
 * Partial sum of the integer-order expansion of the left RL derivative:
 *
 *   sum_{i=0}^{N} binom(alpha,i) (t-a)^{i-alpha} / Gamma(i+1-alpha) f^{(i)}(t)
 *
 * sampled on the given grid shape.  The t = a entry carries the
 * (t-a)^{-alpha} singularity and is reported as computed (masked by
 * convention); the output is tagged accordingly.
 */
inline GridFunction left_expansion_sum(const SmoothFunctionModel& f, FractionalOrder order,
                                       double a, int N, double b, std::size_t n) {
    detail::check_expansion_args(f, N, a, b);
    ExpansionTermTable table(order, N);
    GridFunction out(a, b, n);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = out.t(k);
        double acc = 0.0;
        for (int i = 0; i <= N; ++i) {
            const double p = std::pow(t - a, static_cast<double>(i) - order.alpha);
            acc += table.coefficients[static_cast<std::size_t>(i)] * p * f.derivative(i, t);
        }
        out.values[k] = acc;
    }
    out.singular_a = order.alpha;
    return out;
}

namespace detail {

// sum_{i<=N} (-d/dt)^i [ g(t) * binom(alpha,i) (t-a)^{i-alpha} / Gamma(i+1-alpha) ]
// with g's derivatives supplied by `gderiv(order, t)`.  Each i-fold product
// derivative goes through the generalized Leibniz rule; the power factor's
// derivatives are closed-form: d^m (t-a)^{i-alpha} = ff(i-alpha, m) (t-a)^{i-alpha-m}.
template <class GDeriv>
inline GridFunction adjoint_partial_sum(GDeriv&& gderiv, FractionalOrder order,
                                        double a, int N, double b, std::size_t n) {
    ExpansionTermTable table(order, N);
    std::vector<std::vector<double>> binom_row(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
        binom_row[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(i) + 1);
        for (int j = 0; j <= i; ++j) {
            double c = 1.0;
            for (int r = 0; r < j; ++r)
                c = c * static_cast<double>(i - r) / static_cast<double>(r + 1);
            binom_row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
        }
    }
    GridFunction out(a, b, n);
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = out.t(k);
        double acc = 0.0;
        for (int i = 0; i <= N; ++i) {
            const double ci = table.coefficients[static_cast<std::size_t>(i)];
            double term = 0.0;
            for (int j = 0; j <= i; ++j) {
                const int m = i - j;  // derivatives landing on the power factor
                const double powfac =
                    falling_factorial(static_cast<double>(i) - order.alpha, m) *
                    std::pow(t - a, static_cast<double>(j) - order.alpha);
                term += binom_row[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        gderiv(j, t) * powfac;
            }
            acc += ((i % 2 == 0) ? 1.0 : -1.0) * ci * term;
        }
        out.values[k] = acc;
    }
    out.singular_a = order.alpha;
    return out;
}

} // namespace detail

/**
 * The formally adjoint partial sum S_N:
 *
 *   S_N(t) = sum_{i=0}^{N} (-d/dt)^i [ F binom(alpha,i) (t-a)^{i-alpha} / Gamma(i+1-alpha) ]
 *
 * which approximates the right RL derivative of F in the weak sense when F
 * and all its derivatives vanish at b.  The vanishing is the caller's
 * hypothesis, checked by the weak-convergence harness; here it is not
 * enforced.
 */
inline GridFunction right_weak_sum(const SmoothFunctionModel& F, FractionalOrder order,
                                   double a, int N, double b, std::size_t n) {
    detail::check_expansion_args(F, N, a, b);
    return detail::adjoint_partial_sum(
        [&F](int j, double t) { return F.derivative(j, t); }, order, a, N, b, n);
}

} // namespace fracvar
