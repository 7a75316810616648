#pragma once

// Test-only oracles, independent of the implementation paths they check:
// closed forms from the power rule, series evaluations, and the
// Mittag-Leffler function.

#include <cmath>
#include <vector>

#include <fracvar/special_functions.hpp>

namespace oracles {

// left RL derivative of (t-a)^k:  Gamma(k+1)/Gamma(k+1-alpha) (t-a)^{k-alpha}
inline double left_power_rule(double alpha, int k, double a, double t) {
    return fracvar::gamma_fn(k + 1.0) / fracvar::gamma_fn(k + 1.0 - alpha) *
           std::pow(t - a, k - alpha);
}

// left RL fractional integral of (t-a)^k: Gamma(k+1)/Gamma(k+1+alpha) (t-a)^{k+alpha}
inline double left_power_integral(double alpha, int k, double a, double t) {
    return fracvar::gamma_fn(k + 1.0) / fracvar::gamma_fn(k + 1.0 + alpha) *
           std::pow(t - a, k + alpha);
}

// right RL derivative of (b-t)^k: Gamma(k+1)/Gamma(k+1-alpha) (b-t)^{k-alpha}
inline double right_power_rule(double alpha, int k, double b, double t) {
    return fracvar::gamma_fn(k + 1.0) / fracvar::gamma_fn(k + 1.0 - alpha) *
           std::pow(b - t, k - alpha);
}

// right RL derivative of u(t) = (t-a)^k on [a,b]: expand around b,
// (t-a)^k = sum_j C(k,j) (b-a)^{k-j} (-1)^j (b-t)^j, then the mirrored
// power rule termwise.
inline double right_derivative_of_left_power(double alpha, int k, double a, double b, double t) {
    double acc = 0.0;
    double c = 1.0;  // C(k,j)
    for (int j = 0; j <= k; ++j) {
        if (j > 0) c = c * static_cast<double>(k - j + 1) / static_cast<double>(j);
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += c * sign * std::pow(b - a, k - j) * right_power_rule(alpha, j, b, t);
    }
    return acc;
}

// left RL derivative of exp(r t) from base a, by termwise power rule on
// the Taylor series (converges fast for |r| (b-a) <= a few).
inline double left_derivative_of_exp(double alpha, double r, double a, double t) {
    double acc = 0.0;
    double rm = 1.0;  // r^m
    for (int m = 0; m <= 60; ++m) {
        acc += rm * std::pow(t - a, m - alpha) / fracvar::gamma_fn(m + 1.0 - alpha);
        rm *= r;
    }
    return std::exp(r * a) * acc;
}

// Mittag-Leffler E_{1/2}(z) by its power series (60 terms).  The caputo
// eigenproblem cD^{1/2} u = u, u(0) = 1 has solution u(t) = E_{1/2}(sqrt t),
// equal to exp(t) erfc(-sqrt t).
inline double mittag_leffler_half(double z) {
    double acc = 0.0;
    double zj = 1.0;
    for (int j = 0; j <= 60; ++j) {
        acc += zj / fracvar::gamma_fn(0.5 * j + 1.0);
        zj *= z;
    }
    return acc;
}

inline double caputo_eigen_solution(double t) { return mittag_leffler_half(std::sqrt(t)); }

} // namespace oracles
