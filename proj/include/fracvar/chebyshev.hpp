#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fracvar {
namespace cheb {

// Chebyshev-Gauss-Lobatto nodes mapped to [c,d], ordered left to right.
inline std::vector<double> nodes(std::size_t m, double c, double d) {
    if (m < 2) throw std::invalid_argument("cheb::nodes: need m >= 2");
    std::vector<double> x(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        const double xi = -std::cos(M_PI * static_cast<double>(j) / static_cast<double>(m));
        x[j] = c + (d - c) * 0.5 * (xi + 1.0);
    }
    return x;
}

// Coefficients a_k of f = sum_k a_k T_k(x) interpolating samples on the
// Lobatto nodes above (direct cosine sums, O(m^2); grids here are small).
inline std::vector<double> fit(const std::vector<double>& samples) {
    const std::size_t m = samples.size() - 1;
    std::vector<double> a(m + 1, 0.0);
    const double md = static_cast<double>(m);
    for (std::size_t k = 0; k <= m; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= m; ++j) {
            // nodes() orders x_j = -cos(pi j / m), i.e. theta_j = pi (m-j)/m
            const double cs = std::cos(M_PI * static_cast<double>(k) * static_cast<double>(m - j) / md);
            const double w = (j == 0 || j == m) ? 0.5 : 1.0;
            acc += w * samples[j] * cs;
        }
        a[k] = 2.0 * acc / md;
        if (k == 0 || k == m) a[k] *= 0.5;
    }
    return a;
}

// Drop the trailing coefficients that sit at roundoff level.  Without the
// chop, repeated differentiation amplifies the noise tail factorially.
inline void chop(std::vector<double>& a, double rel_tol = 1e-14) {
    double scale = 0.0;
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) { a.assign(1, 0.0); return; }
    std::size_t last = 0;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::abs(a[k]) > rel_tol * scale) last = k;
    a.resize(last + 1);
}

// Coefficients of the derivative on [c,d] via the standard recurrence.
inline std::vector<double> differentiate(const std::vector<double>& a, double c, double d) {
    const std::size_t m = a.size() - 1;
    std::vector<double> b(m + 1, 0.0);
    if (m >= 1) {
        b[m - 1] = 2.0 * static_cast<double>(m) * a[m];
        for (std::size_t k = m - 1; k >= 1; --k) {
            const double up = (k + 2 <= m) ? b[k + 1] : 0.0;
            b[k - 1] = up + 2.0 * static_cast<double>(k) * a[k];
        }
        b[0] *= 0.5;
    }
    if (!b.empty()) b.pop_back();
    if (b.empty()) b.assign(1, 0.0);
    const double scale = 2.0 / (d - c);
    for (double& v : b) v *= scale;
    return b;
}

// Clenshaw evaluation of sum_k a_k T_k at physical point t in [c,d].
inline double evaluate(const std::vector<double>& a, double c, double d, double t) {
    const double x = 2.0 * (t - c) / (d - c) - 1.0;
    double b1 = 0.0, b2 = 0.0;
    for (std::size_t k = a.size(); k-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + a[k];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + a[0];
}

} // namespace cheb
} // namespace fracvar
