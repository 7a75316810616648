#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebyshev.hpp"

namespace fracvar {

/**
 * A smooth function model that can produce classical derivatives of any
 * requested order without numerical differentiation of noise.
 *
 * Two kinds:
 *   - polynomial: coefficients in ascending degree; derivatives exact.
 *   - chebyshev:  collocated samples on Lobatto points of the window,
 *                 differentiated spectrally in coefficient space.
 *
 * The window (c,d) is the enclosing interval the model is trusted on;
 * expansion-type operations require it to contain the widened interval
 * [a-(b-a), b+(b-a)] of the working grid.  Polynomials are entire and
 * default to an unbounded window.
 */
class SmoothFunctionModel {
public:
    static SmoothFunctionModel polynomial(std::vector<double> coeffs_ascending) {
        SmoothFunctionModel m;
        m.kind_ = Kind::polynomial;
        m.poly_ = std::move(coeffs_ascending);
        if (m.poly_.empty()) m.poly_.assign(1, 0.0);
        m.c_ = -std::numeric_limits<double>::infinity();
        m.d_ = std::numeric_limits<double>::infinity();
        m.max_order_ = std::numeric_limits<int>::max();
        return m;
    }

    template <class F>
    static SmoothFunctionModel chebyshev_fit(F&& f, double c, double d,
                                             std::size_t points = 96, int max_order = 30) {
        if (!(d > c)) throw std::invalid_argument("chebyshev_fit: requires d > c");
        SmoothFunctionModel m;
        m.kind_ = Kind::chebyshev;
        m.c_ = c;
        m.d_ = d;
        m.max_order_ = max_order;
        auto xs = cheb::nodes(points, c, d);
        std::vector<double> samples(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
            samples[j] = f(xs[j]);
            if (!std::isfinite(samples[j]))
                throw std::invalid_argument("chebyshev_fit: non-finite sample at t = " +
                                            std::to_string(xs[j]));
        }
        m.cheb_coeffs_ = cheb::fit(samples);
        cheb::chop(m.cheb_coeffs_);
        return m;
    }

    int max_derivative_order() const { return max_order_; }
    std::pair<double, double> window() const { return {c_, d_}; }
    bool is_polynomial() const { return kind_ == Kind::polynomial; }
    const std::vector<double>& polynomial_coefficients() const {
        if (kind_ != Kind::polynomial)
            throw std::logic_error("polynomial_coefficients: not a polynomial model");
        return poly_;
    }

    double value(double t) const { return derivative(0, t); }

    double derivative(int order, double t) const {
        if (order < 0) throw std::invalid_argument("derivative: negative order");
        if (order > max_order_)
            throw std::invalid_argument("derivative: order exceeds the model budget");
        if (kind_ == Kind::polynomial) {
            // m-th derivative: sum_{k>=m} c_k k!/(k-m)! t^{k-m}
            double acc = 0.0;
            const int deg = static_cast<int>(poly_.size()) - 1;
            for (int k = deg; k >= order; --k) {
                double f = 1.0;
                for (int r = 0; r < order; ++r) f *= static_cast<double>(k - r);
                acc = acc * t + poly_[static_cast<std::size_t>(k)] * f;
            }
            return acc;
        }
        std::vector<double> a = cheb_coeffs_;
        for (int r = 0; r < order; ++r) a = cheb::differentiate(a, c_, d_);
        return cheb::evaluate(a, c_, d_, t);
    }

    // Window containment check used by the expansion operations: for every
    // t in [a,b] the ball of radius (b-a) around t must lie inside (c,d).
    bool window_contains_expansion_range(double a, double b) const {
        const double w = b - a;
        return c_ < a - w && d_ > b + w;
    }

private:
    enum class Kind { polynomial, chebyshev };
    Kind kind_ = Kind::polynomial;
    std::vector<double> poly_;
    std::vector<double> cheb_coeffs_;
    double c_ = 0.0, d_ = 1.0;
    int max_order_ = 0;
};

} // namespace fracvar
