#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracvar {

/**
 * A real-valued function sampled on a uniform grid over [a,b].
 *
 * values[k] = u(a + k h) with h = (b-a)/n.  This is the universal carrier
 * for candidate functions, operator outputs and residuals.  When an
 * operator knows its output carries an integrable endpoint singularity
 * ((t-a)^{-e} near a, (b-t)^{-e} near b) it records the exponent in the
 * corresponding tag; quadratures that understand the tag integrate the
 * singular end analytically.
 */
struct GridFunction {
    double a = 0.0;
    double b = 1.0;
    std::vector<double> values;  // size n+1

    // integrable-singularity tags (exponent e of the inverse-power factor)
    std::optional<double> singular_a;
    std::optional<double> singular_b;

    GridFunction() = default;
    GridFunction(double a_, double b_, std::size_t n)
        : a(a_), b(b_), values(n + 1, 0.0) {
        if (!(b > a)) throw std::invalid_argument("GridFunction: requires b > a");
        if (n < 2) throw std::invalid_argument("GridFunction: requires n >= 2");
    }

    std::size_t n() const { return values.size() - 1; }
    double step() const { return (b - a) / static_cast<double>(n()); }
    double t(std::size_t k) const { return a + step() * static_cast<double>(k); }

    template <class F>
    static GridFunction sample(double a, double b, std::size_t n, F&& f) {
        GridFunction g(a, b, n);
        for (std::size_t k = 0; k <= n; ++k) g.values[k] = f(g.t(k));
        return g;
    }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }

    // Index range [lo, hi] left after masking the given fraction of the
    // grid at each end (default band: 5% nearest each endpoint).
    std::pair<std::size_t, std::size_t> unmasked_range(double mask_fraction = 0.05) const {
        const auto nn = n();
        auto band = static_cast<std::size_t>(std::ceil(mask_fraction * static_cast<double>(nn)));
        if (2 * band >= nn) throw std::invalid_argument("unmasked_range: mask swallows the grid");
        return {band, nn - band};
    }

    // Sup-norm over the unmasked interior.
    double interior_sup(double mask_fraction = 0.05) const {
        auto [lo, hi] = unmasked_range(mask_fraction);
        double m = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) m = std::max(m, std::abs(values[k]));
        return m;
    }
};

inline GridFunction reversed(const GridFunction& u) {
    GridFunction r = u;
    std::reverse(r.values.begin(), r.values.end());
    std::swap(r.singular_a, r.singular_b);
    return r;
}

inline void require_same_grid(const GridFunction& u, const GridFunction& v) {
    if (u.n() != v.n() || u.a != v.a || u.b != v.b)
        throw std::invalid_argument("grid mismatch");
}

namespace detail {
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace detail

// CSV format: header line `t,u`, then n+1 rows of decimal values.
inline void write_csv(const GridFunction& u, std::ostream& os) {
    os << "t,u\n";
    for (std::size_t k = 0; k <= u.n(); ++k)
        os << detail::format_double(u.t(k)) << ',' << detail::format_double(u.values[k]) << '\n';
}

inline void write_csv(const GridFunction& u, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_csv: cannot open " + path);
    write_csv(u, os);
}

// Reads the CSV format above.  The abscissae must be uniformly spaced to
// within 1e-9 relative; anything else is rejected.
inline GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("read_csv: empty input");
    std::vector<double> ts, us;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("read_csv: malformed row '" + line + "'");
        ts.push_back(std::stod(line.substr(0, comma)));
        us.push_back(std::stod(line.substr(comma + 1)));
    }
    if (ts.size() < 3) throw std::invalid_argument("read_csv: need at least 3 samples");
    const double a = ts.front(), b = ts.back();
    if (!(b > a)) throw std::invalid_argument("read_csv: requires increasing abscissae");
    const std::size_t n = ts.size() - 1;
    const double h = (b - a) / static_cast<double>(n);
    for (std::size_t k = 0; k <= n; ++k) {
        const double expect = a + h * static_cast<double>(k);
        if (std::abs(ts[k] - expect) > 1e-9 * (std::abs(b - a)))
            throw std::invalid_argument("read_csv: non-uniform spacing at row " + std::to_string(k));
    }
    GridFunction g(a, b, n);
    g.values = std::move(us);
    return g;
}

inline GridFunction read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_csv: cannot open " + path);
    return read_csv(is);
}

} // namespace fracvar
