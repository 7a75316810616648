#pragma once

#include <cmath>
#include <stdexcept>

#include "grid_function.hpp"

namespace fracvar {

/**
 * The four abscissae a <= A < B <= b: [a,b] is the domain (the memory of
 * the system starts at a), (A,B) is the action interval.
 */
struct MemoryWindow {
    double a, A, B, b;

    MemoryWindow(double a_, double A_, double B_, double b_) : a(a_), A(A_), B(B_), b(b_) {
        if (!(a <= A && A < B && B <= b))
            throw std::invalid_argument("MemoryWindow: requires a <= A < B <= b");
    }

    static MemoryWindow whole(double a_, double b_) { return {a_, a_, b_, b_}; }

    bool has_memory_segment() const { return A > a; }

    // Grid indices of A and B; both must coincide with grid nodes to
    // within 1e-9 of the domain length.
    std::pair<std::size_t, std::size_t> locate(const GridFunction& u) const {
        if (std::abs(u.a - a) > 1e-9 * (b - a) || std::abs(u.b - b) > 1e-9 * (b - a))
            throw std::invalid_argument("MemoryWindow: grid domain mismatch");
        const double h = u.step();
        const auto iA = static_cast<std::size_t>(std::llround((A - a) / h));
        const auto iB = static_cast<std::size_t>(std::llround((B - a) / h));
        if (iA > u.n() || iB > u.n() || std::abs(u.t(iA) - A) > 1e-9 * (b - a) ||
            std::abs(u.t(iB) - B) > 1e-9 * (b - a))
            throw std::invalid_argument("MemoryWindow: A and B must lie on grid nodes");
        return {iA, iB};
    }
};

} // namespace fracvar
