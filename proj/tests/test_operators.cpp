#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <fracvar/operators.hpp>
#include "oracles.hpp"

using namespace fracvar;

namespace {
// max relative error against a reference function over the unmasked interior
template <class Ref>
double interior_rel_error(const GridFunction& num, Ref&& ref, double floor = 1e-30) {
    auto [lo, hi] = num.unmasked_range(0.05);
    double worst = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) {
        const double r = ref(num.t(k));
        worst = std::max(worst, std::abs(num.values[k] - r) / std::max(std::abs(r), floor));
    }
    return worst;
}
} // namespace

TEST_CASE("fractional order validation") {
    REQUIRE_THROWS_AS(FractionalOrder(1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(FractionalOrder(-0.1), std::invalid_argument);
    REQUIRE_NOTHROW(FractionalOrder(0.0));
}

TEST_CASE("fractional integral of a constant") {
    auto u = GridFunction::sample(0, 1, 2048, [](double) { return 1.0; });
    auto I = frac_integral(u, FractionalOrder(0.5), Side::left);
    // 2 sqrt(t/pi); 1.12838 at t = 1
    REQUIRE(I.values.back() == Catch::Approx(1.1283791670955126).epsilon(1e-6));
    REQUIRE(interior_rel_error(I, [](double t) { return 2.0 * std::sqrt(t / M_PI); }) < 1e-6);
}

TEST_CASE("fractional integral of zero input is zero") {
    auto u = GridFunction::sample(0, 1, 64, [](double) { return 0.0; });
    for (double alpha : {0.25, 0.5, 0.9})
        for (Side s : {Side::left, Side::right})
            for (double v : frac_integral(u, FractionalOrder(alpha), s).values)
                REQUIRE(v == 0.0);
}

TEST_CASE("fractional integral power rule") {
    auto u = GridFunction::sample(0, 1, 2048, [](double t) { return t; });
    auto I = frac_integral(u, FractionalOrder(0.5), Side::left);
    // Gamma(2)/Gamma(2.5) t^{1.5} = 0.75225 t^{1.5}
    REQUIRE(interior_rel_error(I, [](double t) {
                return oracles::left_power_integral(0.5, 1, 0.0, t);
            }) < 1e-6);
    REQUIRE(oracles::left_power_integral(0.5, 1, 0.0, 1.0) == Catch::Approx(0.75225).epsilon(1e-5));
}

TEST_CASE("fractional integral rejects order 0") {
    auto u = GridFunction::sample(0, 1, 16, [](double) { return 1.0; });
    REQUIRE_THROWS_AS(frac_integral(u, FractionalOrder(0.0), Side::left), std::invalid_argument);
}

TEST_CASE("RL derivative of a constant") {
    auto u = GridFunction::sample(0, 1, 2048, [](double) { return 1.0; });
    auto D = rl_derivative(u, FractionalOrder(0.5), Side::left);
    // 1/sqrt(pi t); 0.56419 at t = 1
    REQUIRE(D.values.back() == Catch::Approx(0.5641895835477563).epsilon(1e-6));
    REQUIRE(interior_rel_error(D, [](double t) { return 1.0 / std::sqrt(M_PI * t); }) < 1e-4);
    REQUIRE(D.singular_a.has_value());
}

TEST_CASE("derivatives at order 0 are the exact identity") {
    auto u = GridFunction::sample(0, 1, 128, [](double t) { return std::sin(3 * t); });
    for (Side s : {Side::left, Side::right}) {
        REQUIRE(rl_derivative(u, FractionalOrder(0.0), s).values == u.values);
        REQUIRE(caputo_derivative(u, FractionalOrder(0.0), s).values == u.values);
    }
    REQUIRE(riesz_caputo_derivative(u, FractionalOrder(0.0)).values == u.values);
}

TEST_CASE("RL derivative power rule, left") {
    auto u = GridFunction::sample(0, 1, 2048, [](double t) { return t; });
    auto D = rl_derivative(u, FractionalOrder(0.5), Side::left);
    REQUIRE(interior_rel_error(D, [](double t) {
                return oracles::left_power_rule(0.5, 1, 0.0, t);
            }) < 1e-5);
    // 2 sqrt(t/pi) = 0.56419 at t = 0.25
    REQUIRE(D.values[512] == Catch::Approx(0.5641895835477563).epsilon(1e-5));
}

TEST_CASE("caputo of a constant is exactly zero") {
    auto u = GridFunction::sample(0, 1, 256, [](double) { return -3.7; });
    for (Side s : {Side::left, Side::right})
        for (double v : caputo_derivative(u, FractionalOrder(0.5), s).values)
            REQUIRE(v == 0.0);
}

TEST_CASE("caputo equals RL when u vanishes at the base point") {
    auto u = GridFunction::sample(0, 1, 2048, [](double t) { return t; });
    auto C = caputo_derivative(u, FractionalOrder(0.5), Side::left);
    auto D = rl_derivative(u, FractionalOrder(0.5), Side::left);
    auto [lo, hi] = u.unmasked_range(0.05);
    for (std::size_t k = lo; k <= hi; ++k)
        REQUIRE(C.values[k] == Catch::Approx(D.values[k]).margin(2e-5));
    REQUIRE(interior_rel_error(C, [](double t) { return 2.0 * std::sqrt(t / M_PI); }) < 1e-5);
}

TEST_CASE("caputo right of t is the mirrored power rule") {
    auto u = GridFunction::sample(0, 1, 2048, [](double t) { return t; });
    auto C = caputo_derivative(u, FractionalOrder(0.5), Side::right);
    REQUIRE(interior_rel_error(C, [](double t) { return -2.0 * std::sqrt((1.0 - t) / M_PI); }) <
            1e-5);
}

TEST_CASE("riesz-caputo of t") {
    auto u = GridFunction::sample(0, 1, 2048, [](double t) { return t; });
    auto R = riesz_caputo_derivative(u, FractionalOrder(0.5));
    // (sqrt t + sqrt(1-t))/sqrt(pi); 0.79788 at t = 0.5
    REQUIRE(R.values[1024] == Catch::Approx(0.7978845608028654).epsilon(1e-5));
    REQUIRE(interior_rel_error(R, [](double t) {
                return (std::sqrt(t) + std::sqrt(1.0 - t)) / std::sqrt(M_PI);
            }) < 1e-5);
}

TEST_CASE("riesz-caputo of a constant is zero") {
    auto u = GridFunction::sample(0, 1, 64, [](double) { return 2.5; });
    for (double v : riesz_caputo_derivative(u, FractionalOrder(0.5)).values) REQUIRE(v == 0.0);
}

TEST_CASE("rl-caputo gap") {
    auto zero_at_a = GridFunction::sample(0, 1, 64, [](double t) { return t; });
    for (double v : rl_caputo_gap(zero_at_a, FractionalOrder(0.5), Side::left).values)
        REQUIRE(v == 0.0);

    auto one = GridFunction::sample(0, 1, 64, [](double) { return 1.0; });
    auto gl = rl_caputo_gap(one, FractionalOrder(0.5), Side::left);
    for (std::size_t k = 1; k <= 64; ++k)
        REQUIRE(gl.values[k] == Catch::Approx(1.0 / std::sqrt(M_PI * gl.t(k))).epsilon(1e-12));
    REQUIRE(gl.values[0] == gl.values[1]);  // adjacent-node convention at the singular end

    auto gr = rl_caputo_gap(one, FractionalOrder(0.5), Side::right);
    for (std::size_t k = 0; k < 64; ++k)
        REQUIRE(gr.values[k] ==
                Catch::Approx(1.0 / std::sqrt(M_PI * (1.0 - gr.t(k)))).epsilon(1e-12));
    REQUIRE(gr.values[64] == gr.values[63]);
}

TEST_CASE("RL-Caputo relation closes on the interior") {
    const std::size_t n = 2048;
    auto u = GridFunction::sample(0, 1, n, [](double t) { return 1.0 + t * t; });
    for (Side s : {Side::left, Side::right}) {
        auto D = rl_derivative(u, FractionalOrder(0.5), s);
        auto C = caputo_derivative(u, FractionalOrder(0.5), s);
        auto G = rl_caputo_gap(u, FractionalOrder(0.5), s);
        GridFunction mismatch(0, 1, n);
        for (std::size_t k = 0; k <= n; ++k)
            mismatch.values[k] = D.values[k] - C.values[k] - G.values[k];
        REQUIRE(mismatch.interior_sup(0.05) < 3e-3);
    }
}

TEST_CASE("RL-Caputo relation mismatch shrinks with the step") {
    auto sup_at = [](std::size_t n) {
        auto u = GridFunction::sample(0, 1, n, [](double t) { return 1.0 + t * t; });
        auto D = rl_derivative(u, FractionalOrder(0.5), Side::left);
        auto C = caputo_derivative(u, FractionalOrder(0.5), Side::left);
        auto G = rl_caputo_gap(u, FractionalOrder(0.5), Side::left);
        GridFunction m(0, 1, n);
        for (std::size_t k = 0; k <= n; ++k)
            m.values[k] = D.values[k] - C.values[k] - G.values[k];
        return m.interior_sup(0.05);
    };
    REQUIRE(sup_at(1024) < 0.75 * sup_at(512));
}

TEST_CASE("inverse property: D^alpha I^alpha = identity on the interior") {
    auto sup_at = [](std::size_t n) {
        auto u = GridFunction::sample(0, 1, n, [](double t) { return 1.0 + t * t; });
        auto I = frac_integral(u, FractionalOrder(0.5), Side::left);
        auto D = rl_derivative(I, FractionalOrder(0.5), Side::left);
        GridFunction m(0, 1, n);
        for (std::size_t k = 0; k <= n; ++k) m.values[k] = D.values[k] - u.values[k];
        return m.interior_sup(0.05);
    };
    REQUIRE(sup_at(1024) < 5e-3);
    REQUIRE(sup_at(2048) < 0.75 * sup_at(1024));
}

TEST_CASE("fractional integration by parts") {
    const std::size_t n = 1024;
    const double h = 1.0 / n;
    auto f = GridFunction::sample(0, 1, n, [](double t) { return std::pow(1.0 - t, 3); });
    auto g = GridFunction::sample(0, 1, n, [](double t) { return t * t * t; });
    auto Dg = rl_derivative(g, FractionalOrder(0.5), Side::left);
    auto Df = rl_derivative(f, FractionalOrder(0.5), Side::right);
    double lhs = 0.0, rhs = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double w = (k == 0 || k == n) ? 0.5 * h : h;
        lhs += w * f.values[k] * Dg.values[k];
        rhs += w * g.values[k] * Df.values[k];
    }
    REQUIRE(std::abs(lhs - rhs) < 1e-4);
}

TEST_CASE("power rule across orders and sides") {
    const std::size_t n = 512;
    for (double alpha : {0.25, 0.5, 0.75}) {
        for (int k = 1; k <= 3; ++k) {
            auto u = GridFunction::sample(0, 1, n, [k](double t) { return std::pow(t, k); });
            auto Dl = rl_derivative(u, FractionalOrder(alpha), Side::left);
            REQUIRE(interior_rel_error(Dl, [&](double t) {
                        return oracles::left_power_rule(alpha, k, 0.0, t);
                    }) < 2e-3);
            auto Dr = rl_derivative(u, FractionalOrder(alpha), Side::right);
            REQUIRE(interior_rel_error(Dr, [&](double t) {
                        return oracles::right_derivative_of_left_power(alpha, k, 0.0, 1.0, t);
                    }) < 2e-3);
        }
    }
}

TEST_CASE("operators are linear") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const std::size_t n = 128;
    GridFunction u1(0, 1, n), u2(0, 1, n), combo(0, 1, n);
    for (std::size_t k = 0; k <= n; ++k) {
        u1.values[k] = dist(rng);
        u2.values[k] = dist(rng);
    }
    const double c1 = 0.7, c2 = -1.3;
    for (std::size_t k = 0; k <= n; ++k)
        combo.values[k] = c1 * u1.values[k] + c2 * u2.values[k];

    auto check = [&](auto&& op) {
        auto a = op(u1), b = op(u2), c = op(combo);
        for (std::size_t k = 0; k <= n; ++k) {
            const double expect = c1 * a.values[k] + c2 * b.values[k];
            REQUIRE(c.values[k] == Catch::Approx(expect).margin(1e-10));
        }
    };
    FractionalOrder half(0.5);
    check([&](const GridFunction& u) { return frac_integral(u, half, Side::left); });
    check([&](const GridFunction& u) { return frac_integral(u, half, Side::right); });
    check([&](const GridFunction& u) { return rl_derivative(u, half, Side::left); });
    check([&](const GridFunction& u) { return rl_derivative(u, half, Side::right); });
    check([&](const GridFunction& u) { return caputo_derivative(u, half, Side::left); });
    check([&](const GridFunction& u) { return riesz_caputo_derivative(u, half); });
}

TEST_CASE("non-finite inputs are rejected") {
    GridFunction u(0, 1, 16);
    u.values[3] = std::numeric_limits<double>::quiet_NaN();
    REQUIRE_THROWS_AS(frac_integral(u, FractionalOrder(0.5), Side::left), std::invalid_argument);
    REQUIRE_THROWS_AS(rl_derivative(u, FractionalOrder(0.5), Side::left), std::invalid_argument);
    REQUIRE_THROWS_AS(caputo_derivative(u, FractionalOrder(0.5), Side::right),
                      std::invalid_argument);
}
