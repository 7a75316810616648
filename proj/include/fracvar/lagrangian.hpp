#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "special_functions.hpp"

namespace fracvar {

enum class DerivativeKind { riemann_liouville, caputo, riesz_caputo };

inline std::string to_string(DerivativeKind k) {
    switch (k) {
        case DerivativeKind::riemann_liouville: return "riemann-liouville";
        case DerivativeKind::caputo: return "caputo";
        case DerivativeKind::riesz_caputo: return "riesz-caputo";
    }
    return "?";
}

inline DerivativeKind derivative_kind_from_string(const std::string& s) {
    if (s == "riemann-liouville" || s == "rl") return DerivativeKind::riemann_liouville;
    if (s == "caputo") return DerivativeKind::caputo;
    if (s == "riesz-caputo" || s == "riesz") return DerivativeKind::riesz_caputo;
    throw std::invalid_argument("unknown derivative kind '" + s + "'");
}

/**
 * A Lagrangian as the callable triple (L, dL/du, dL/dp) of pointwise maps
 * (t, u, p) -> real, p standing for the fractional derivative slot.
 *
 * Callables must be reentrant (no hidden mutable state); all evaluation
 * here is pure and may run concurrently.
 *
 * du_singular_b, when set, declares that d_u (and the integrand) carries a
 * (b-t)^{-e} factor at the right endpoint: residual grids get the matching
 * singularity tag and the action quadrature masks the t = b node.
 */
struct Lagrangian {
    using Map = std::function<double(double, double, double)>;
    std::string name;
    Map value;
    Map d_u;
    Map d_p;
    int max_t_order = 30;  // documented smoothness budget of d_p composites
    std::optional<double> du_singular_b;
};

/**
 * Builds a Lagrangian and runs the mandatory construction-time self-check:
 * d_u and d_p must agree with centered finite differences of `value` to
 * 1e-5 relative at randomly sampled (t,u,p) (fixed seed, deterministic).
 * (t,b) give the sampling range for t; the band nearest b is avoided so
 * Lagrangians with an endpoint-singular factor can be checked too.
 */
inline Lagrangian make_lagrangian(std::string name, Lagrangian::Map value,
                                  Lagrangian::Map d_u, Lagrangian::Map d_p,
                                  double a, double b,
                                  std::optional<double> du_singular_b = std::nullopt,
                                  int max_t_order = 30) {
    Lagrangian L{std::move(name), std::move(value), std::move(d_u), std::move(d_p),
                 max_t_order, du_singular_b};
    std::mt19937 rng(0x5eedu);
    std::uniform_real_distribution<double> tdist(a + 0.1 * (b - a), b - 0.1 * (b - a));
    std::uniform_real_distribution<double> xdist(-2.0, 2.0);
    for (int s = 0; s < 16; ++s) {
        const double t = tdist(rng), u = xdist(rng), p = xdist(rng);
        const double hu = 1e-6 * std::max(1.0, std::abs(u));
        const double hp = 1e-6 * std::max(1.0, std::abs(p));
        const double fd_u = (L.value(t, u + hu, p) - L.value(t, u - hu, p)) / (2.0 * hu);
        const double fd_p = (L.value(t, u, p + hp) - L.value(t, u, p - hp)) / (2.0 * hp);
        const double au = L.d_u(t, u, p), ap = L.d_p(t, u, p);
        const double su = std::max({1.0, std::abs(au), std::abs(fd_u)});
        const double sp = std::max({1.0, std::abs(ap), std::abs(fd_p)});
        if (std::abs(fd_u - au) > 1e-5 * su || std::abs(fd_p - ap) > 1e-5 * sp)
            throw std::invalid_argument("make_lagrangian('" + L.name +
                                        "'): partials disagree with finite differences");
    }
    return L;
}

struct RegistryEntry {
    Lagrangian lagrangian;
    DerivativeKind kind;
};

inline std::vector<std::string> lagrangian_registry_ids() {
    return {"example1", "example1-smoothed", "rl-eigen", "caputo-eigen",
            "riesz-eigen", "quadratic"};
}

/**
 * Built-in Lagrangian registry (analytic partials, no expression parser).
 *
 *   example1           u^2 (b-t)^{-alpha} / (2 Gamma(1-alpha)) - p
 *   example1-smoothed  same u-part, the p coefficient smoothed to
 *                      -((b-t)/(b-a))^12 so it vanishes at b with all
 *                      derivatives up to order 11
 *   rl-eigen           (p - u)^2 with p the left RL derivative
 *   caputo-eigen       (p - u)^2 with p the left Caputo derivative
 *   riesz-eigen        (p - u)^2 with p the Riesz-Caputo derivative
 *   quadratic          (u^2 + p^2)/2
 */
inline RegistryEntry lagrangian_registry(const std::string& id, double alpha,
                                         double a = 0.0, double b = 1.0) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("lagrangian_registry: requires 0 < alpha < 1");
    const double ig = 1.0 / gamma_fn(1.0 - alpha);

    if (id == "example1") {
        auto F = [=](double t, double u) { return 0.5 * u * u * ig * std::pow(b - t, -alpha); };
        return {make_lagrangian(
                    id,
                    [=](double t, double u, double p) { return F(t, u) - p; },
                    [=](double t, double u, double) { return u * ig * std::pow(b - t, -alpha); },
                    [](double, double, double) { return -1.0; }, a, b, alpha),
                DerivativeKind::riemann_liouville};
    }
    if (id == "example1-smoothed") {
        auto f = [=](double t) { return -std::pow((b - t) / (b - a), 12.0); };
        return {make_lagrangian(
                    id,
                    [=](double t, double u, double p) {
                        return 0.5 * u * u * ig * std::pow(b - t, -alpha) + f(t) * p;
                    },
                    [=](double t, double u, double) { return u * ig * std::pow(b - t, -alpha); },
                    [=](double t, double, double) { return f(t); }, a, b, alpha),
                DerivativeKind::riemann_liouville};
    }
    if (id == "rl-eigen" || id == "caputo-eigen" || id == "riesz-eigen") {
        const DerivativeKind kind = id == "rl-eigen" ? DerivativeKind::riemann_liouville
                                  : id == "caputo-eigen" ? DerivativeKind::caputo
                                                         : DerivativeKind::riesz_caputo;
        return {make_lagrangian(
                    id,
                    [](double, double u, double p) { return (p - u) * (p - u); },
                    [](double, double u, double p) { return -2.0 * (p - u); },
                    [](double, double u, double p) { return 2.0 * (p - u); }, a, b),
                kind};
    }
    if (id == "quadratic") {
        return {make_lagrangian(
                    id,
                    [](double, double u, double p) { return 0.5 * (u * u + p * p); },
                    [](double, double u, double) { return u; },
                    [](double, double, double p) { return p; }, a, b),
                DerivativeKind::caputo};
    }
    throw std::invalid_argument("lagrangian_registry: unknown id '" + id + "'");
}

} // namespace fracvar
