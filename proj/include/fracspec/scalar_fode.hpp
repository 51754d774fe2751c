#pragma once

// Scalar problem  d^a u + lambda u = 0,  u(0) = x0,  u'(0) = y0,  a in (1, 2),
// with d^a the Caputo derivative. Closed forms in Mittag-Leffler functions
// plus an L1 time stepper used as an independent check.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/sampled_function.hpp"
#include "fracspec/special_functions.hpp"

namespace fracspec {

struct ScalarProblem {
    double alpha;
    double lambda;
    double x0;
    double y0;
};

namespace detail {

inline void check_scalar_problem(const ScalarProblem& p, const char* where)
{
    if (!(p.alpha > 1.0 && p.alpha < 2.0))
        throw_domain(where, "alpha must lie in (1, 2)");
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw_domain(where, "lambda must be positive");
    if (!std::isfinite(p.x0) || !std::isfinite(p.y0))
        throw_domain(where, "initial data must be finite");
}

inline void check_time(double t, const char* where)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        throw_domain(where, "t must be finite and non-negative");
}

}  // namespace detail

/// u(t) = x0 E_{a,1}(-l t^a) + y0 t E_{a,2}(-l t^a)
inline double scalar_solution(const ScalarProblem& p, double t)
{
    detail::check_scalar_problem(p, "scalar_solution");
    detail::check_time(t, "scalar_solution");
    if (t == 0.0)
        return p.x0;
    const double z = -p.lambda * std::pow(t, p.alpha);
    double u = 0.0;
    if (p.x0 != 0.0)
        u += p.x0 * mittag_leffler(p.alpha, 1.0, z);
    if (p.y0 != 0.0)
        u += p.y0 * t * mittag_leffler(p.alpha, 2.0, z);
    return u;
}

/// u'(t) = -l x0 t^{a-1} E_{a,a}(-l t^a) + y0 E_{a,1}(-l t^a); y0 at t = 0.
inline double scalar_velocity(const ScalarProblem& p, double t)
{
    detail::check_scalar_problem(p, "scalar_velocity");
    detail::check_time(t, "scalar_velocity");
    if (t == 0.0)
        return p.y0;
    const double z = -p.lambda * std::pow(t, p.alpha);
    double v = 0.0;
    if (p.x0 != 0.0)
        v -= p.lambda * p.x0 * std::pow(t, p.alpha - 1.0) * mittag_leffler(p.alpha, p.alpha, z);
    if (p.y0 != 0.0)
        v += p.y0 * mittag_leffler(p.alpha, 1.0, z);
    return v;
}

/// u''(t) = -l [x0 t^{a-2} E_{a,a-1}(-l t^a) + y0 t^{a-1} E_{a,a}(-l t^a)], t > 0.
inline double scalar_acceleration(const ScalarProblem& p, double t)
{
    detail::check_scalar_problem(p, "scalar_acceleration");
    if (!(t > 0.0) || !std::isfinite(t))
        detail::throw_domain("scalar_acceleration", "t must be positive; u'' is singular at 0");
    const double z = -p.lambda * std::pow(t, p.alpha);
    double a = 0.0;
    if (p.x0 != 0.0)
        a += p.x0 * std::pow(t, p.alpha - 2.0) * mittag_leffler(p.alpha, p.alpha - 1.0, z);
    if (p.y0 != 0.0)
        a += p.y0 * std::pow(t, p.alpha - 1.0) * mittag_leffler(p.alpha, p.alpha, z);
    return -p.lambda * a;
}

/// I^{2-a}(u' - y0)(t) = -l [x0 t E_{a,2}(-l t^a) + y0 t^2 E_{a,3}(-l t^a)]
inline double scalar_memory(const ScalarProblem& p, double t)
{
    detail::check_scalar_problem(p, "scalar_memory");
    detail::check_time(t, "scalar_memory");
    if (t == 0.0)
        return 0.0;
    const double z = -p.lambda * std::pow(t, p.alpha);
    double m = 0.0;
    if (p.x0 != 0.0)
        m += p.x0 * t * mittag_leffler(p.alpha, 2.0, z);
    if (p.y0 != 0.0)
        m += p.y0 * t * t * mittag_leffler(p.alpha, 3.0, z);
    return -p.lambda * m;
}

/// Time derivative of scalar_memory, which equals d^a u = -l u.
inline double scalar_memory_rate(const ScalarProblem& p, double t)
{
    return -p.lambda * scalar_solution(p, t);
}

inline constexpr double l1_instability_threshold = 1e12;

/// L1 time stepper on n_steps + 1 nodes of spacing dt.
///
/// With v = u', d^a u is the order-(a-1) Caputo derivative of v, discretised
/// by the L1 rule, and v is tied to u by the trapezoidal rule. The start of
/// the solution, which behaves like t^a, is handled by subtracting the first
/// `correction_layers` + 1 layers of its power series; the stepper then marches
/// the smooth remainder w with w(0) = w'(0) = 0 and the first-order Taylor seed
/// w(dt) = 0. correction_layers = 0 marches u itself with u(dt) = x0 + y0 dt.
inline SampledFunction l1_stepper(const ScalarProblem& p, double dt, std::size_t n_steps, int correction_layers = 2)
{
    detail::check_scalar_problem(p, "l1_stepper");
    if (!(dt > 0.0) || !std::isfinite(dt))
        detail::throw_domain("l1_stepper", "dt must be positive");
    if (n_steps < 1)
        detail::throw_domain("l1_stepper", "need at least one step");
    if (correction_layers < 0)
        detail::throw_domain("l1_stepper", "correction_layers must be non-negative");

    const double a = p.alpha;
    const double lam = p.lambda;
    const std::size_t n = n_steps;

    struct Power {
        double exponent;
        double coef;
    };
    // Layer k: c0_k t^{k a} + c1_k t^{k a + 1}, with d^a(layer k+1) = -l (layer k).
    std::vector<Power> series;
    std::vector<Power> top;
    if (correction_layers == 0) {
        top = {{0.0, p.x0}, {1.0, p.y0}};
    } else {
        double c0 = p.x0;
        double c1 = p.y0;
        for (int k = 0; k <= correction_layers; ++k) {
            const double g = k * a;
            series.push_back({g, c0});
            series.push_back({g + 1.0, c1});
            if (k == correction_layers)
                top = {{g, c0}, {g + 1.0, c1}};
            c0 *= -lam * gamma(g + 1.0) * rgamma(g + a + 1.0);
            c1 *= -lam * gamma(g + 2.0) * rgamma(g + a + 2.0);
        }
    }
    auto eval = [](const std::vector<Power>& terms, double t) {
        double s = 0.0;
        for (const Power& q : terms)
            s += q.coef * (q.exponent == 0.0 ? 1.0 : std::pow(t, q.exponent));
        return s;
    };

    std::vector<double> w(n + 1, 0.0);
    std::vector<double> v(n + 1, 0.0);
    std::vector<double> forcing(n + 1, 0.0);
    for (std::size_t m = 0; m <= n; ++m) {
        const double t = static_cast<double>(m) * dt;
        // Remainder equation: d^a w + l w = -l (top layer). Without correction
        // the "top layer" is u itself and the forcing vanishes.
        forcing[m] = correction_layers == 0 ? 0.0 : -lam * eval(top, t);
    }
    if (correction_layers == 0) {
        w[0] = p.x0;
        v[0] = p.y0;
        w[1] = p.x0 + p.y0 * dt;
    }
    v[1] = 2.0 * (w[1] - w[0]) / dt - v[0];

    std::vector<double> b(n + 1);
    for (std::size_t j = 0; j <= n; ++j) {
        const double jj = static_cast<double>(j);
        b[j] = std::pow(jj + 1.0, 2.0 - a) - std::pow(jj, 2.0 - a);
    }
    const double g = std::pow(dt, 1.0 - a) * rgamma(3.0 - a);
    const double diag = 2.0 * g / dt + lam;
    for (std::size_t m = 2; m <= n; ++m) {
        double history = 0.0;
        for (std::size_t j = 1; j < m; ++j)
            history += b[m - j] * (v[j] - v[j - 1]);
        history *= g;
        const double rhs = forcing[m] - history + g * (2.0 * w[m - 1] / dt + 2.0 * v[m - 1]);
        w[m] = rhs / diag;
        v[m] = 2.0 * (w[m] - w[m - 1]) / dt - v[m - 1];
        if (!(std::fabs(w[m]) <= l1_instability_threshold))
            throw instability_error("l1_stepper: |u| exceeded 1e12 at step " + std::to_string(m));
    }

    std::vector<double> u(n + 1);
    for (std::size_t m = 0; m <= n; ++m)
        u[m] = w[m] + eval(series, static_cast<double>(m) * dt);
    return SampledFunction(0.0, dt, std::move(u));
}

}  // namespace fracspec
