#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "fracspec/errors.hpp"

namespace fracspec {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence, |x| < 1.
inline std::array<double, 2> legendre_with_derivative(std::size_t n, double x)
{
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    const double nn = static_cast<double>(n);
    return {p1, nn * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace detail

/// n-point Gauss-Legendre rule by Newton iteration on P_n.
inline GaussRule gauss_legendre(std::size_t n)
{
    if (n == 0)
        detail::throw_domain("gauss_legendre", "need at least one node");
    GaussRule rule{std::vector<double>(n), std::vector<double>(n)};
    const double nn = static_cast<double>(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
        for (int iter = 0; iter < 100; ++iter) {
            const auto [p, dp] = detail::legendre_with_derivative(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        const double dp = detail::legendre_with_derivative(n, x)[1];
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

/// Integral over [a, b] with the rule mapped onto the given panel breakpoints.
template <class F>
double integrate_panels(F&& f, std::span<const double> breaks, const GaussRule& rule)
{
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double mid = 0.5 * (breaks[p] + breaks[p + 1]);
        const double half = 0.5 * (breaks[p + 1] - breaks[p]);
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * panel;
    }
    return total;
}

/// Breakpoints for integrands with a weak algebraic singularity at 0: a
/// geometric ladder 2^-levels ... 1/2, 1 (scaled by unit) and uniform
/// panels of width unit up to t_max.
inline std::vector<double> graded_breaks(double t_max, double unit = 1.0, int levels = 40)
{
    std::vector<double> b{0.0};
    const double first = std::fmin(unit, t_max);
    for (int l = levels; l >= 1; --l)
        b.push_back(first * std::ldexp(1.0, -l));
    b.push_back(first);
    while (b.back() < t_max) {
        const double next = b.back() + unit;
        b.push_back(next >= t_max * (1.0 - 1e-14) ? t_max : next);
    }
    return b;
}

/// Composite Simpson on an odd number of equally spaced nodes over [a, b].
template <class F>
double composite_simpson(F&& f, double a, double b, std::size_t points)
{
    if (points < 3 || points % 2 == 0)
        detail::throw_domain("composite_simpson", "need an odd number of points, at least 3");
    const std::size_t intervals = points - 1;
    const double h = (b - a) / static_cast<double>(intervals);
    double odd = 0.0;
    double even = 0.0;
    for (std::size_t i = 1; i < intervals; ++i) {
        const double v = f(a + static_cast<double>(i) * h);
        (i % 2 == 1 ? odd : even) += v;
    }
    return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Simpson weights for the same node set, so several integrands can share samples.
inline std::vector<double> simpson_weights(double a, double b, std::size_t points)
{
    if (points < 3 || points % 2 == 0)
        detail::throw_domain("simpson_weights", "need an odd number of points, at least 3");
    const double h = (b - a) / static_cast<double>(points - 1);
    std::vector<double> w(points);
    for (std::size_t i = 0; i < points; ++i)
        w[i] = (i == 0 || i + 1 == points) ? h / 3.0 : (i % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    return w;
}

}  // namespace fracspec
