#pragma once

// Riemann-Liouville integrals, Caputo derivatives and the Gagliardo seminorm
// for uniformly sampled data.
//
// The integral I^b f is discretised by the product trapezoidal rule: f is
// replaced by its piecewise-linear interpolant and integrated exactly against
// the kernel (t - s)^{b-1} / Gamma(b). A curvature term per cell (on by
// default) makes the interpolant piecewise quadratic, so the error drops from
// O(dt^2) to O(dt^3). Caputo derivatives differentiate the samples with
// fourth-order stencils and then apply I^{1-b} or I^{2-a}.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/errors.hpp"
#include "fracspec/sampled_function.hpp"
#include "fracspec/special_functions.hpp"

namespace fracspec {

enum class FracKind { rl_integral, caputo_01, caputo_12 };

/// Validated (order, kind) pair.
struct FracOrder {
    double order;
    FracKind kind;

    FracOrder(double order_, FracKind kind_) : order(order_), kind(kind_)
    {
        const bool ok = [&] {
            switch (kind) {
            case FracKind::rl_integral: return order > 0.0 && order <= 1.0;
            case FracKind::caputo_01: return order > 0.0 && order < 1.0;
            case FracKind::caputo_12: return order > 1.0 && order < 2.0;
            }
            return false;
        }();
        if (!ok)
            detail::throw_domain("FracOrder", "order " + std::to_string(order) + " out of range for this operator");
    }
};

namespace detail {

// w_k = (k+1)^p - 2 k^p + (k-1)^p, k >= 1. For larger k the binomial series
// 2 k^p sum_m C(p, 2m) k^{-2m} avoids the cancellation of the direct form.
inline double second_difference_power(double p, std::size_t k)
{
    const double kk = static_cast<double>(k);
    if (k < 8)
        return std::pow(kk + 1.0, p) - 2.0 * std::pow(kk, p) + std::pow(kk - 1.0, p);
    const double inv2 = 1.0 / (kk * kk);
    double coef = 1.0;  // C(p, 2m)
    double scale = 1.0;
    double sum = 0.0;
    for (int m = 1; m < 40; ++m) {
        coef *= (p - (2 * m - 2)) * (p - (2 * m - 1)) / ((2.0 * m - 1.0) * (2.0 * m));
        scale *= inv2;
        const double term = coef * scale;
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum))
            break;
    }
    return 2.0 * std::pow(kk, p) * sum;
}

// m_k = int_{k-1}^{k} s^{b-1} (k - s)(s - k + 1) ds, the kernel moment of the
// quadratic bubble on the cell at distance k. Series in 1/(k - 1/2) for larger k.
inline double bubble_moment(double beta, std::size_t k)
{
    const double kk = static_cast<double>(k);
    if (k < 8) {
        const long double b = beta;
        const long double hi = kk;
        const long double lo = kk - 1.0L;
        auto antideriv = [&](long double q) { return (std::pow(hi, b + q) - std::pow(lo, b + q)) / (b + q); };
        return static_cast<double>(-antideriv(2) + (2 * hi - 1) * antideriv(1) - hi * lo * antideriv(0));
    }
    const double centre = kk - 0.5;
    const double inv2 = 1.0 / (centre * centre);
    double coef = 1.0;  // C(b-1, 2m)
    double scale = std::pow(centre, beta - 1.0);
    double half_pow = 0.5;  // (1/2)^{2m+1}
    double sum = 0.0;
    for (int m = 0; m < 40; ++m) {
        if (m > 0) {
            coef *= (beta - 1.0 - (2 * m - 2)) * (beta - 1.0 - (2 * m - 1)) / ((2.0 * m - 1.0) * (2.0 * m));
            scale *= inv2;
            half_pow *= 0.25;
        }
        const double moment = 2.0 * (0.25 * half_pow / (2 * m + 1) - 0.25 * half_pow / (2 * m + 3));
        const double term = coef * scale * moment;
        sum += term;
        if (std::fabs(term) <= 1e-18 * std::fabs(sum))
            break;
    }
    return sum;
}

// Convolution weights of the product trapezoidal rule on n+1 nodes, with the
// optional curvature term that upgrades it to a piecewise-quadratic rule.
struct ProductTrapezoidWeights {
    double beta;
    double scale;                // dt^beta / Gamma(beta + 2)
    double curvature_scale;      // dt^beta / (2 Gamma(beta))
    std::vector<double> inner;   // inner[k]: weight of f_{i-k}, 1 <= k < i
    std::vector<double> first;   // first[i]: weight of f_0 at node i
    std::vector<double> bubble;  // bubble[k]: moment of the cell at distance k

    ProductTrapezoidWeights(double beta_, double dt, std::size_t n, bool curvature = true)
        : beta(beta_), inner(n + 1, 0.0), first(n + 1, 0.0)
    {
        const double p = beta + 1.0;
        scale = std::pow(dt, beta) * rgamma(beta + 2.0);
        curvature_scale = 0.5 * std::pow(dt, beta) * rgamma(beta);
        for (std::size_t k = 1; k <= n; ++k)
            inner[k] = second_difference_power(p, k);
        for (std::size_t i = 1; i <= n; ++i) {
            const double ii = static_cast<double>(i);
            first[i] = std::pow(ii - 1.0, p) - (ii - 1.0 - beta) * std::pow(ii, beta);
        }
        if (curvature && n >= 3) {
            bubble.assign(n + 1, 0.0);
            for (std::size_t k = 1; k <= n; ++k)
                bubble[k] = bubble_moment(beta, k);
        }
    }
};

// Undivided second difference of f at each cell midpoint, exact for cubics.
inline std::vector<double> cell_curvature(std::span<const double> f)
{
    const std::size_t n = f.size();
    std::vector<double> node(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j)
        node[j] = f[j - 1] - 2.0 * f[j] + f[j + 1];
    std::vector<double> cell(n - 1);
    cell[0] = 0.5 * (3.0 * node[1] - node[2]);
    for (std::size_t j = 1; j + 2 < n; ++j)
        cell[j] = 0.5 * (node[j] + node[j + 1]);
    cell[n - 2] = 0.5 * (3.0 * node[n - 2] - node[n - 3]);
    return cell;
}

inline void rl_integral_column(const ProductTrapezoidWeights& w, std::span<const double> f, std::span<double> out)
{
    const std::size_t n = f.size();
    out[0] = 0.0;
    const bool curved = !w.bubble.empty() && n >= 4;
    std::vector<double> curvature;
    if (curved)
        curvature = cell_curvature(f);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = w.first[i] * f[0];
        for (std::size_t j = 1; j < i; ++j)
            acc += w.inner[i - j] * f[j];
        acc += f[i];
        out[i] = w.scale * acc;
        if (curved) {
            double bend = 0.0;
            for (std::size_t j = 0; j < i; ++j)
                bend += curvature[j] * w.bubble[i - j];
            out[i] -= w.curvature_scale * bend;
        }
    }
}

// Fourth-order stencils; the second-order forms are used on short grids.
inline std::vector<double> first_derivative(std::span<const double> f, double dt)
{
    const std::size_t n = f.size();
    std::vector<double> d(n);
    if (n < 6) {
        const double h2 = 2.0 * dt;
        d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / h2;
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[i] = (f[i + 1] - f[i - 1]) / h2;
        d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / h2;
        return d;
    }
    const double h = 12.0 * dt;
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / h;
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / h;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / h;
    const std::size_t e = n - 1;
    d[e - 1] = (3.0 * f[e] + 10.0 * f[e - 1] - 18.0 * f[e - 2] + 6.0 * f[e - 3] - f[e - 4]) / h;
    d[e] = (25.0 * f[e] - 48.0 * f[e - 1] + 36.0 * f[e - 2] - 16.0 * f[e - 3] + 3.0 * f[e - 4]) / h;
    return d;
}

inline std::vector<double> second_derivative(std::span<const double> f, double dt)
{
    const std::size_t n = f.size();
    std::vector<double> d(n);
    if (n < 6) {
        const double hh = dt * dt;
        d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / hh;
        for (std::size_t i = 1; i + 1 < n; ++i)
            d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / hh;
        d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / hh;
        return d;
    }
    const double hh = 12.0 * dt * dt;
    d[0] = (45.0 * f[0] - 154.0 * f[1] + 214.0 * f[2] - 156.0 * f[3] + 61.0 * f[4] - 10.0 * f[5]) / hh;
    d[1] = (10.0 * f[0] - 15.0 * f[1] - 4.0 * f[2] + 14.0 * f[3] - 6.0 * f[4] + f[5]) / hh;
    for (std::size_t i = 2; i + 2 < n; ++i)
        d[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / hh;
    const std::size_t e = n - 1;
    d[e - 1] = (10.0 * f[e] - 15.0 * f[e - 1] - 4.0 * f[e - 2] + 14.0 * f[e - 3] - 6.0 * f[e - 4] + f[e - 5]) / hh;
    d[e] = (45.0 * f[e] - 154.0 * f[e - 1] + 214.0 * f[e - 2] - 156.0 * f[e - 3] + 61.0 * f[e - 4] - 10.0 * f[e - 5]) / hh;
    return d;
}

inline void require_origin(const SampledFunction& f, const char* where)
{
    if (f.t0() != 0.0)
        throw_domain(where, "grid must start at t = 0");
}

inline void require_samples(const SampledFunction& f, std::size_t n, const char* where)
{
    if (f.size() < n)
        throw_domain(where, "at least " + std::to_string(n) + " samples required");
}

inline double scaled_power(double s, double g) { return g == 0.0 ? 1.0 : std::pow(s, g); }

// Least-squares coefficients of sum_j c_j s^{g_j} against f(s), s = 0..nodes-1.
inline std::vector<double> fit_powers(std::span<const double> f, std::span<const double> exponents, std::size_t nodes)
{
    const auto cols = static_cast<Eigen::Index>(exponents.size());
    const auto rows = static_cast<Eigen::Index>(nodes);
    Eigen::MatrixXd basis(rows, cols);
    Eigen::VectorXd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j)
            basis(i, j) = scaled_power(static_cast<double>(i), exponents[static_cast<std::size_t>(j)]);
        rhs(i) = f[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = basis.colPivHouseholderQr().solve(rhs);
    return {c.data(), c.data() + c.size()};
}

template <class ColumnOp>
SampledFunction map_columns(const SampledFunction& f, ColumnOp&& op)
{
    SampledFunction out = f.zeros_like();
    for (std::size_t d = 0; d < f.dim(); ++d) {
        const std::vector<double> column = f.component(d);
        const std::vector<double> result = op(std::span<const double>(column));
        out.set_component(d, result);
    }
    return out;
}

}  // namespace detail

struct IntegralOptions {
    // false gives the plain product trapezoidal rule (piecewise-linear f).
    bool curvature_correction = true;
    // Non-integer exponents g >= 0 of the expected behaviour f ~ t^g at the
    // origin. When set, a least-squares fit of {1, t, t^2, t^3} plus these
    // powers over the first fit_nodes samples is integrated exactly and the
    // rule is applied to the remainder only.
    std::vector<double> start_exponents;
    std::size_t fit_nodes = 12;
};

namespace detail {

inline std::vector<double> integral_start_basis(std::span<const double> extra)
{
    std::vector<double> raw = {0.0, 1.0, 2.0, 3.0};
    for (double g : extra) {
        if (!(g >= 0.0) || !std::isfinite(g))
            throw_domain("rl_integral", "start exponents must be finite and non-negative");
        raw.push_back(g);
    }
    std::sort(raw.begin(), raw.end());
    std::vector<double> out;
    for (double g : raw)
        if (out.empty() || g - out.back() > 1e-6)
            out.push_back(g);
    return out;
}

}  // namespace detail

/// I^beta f on the grid of f (which must start at t = 0). Value at t = 0 is 0.
inline SampledFunction rl_integral(double beta, const SampledFunction& f, const IntegralOptions& opt = {})
{
    FracOrder{beta, FracKind::rl_integral};
    detail::require_origin(f, "rl_integral");
    const detail::ProductTrapezoidWeights w(beta, f.dt(), f.size() - 1, opt.curvature_correction);
    if (opt.start_exponents.empty())
        return detail::map_columns(f, [&](std::span<const double> column) {
            std::vector<double> out(column.size());
            detail::rl_integral_column(w, column, out);
            return out;
        });
    const std::vector<double> basis = detail::integral_start_basis(opt.start_exponents);
    if (opt.fit_nodes < basis.size() + 2)
        detail::throw_domain("rl_integral", "fit_nodes must exceed the basis size by at least 2");
    detail::require_samples(f, opt.fit_nodes, "rl_integral");
    return detail::map_columns(f, [&](std::span<const double> column) {
        const std::vector<double> c = detail::fit_powers(column, basis, opt.fit_nodes);
        std::vector<double> remainder(column.begin(), column.end());
        for (std::size_t i = 0; i < remainder.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                remainder[i] -= c[j] * detail::scaled_power(static_cast<double>(i), basis[j]);
        std::vector<double> out(column.size());
        detail::rl_integral_column(w, remainder, out);
        // I^b s^g = Gamma(g+1)/Gamma(g+1+b) s^{g+b} dt^b in the scaled variable s = t/dt.
        const double dt_beta = std::pow(f.dt(), beta);
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const double g = basis[j];
            const double factor = c[j] * gamma(g + 1.0) * rgamma(g + 1.0 + beta) * dt_beta;
            for (std::size_t i = 1; i < out.size(); ++i)
                out[i] += factor * std::pow(static_cast<double>(i), g + beta);
        }
        return out;
    });
}

/// Caputo derivative of order beta in (0, 1): I^{1-beta}(f').
inline SampledFunction caputo_01(double beta, const SampledFunction& f)
{
    FracOrder{beta, FracKind::caputo_01};
    detail::require_origin(f, "caputo_01");
    detail::require_samples(f, 3, "caputo_01");
    const detail::ProductTrapezoidWeights w(1.0 - beta, f.dt(), f.size() - 1);
    return detail::map_columns(f, [&](std::span<const double> column) {
        const std::vector<double> d1 = detail::first_derivative(column, f.dt());
        std::vector<double> out(column.size());
        detail::rl_integral_column(w, d1, out);
        return out;
    });
}

struct CaputoOptions {
    // Remove a least-squares fit of {1, t, t^2, t^3, t^a, t^{a+1}, t^{2a}} on
    // the first nodes before differencing, and add its exact derivative back.
    // Solutions of order-a problems behave like t^a at the origin, where the
    // stencils cannot resolve f''.
    bool start_correction = true;
    std::size_t fit_nodes = 10;
};

namespace detail {

struct StartFit {
    std::vector<double> exponents;
    std::vector<double> coefficients;  // in the scaled variable s = t / dt
};

inline std::vector<double> start_exponents(double alpha)
{
    std::vector<double> raw = {0.0, 1.0, 2.0, 3.0, alpha, alpha + 1.0, 2.0 * alpha};
    std::sort(raw.begin(), raw.end());
    std::vector<double> out;
    for (double g : raw)
        if (out.empty() || g - out.back() > 1e-6)
            out.push_back(g);
    return out;
}

inline StartFit fit_start(std::span<const double> f, double alpha, std::size_t nodes)
{
    StartFit fit{start_exponents(alpha), {}};
    fit.coefficients = fit_powers(f, fit.exponents, nodes);
    return fit;
}

inline std::vector<double> caputo_12_column(double alpha, std::span<const double> f, double dt,
                                            const ProductTrapezoidWeights& w, const CaputoOptions& opt)
{
    const std::size_t n = f.size();
    std::vector<double> out(n);
    const bool correct = opt.start_correction && n >= std::max<std::size_t>(opt.fit_nodes, 10) + 2;
    if (!correct) {
        detail::rl_integral_column(w, detail::second_derivative(f, dt), out);
        return out;
    }
    const StartFit fit = fit_start(f, alpha, opt.fit_nodes);
    std::vector<double> remainder(f.begin(), f.end());
    for (std::size_t i = 0; i < n; ++i) {
        const double s = static_cast<double>(i);
        for (std::size_t j = 0; j < fit.exponents.size(); ++j)
            remainder[i] -= fit.coefficients[j] * scaled_power(s, fit.exponents[j]);
    }
    detail::rl_integral_column(w, detail::second_derivative(remainder, dt), out);
    // Exact Caputo derivative of the fitted part: d^a s^g = Gamma(g+1)/Gamma(g+1-a) s^{g-a} dt^{-a}.
    const double dt_alpha = std::pow(dt, -alpha);
    for (std::size_t j = 0; j < fit.exponents.size(); ++j) {
        const double g = fit.exponents[j];
        if (g <= 1.0)
            continue;
        const double factor = fit.coefficients[j] * gamma(g + 1.0) * rgamma(g + 1.0 - alpha) * dt_alpha;
        for (std::size_t i = 0; i < n; ++i) {
            const double s = static_cast<double>(i);
            out[i] += factor * (g == alpha ? 1.0 : std::pow(s, g - alpha));
        }
    }
    return out;
}

}  // namespace detail

/// Caputo derivative of order alpha in (1, 2): I^{2-alpha}(f'').
inline SampledFunction caputo_12(double alpha, const SampledFunction& f, const CaputoOptions& opt = {})
{
    FracOrder{alpha, FracKind::caputo_12};
    detail::require_origin(f, "caputo_12");
    detail::require_samples(f, 4, "caputo_12");
    const detail::ProductTrapezoidWeights w(2.0 - alpha, f.dt(), f.size() - 1);
    return detail::map_columns(f, [&](std::span<const double> column) {
        return detail::caputo_12_column(alpha, column, f.dt(), w, opt);
    });
}

/// d/dt I^{2-alpha}(f' - f'(0)) with the exact initial derivative f1 supplied
/// per component. Plain stencils throughout.
inline SampledFunction memory_identity_lhs(double alpha, const SampledFunction& f, std::span<const double> f1)
{
    FracOrder{alpha, FracKind::caputo_12};
    detail::require_origin(f, "memory_identity_lhs");
    detail::require_samples(f, 4, "memory_identity_lhs");
    if (f1.size() != f.dim())
        detail::throw_domain("memory_identity_lhs", "f1 must have one entry per component");
    const detail::ProductTrapezoidWeights w(2.0 - alpha, f.dt(), f.size() - 1);
    SampledFunction out = f.zeros_like();
    for (std::size_t d = 0; d < f.dim(); ++d) {
        const std::vector<double> column = f.component(d);
        std::vector<double> g = detail::first_derivative(column, f.dt());
        for (double& v : g)
            v -= f1[d];
        std::vector<double> memory(g.size());
        detail::rl_integral_column(w, g, memory);
        out.set_component(d, detail::first_derivative(memory, f.dt()));
    }
    return out;
}

struct GagliardoEstimate {
    double seminorm = 0.0;
    // Estimated contribution of the excluded strip |t - s| < dt/2 to the
    // squared seminorm, from the local slope:
    // sum_i w_i |f'(t_i)|^2 * 2 (dt/2)^{2-2b} / (2-2b). Not included above.
    double omitted_band = 0.0;
};

/// Double-trapezoid approximation of the H^beta(0,T) Gagliardo seminorm. The
/// diagonal nodes are excluded and their strip reported separately.
inline GagliardoEstimate gagliardo_seminorm(double beta, const SampledFunction& f)
{
    if (!(beta > 0.0 && beta < 1.0))
        detail::throw_domain("gagliardo_seminorm", "beta must lie in (0, 1)");
    detail::require_samples(f, 2, "gagliardo_seminorm");
    const std::size_t n = f.size();
    const std::size_t dim = f.dim();
    const double dt = f.dt();
    auto weight = [&](std::size_t i) { return (i == 0 || i + 1 == n) ? 0.5 * dt : dt; };
    const double power = 1.0 + 2.0 * beta;

    // kernel[k] = (k dt)^{-(1+2b)}
    std::vector<double> kernel(n, 0.0);
    for (std::size_t k = 1; k < n; ++k)
        kernel[k] = std::pow(static_cast<double>(k) * dt, -power);

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            double dist2 = 0.0;
            for (std::size_t d = 0; d < dim; ++d) {
                const double diff = f(i, d) - f(j, d);
                dist2 += diff * diff;
            }
            row += weight(j) * dist2 * kernel[j - i];
        }
        total += 2.0 * weight(i) * row;
    }

    double band = 0.0;
    if (n >= 3) {
        const double strip = 2.0 * std::pow(0.5 * dt, 2.0 - 2.0 * beta) / (2.0 - 2.0 * beta);
        for (std::size_t d = 0; d < dim; ++d) {
            const std::vector<double> column = f.component(d);
            const std::vector<double> slope = detail::first_derivative(column, dt);
            for (std::size_t i = 0; i < n; ++i)
                band += weight(i) * slope[i] * slope[i] * strip;
        }
    }
    return {std::sqrt(total), band};
}

}  // namespace fracspec
