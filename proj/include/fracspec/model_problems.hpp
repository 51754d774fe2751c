#pragma once

// The two model operators on (0, L) with Dirichlet data:
//   wave:      A = -d^2/dx^2,       u = 0 at both ends
//   petrovsky: A = d^4/dx^4,        u = u'' = 0 at both ends (hinged)
// Both share the sine eigenfunctions e_n(x) = sqrt(2/L) sin(n pi x / L).

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/spectral_core.hpp"
#include "fracspec/special_functions.hpp"

namespace fracspec {

enum class ProblemKind { wave, petrovsky };

inline const char* to_string(ProblemKind k) { return k == ProblemKind::wave ? "wave" : "petrovsky"; }

struct IntervalProblem {
    double L = std::numbers::pi;
    ProblemKind kind = ProblemKind::wave;
    std::size_t n_modes = 1;
    std::size_t quadrature_points = 2049;

    void validate() const
    {
        if (!(L > 0.0) || !std::isfinite(L))
            detail::throw_domain("IntervalProblem", "L must be positive");
        if (n_modes < 1)
            detail::throw_domain("IntervalProblem", "n_modes must be at least 1");
        if (quadrature_points < 3)
            detail::throw_domain("IntervalProblem", "quadrature_points must be at least 3");
    }
};

struct Eigenpair {
    double lambda;
    double L;
    std::size_t n;

    [[nodiscard]] double operator()(double x) const
    {
        return std::sqrt(2.0 / L) * sinpi(static_cast<double>(n) * (x / L));
    }
};

/// lambda_n and e_n, n 1-based.
inline Eigenpair eigenpair(const IntervalProblem& p, std::size_t n)
{
    p.validate();
    if (n < 1 || n > p.n_modes)
        detail::throw_domain("eigenpair", "mode index " + std::to_string(n) + " out of range");
    const double k = static_cast<double>(n) * (std::numbers::pi / p.L);
    const double laplace = k * k;
    return {p.kind == ProblemKind::wave ? laplace : laplace * laplace, p.L, n};
}

inline SpectralOperator spectral_operator(const IntervalProblem& p)
{
    p.validate();
    std::vector<double> lambda(p.n_modes);
    for (std::size_t n = 1; n <= p.n_modes; ++n)
        lambda[n - 1] = eigenpair(p, n).lambda;
    return SpectralOperator(std::move(lambda));
}

namespace detail {

// Simpson weights on an odd node count; for an even count the last three
// intervals use the 3/8 rule.
inline std::vector<double> projection_weights(double L, std::size_t points)
{
    if (points % 2 == 1)
        return simpson_weights(0.0, L, points);
    if (points < 4)
        throw_domain("project", "need at least 3 quadrature points");
    const double h = L / static_cast<double>(points - 1);
    std::vector<double> w(points, 0.0);
    if (points > 4) {
        const std::vector<double> head = simpson_weights(0.0, h * static_cast<double>(points - 4), points - 3);
        for (std::size_t i = 0; i < head.size(); ++i)
            w[i] = head[i];
    }
    const std::size_t s = points - 4;
    const double c = 3.0 * h / 8.0;
    w[s] += c;
    w[s + 1] += 3.0 * c;
    w[s + 2] += 3.0 * c;
    w[s + 3] += c;
    return w;
}

}  // namespace detail

/// (<f, e_n>)_{n=1..n_modes} by composite quadrature on quadrature_points nodes.
inline std::vector<double> project(const IntervalProblem& p, const std::function<double(double)>& f)
{
    p.validate();
    const std::size_t q = p.quadrature_points;
    const std::vector<double> w = detail::projection_weights(p.L, q);
    std::vector<double> fx(q);
    std::vector<double> xs(q);
    for (std::size_t i = 0; i < q; ++i) {
        xs[i] = p.L * static_cast<double>(i) / static_cast<double>(q - 1);
        fx[i] = f(xs[i]);
    }
    std::vector<double> c(p.n_modes);
    for (std::size_t n = 1; n <= p.n_modes; ++n) {
        const Eigenpair e = eigenpair(p, n);
        double sum = 0.0;
        for (std::size_t i = 0; i < q; ++i)
            sum += w[i] * fx[i] * e(xs[i]);
        c[n - 1] = sum;
    }
    return c;
}

/// Time-major samples: values[i * x.size() + j] = u(t[i], x[j]).
struct FieldGrid {
    std::vector<double> x;
    std::vector<double> t;
    std::vector<double> values;

    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values[i * x.size() + j]; }
};

/// Where to evaluate a field.
struct GridSpec {
    std::vector<double> t;
    std::vector<double> x;

    /// n_t + 1 equally spaced times on [0, t_max], n_x points on [0, L].
    static GridSpec uniform(double t_max, std::size_t n_t, double L, std::size_t n_x)
    {
        if (!(t_max > 0.0) || n_t < 1 || n_x < 2)
            detail::throw_domain("GridSpec", "need t_max > 0, n_t >= 1, n_x >= 2");
        GridSpec g;
        g.t.resize(n_t + 1);
        for (std::size_t i = 0; i <= n_t; ++i)
            g.t[i] = t_max * static_cast<double>(i) / static_cast<double>(n_t);
        g.x.resize(n_x);
        for (std::size_t j = 0; j < n_x; ++j)
            g.x[j] = L * static_cast<double>(j) / static_cast<double>(n_x - 1);
        return g;
    }
};

struct FieldSolution {
    FieldGrid u;
    FieldGrid u_t;
    FieldGrid caputo;
};

namespace detail {

inline void check_grid(const IntervalProblem& p, const GridSpec& g)
{
    if (g.t.empty() || g.x.empty())
        throw_domain("solve_field", "grid must contain at least one time and one point");
    for (double t : g.t)
        if (!(t >= 0.0) || !std::isfinite(t))
            throw_domain("solve_field", "times must be finite and non-negative");
    for (double x : g.x)
        if (!(x >= 0.0 && x <= p.L))
            throw_domain("solve_field", "points must lie in [0, L]");
}

}  // namespace detail

/// u, u_t and d^a u on the grid for the given modal state. Modes are summed in
/// ascending order at every point; rows are distributed over threads.
inline FieldSolution solve_fields(const IntervalProblem& p, const SpectralState& s, const GridSpec& g,
                                  unsigned threads = 1)
{
    p.validate();
    detail::check_grid(p, g);
    if (s.count() != p.n_modes)
        detail::throw_domain("solve_field", "state size does not match n_modes");
    const std::size_t nx = g.x.size();
    const std::size_t nt = g.t.size();
    const std::size_t modes = p.n_modes;

    std::vector<double> basis(modes * nx);
    for (std::size_t n = 0; n < modes; ++n) {
        const Eigenpair e = eigenpair(p, n + 1);
        for (std::size_t j = 0; j < nx; ++j)
            basis[n * nx + j] = e(g.x[j]);
    }

    FieldSolution out;
    for (FieldGrid* f : {&out.u, &out.u_t, &out.caputo}) {
        f->x = g.x;
        f->t = g.t;
        f->values.assign(nt * nx, 0.0);
    }
    parallel_for(nt, threads, [&](std::size_t i) {
        const ModalTrajectory m = evolve(s, g.t[i]);
        for (std::size_t j = 0; j < nx; ++j) {
            double u = 0.0, du = 0.0, da = 0.0;
            for (std::size_t n = 0; n < modes; ++n) {
                const double e = basis[n * nx + j];
                u += m.u[n] * e;
                du += m.du[n] * e;
                da += m.d_alpha_u[n] * e;
            }
            out.u.values[i * nx + j] = u;
            out.u_t.values[i * nx + j] = du;
            out.caputo.values[i * nx + j] = da;
        }
    });
    return out;
}

inline SpectralState project_state(const IntervalProblem& p, double alpha, const std::function<double(double)>& u0,
                                   const std::function<double(double)>& u1,
                                   DataClass declared = DataClass::weak_data)
{
    return SpectralState(project(p, u0), project(p, u1), alpha, spectral_operator(p), declared);
}

/// u(t, x) for initial data u0, u1 given as functions on [0, L].
inline FieldGrid solve_field(const IntervalProblem& p, double alpha, const std::function<double(double)>& u0,
                             const std::function<double(double)>& u1, const GridSpec& g, unsigned threads = 1)
{
    return solve_fields(p, project_state(p, alpha, u0, u1), g, threads).u;
}

/// (u_t, d^a u) on the grid.
inline std::pair<FieldGrid, FieldGrid> field_velocity_and_caputo(const IntervalProblem& p, double alpha,
                                                                 const std::function<double(double)>& u0,
                                                                 const std::function<double(double)>& u1,
                                                                 const GridSpec& g, unsigned threads = 1)
{
    FieldSolution f = solve_fields(p, project_state(p, alpha, u0, u1), g, threads);
    return {std::move(f.u_t), std::move(f.caputo)};
}

}  // namespace fracspec
