#pragma once

// Spectral solution of  d^a u + A u = 0,  u(0) = u0,  u'(0) = u1,  a in (1, 2),
// for a self-adjoint positive A with simple eigenvalues. Each mode is the
// scalar problem with lambda = lambda_n.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fracspec/errors.hpp"
#include "fracspec/parallel.hpp"
#include "fracspec/scalar_fode.hpp"

namespace fracspec {

/// Eigenvalues lambda_1 < lambda_2 < ... < lambda_N of A, with lambda_1 >= a > 0.
class SpectralOperator {
public:
    explicit SpectralOperator(std::vector<double> eigenvalues, std::optional<double> coercivity = std::nullopt)
        : eigenvalues_(std::move(eigenvalues))
    {
        if (eigenvalues_.empty())
            detail::throw_domain("SpectralOperator", "need at least one eigenvalue");
        for (std::size_t n = 0; n < eigenvalues_.size(); ++n) {
            if (!std::isfinite(eigenvalues_[n]))
                detail::throw_domain("SpectralOperator", "eigenvalues must be finite");
            if (n > 0 && !(eigenvalues_[n] > eigenvalues_[n - 1]))
                detail::throw_domain("SpectralOperator", "eigenvalues must be strictly increasing");
        }
        coercivity_ = coercivity.value_or(eigenvalues_.front());
        if (!(coercivity_ > 0.0))
            detail::throw_domain("SpectralOperator", "coercivity constant must be positive");
        if (eigenvalues_.front() < coercivity_)
            detail::throw_domain("SpectralOperator", "lambda_1 is below the coercivity constant");
    }

    [[nodiscard]] std::size_t count() const { return eigenvalues_.size(); }
    [[nodiscard]] double coercivity() const { return coercivity_; }
    [[nodiscard]] double operator[](std::size_t n) const { return eigenvalues_[n]; }
    [[nodiscard]] std::span<const double> eigenvalues() const { return eigenvalues_; }

private:
    std::vector<double> eigenvalues_;
    double coercivity_ = 1.0;
};

enum class DataClass { weak_data, strong_data };

inline const char* to_string(DataClass c) { return c == DataClass::strong_data ? "strong_data" : "weak_data"; }

/// Modal coefficients of (u0, u1). `declared` records whether the caller
/// projected the data from D(A) x D(A^{1/2}).
struct SpectralState {
    std::vector<double> c0;
    std::vector<double> c1;
    double alpha;
    SpectralOperator op;
    DataClass declared = DataClass::weak_data;

    SpectralState(std::vector<double> c0_, std::vector<double> c1_, double alpha_, SpectralOperator op_,
                  DataClass declared_ = DataClass::weak_data)
        : c0(std::move(c0_)), c1(std::move(c1_)), alpha(alpha_), op(std::move(op_)), declared(declared_)
    {
        if (c0.size() != op.count() || c1.size() != op.count())
            detail::throw_domain("SpectralState", "coefficient vectors must match the operator size");
        if (!(alpha > 1.0 && alpha < 2.0))
            detail::throw_domain("SpectralState", "alpha must lie in (1, 2)");
    }

    [[nodiscard]] std::size_t count() const { return op.count(); }
    [[nodiscard]] ScalarProblem mode(std::size_t n) const { return {alpha, op[n], c0[n], c1[n]}; }
};

/// u, u', d^a u and I^{2-a}(u' - u1) per mode at one time.
struct ModalTrajectory {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> d_alpha_u;
    std::vector<double> memory;
};

inline ModalTrajectory evolve(const SpectralState& s, double t, unsigned threads = 1)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        detail::throw_domain("evolve", "t must be finite and non-negative");
    const std::size_t n = s.count();
    ModalTrajectory out{t, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                        std::vector<double>(n)};
    parallel_for(n, threads, [&](std::size_t k) {
        const ScalarProblem p = s.mode(k);
        out.u[k] = scalar_solution(p, t);
        out.du[k] = scalar_velocity(p, t);
        out.d_alpha_u[k] = -p.lambda * out.u[k];
        out.memory[k] = scalar_memory(p, t);
    });
    return out;
}

/// ||A^theta c|| = (sum lambda_n^{2 theta} c_n^2)^{1/2}; theta < 0 gives the dual norm.
inline double frac_power_norm(double theta, std::span<const double> coeffs, const SpectralOperator& op)
{
    if (coeffs.size() != op.count())
        detail::throw_domain("frac_power_norm", "coefficient vector must match the operator size");
    double sum = 0.0;
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        const double w = theta == 0.0 ? 1.0 : std::pow(op[n], 2.0 * theta);
        sum += w * coeffs[n] * coeffs[n];
    }
    return std::sqrt(sum);
}

enum class ResidualMode { finite_difference, analytic };

/// d/dt <I^{2-a}(u' - u1), e_m> + lambda_m <u, e_m>, with the time derivative
/// taken by central differences of the closed-form memory term (or exactly,
/// via d/dt [t E_{a,2}] = E_{a,1} and d/dt [t^2 E_{a,3}] = t E_{a,2}). m is 1-based.
inline double weak_residual(const SpectralState& s, double t, std::size_t m, double dt_fd,
                            ResidualMode mode = ResidualMode::finite_difference)
{
    if (m < 1 || m > s.count())
        detail::throw_domain("weak_residual", "mode index " + std::to_string(m) + " out of range");
    const ScalarProblem p = s.mode(m - 1);
    if (mode == ResidualMode::analytic) {
        if (!(t >= 0.0))
            detail::throw_domain("weak_residual", "t must be non-negative");
        const double z = -p.lambda * std::pow(t, p.alpha);
        const double rate = t == 0.0 ? -p.lambda * p.x0
                                     : -p.lambda * (p.x0 * mittag_leffler(p.alpha, 1.0, z) +
                                                    p.y0 * t * mittag_leffler(p.alpha, 2.0, z));
        return rate + p.lambda * scalar_solution(p, t);
    }
    if (!(dt_fd > 0.0) || !(t > dt_fd))
        detail::throw_domain("weak_residual", "need t > dt_fd > 0");
    const double rate = (scalar_memory(p, t + dt_fd) - scalar_memory(p, t - dt_fd)) / (2.0 * dt_fd);
    return rate + p.lambda * scalar_solution(p, t);
}

struct ThetaWindow {
    double lo;
    double hi;
};

/// ((2 - a) / (2 a), 1/2): the range of theta with u' in C([0,T]; D(A^{-theta})).
inline ThetaWindow theta_window(double alpha)
{
    if (!(alpha > 1.0 && alpha < 2.0))
        detail::throw_domain("theta_window", "alpha must lie in (1, 2)");
    return {(2.0 - alpha) / (2.0 * alpha), 0.5};
}

struct EnergyBound {
    double max_ratio = 0.0;
    double argmax_t = 0.0;
};

/// max over t_i = i T / samples of ||A^{1/2} u(t)||^2 / (||A^{1/2} u0||^2 + T^{2-a} ||u1||^2).
inline EnergyBound energy_bound_check(const SpectralState& s, double T, std::size_t samples, unsigned threads = 1)
{
    if (!(T > 0.0) || !std::isfinite(T))
        detail::throw_domain("energy_bound_check", "T must be positive");
    if (samples < 1)
        detail::throw_domain("energy_bound_check", "need at least one sample interval");
    const double denom = std::pow(frac_power_norm(0.5, s.c0, s.op), 2) +
                         std::pow(T, 2.0 - s.alpha) * std::pow(frac_power_norm(0.0, s.c1, s.op), 2);
    if (!(denom > 0.0))
        detail::throw_domain("energy_bound_check", "zero initial data");
    std::vector<double> ratio(samples + 1);
    parallel_for(samples + 1, threads, [&](std::size_t i) {
        const double t = T * static_cast<double>(i) / static_cast<double>(samples);
        double energy = 0.0;
        for (std::size_t n = 0; n < s.count(); ++n) {
            const double u = scalar_solution(s.mode(n), t);
            energy += s.op[n] * u * u;
        }
        ratio[i] = energy / denom;
    });
    EnergyBound out;
    for (std::size_t i = 0; i <= samples; ++i) {
        if (ratio[i] > out.max_ratio) {
            out.max_ratio = ratio[i];
            out.argmax_t = T * static_cast<double>(i) / static_cast<double>(samples);
        }
    }
    return out;
}

enum class DecayModel { none, power };

struct RegularityReport {
    DataClass data_class = DataClass::weak_data;
    double u0_h = 0.0;       // ||u0||
    double u0_sqrt_a = 0.0;  // ||A^{1/2} u0||
    double u1_h = 0.0;       // ||u1||
    std::optional<double> u0_a;       // ||A u0||, strong data only
    std::optional<double> u1_sqrt_a;  // ||A^{1/2} u1||, strong data only
    // Least-squares slope p of log|c_n| against log n (|c_n| ~ n^{-p}), over
    // the nonzero coefficients of u0 and u1 together; DecayModel::power only.
    std::optional<double> decay_exponent;
};

namespace detail {

inline std::optional<double> fit_decay_exponent(const SpectralState& s)
{
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t n = 0; n < s.count(); ++n) {
        for (double c : {s.c0[n], s.c1[n]}) {
            if (c == 0.0)
                continue;
            const double x = std::log(static_cast<double>(n + 1));
            const double y = std::log(std::fabs(c));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++count;
        }
    }
    const double cn = static_cast<double>(count);
    const double det = cn * sxx - sx * sx;
    if (count < 2 || !(std::fabs(det) > 0.0))
        return std::nullopt;
    return -(cn * sxy - sx * sy) / det;
}

}  // namespace detail

/// Finite coefficient vectors have every norm finite, so the class is the
/// caller's declaration; the norms are attached for reporting.
inline RegularityReport classify_regularity(const SpectralState& s, DecayModel decay_model = DecayModel::none)
{
    RegularityReport r;
    r.data_class = s.declared;
    r.u0_h = frac_power_norm(0.0, s.c0, s.op);
    r.u0_sqrt_a = frac_power_norm(0.5, s.c0, s.op);
    r.u1_h = frac_power_norm(0.0, s.c1, s.op);
    if (s.declared == DataClass::strong_data) {
        r.u0_a = frac_power_norm(1.0, s.c0, s.op);
        r.u1_sqrt_a = frac_power_norm(0.5, s.c1, s.op);
    }
    if (decay_model == DecayModel::power)
        r.decay_exponent = detail::fit_decay_exponent(s);
    return r;
}

/// (||A^{1/2} u0_tail||^2 + T^{2-a} ||u1_tail||^2)^{1/2} over modes keep+1..N:
/// a heuristic (unit constant) indicator of the truncation error on [0, T].
inline double tail_bound(const SpectralState& s, double T, std::size_t keep)
{
    if (!(T > 0.0))
        detail::throw_domain("tail_bound", "T must be positive");
    const double scale = std::pow(T, 2.0 - s.alpha);
    double sum = 0.0;
    for (std::size_t n = keep; n < s.count(); ++n)
        sum += s.op[n] * s.c0[n] * s.c0[n] + scale * s.c1[n] * s.c1[n];
    return std::sqrt(sum);
}

}  // namespace fracspec
