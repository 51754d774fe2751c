#pragma once

// Gamma function and the two-parameter Mittag-Leffler function on the real axis.
//
// E_{a,b}(x) = sum_k x^k / Gamma(a k + b) is evaluated by two branches:
//   * the power series, accumulated in a wide float type so that the
//     cancellation for large negative x does not destroy the result;
//   * for x < -R the large-argument expansion
//       E_{a,b}(-y) ~ (2/a) Re[z^{1-b} exp(z)]  (z = y^{1/a} e^{i pi/a}, 1 < a <= 2)
//                     + sum_{k>=1} (-1)^{k-1} y^{-k} / Gamma(b - a k).
// The crossover R = rho^a is chosen from rho = |x|^{1/a}, the variable that
// controls both the series cancellation (~exp(rho)) and the asymptotic error
// (~exp(-rho)).

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracspec/detail/compensated_sum.hpp"
#include "fracspec/detail/extended_float.hpp"
#include "fracspec/errors.hpp"

namespace fracspec {

struct MLParams {
    double alpha = 1.0;
    double beta = 1.0;
    double x = 0.0;
};

enum class MLBranch { series, asymptotic };

inline const char* to_string(MLBranch b)
{
    return b == MLBranch::series ? "series" : "asymptotic";
}

struct EvalResult {
    double value = 0.0;
    double est_abs_error = 0.0;
    int terms_used = 0;
    MLBranch branch = MLBranch::series;
};

struct MLConfig {
    int series_term_cap = 10000;
    int asymptotic_term_cap = 400;
    // Switch point in terms of rho = |x|^{1/alpha}.
    double crossover_rho = 30.0;
    // Negative-argument series with rho above this use binary128 accumulation.
    double long_double_rho = 12.0;
};

inline constexpr double default_ml_tol = 1e-16;

/// sin(pi x), exact zero at integers.
inline double sinpi(double x)
{
    if (!std::isfinite(x))
        return std::numeric_limits<double>::quiet_NaN();
    double r = std::fmod(x, 2.0);  // exact, r in (-2, 2)
    if (r > 1.0)
        r -= 2.0;
    else if (r <= -1.0)
        r += 2.0;
    // r in (-1, 1]
    if (r == 0.0 || r == 1.0)
        return 0.0;
    const double sign = r < 0 ? -1.0 : 1.0;
    double a = std::fabs(r);  // (0, 1)
    if (a > 0.5)
        a = 1.0 - a;  // sin(pi a) = sin(pi (1 - a))
    if (a <= 0.25)
        return sign * std::sin(std::numbers::pi * a);
    return sign * std::cos(std::numbers::pi * (0.5 - a));
}

namespace detail {

inline constexpr double gamma_overflow_threshold = 171.62437695630271;

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients).
inline double lanczos_gamma(double x)
{
    static constexpr double g = 607.0 / 128.0;
    static constexpr std::array<double, 15> c = {
        0.99999999999999709182,    57.156235665862923517,    -59.597960355475491248,
        14.136097974741747174,     -0.49191381609762019978,  .33994649984811888699e-4,
        .46523628927048575665e-4,  -.98374475304879564677e-4, .15808870322491248884e-3,
        -.21026444172410488319e-3, .21743961811521264320e-3,  -.16431810653676389022e-3,
        .84418223983852743293e-4,  -.26190838401581408670e-4, .36899182659531622704e-5};
    const double z = x - 1.0;
    double a = c[0];
    for (std::size_t i = 1; i < c.size(); ++i)
        a += c[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    // t^{z+1/2} split in two halves so that large z does not overflow early.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * a * half * (half * std::exp(-t));
}

// Stirling series for ln Gamma(z), accurate to rounding for z >= 10.
inline double log_gamma_large(double z)
{
    const double inv = 1.0 / z;
    const double inv2 = inv * inv;
    const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

inline double factorial_gamma(int n)
{
    double r = 1.0;
    for (int i = 2; i < n; ++i)
        r *= i;
    return r;
}

}  // namespace detail

/// Euler Gamma function. Throws pole_error at non-positive integers and
/// overflow_error above ~171.62.
inline double gamma(double x)
{
    if (std::isnan(x))
        return x;
    if (detail::is_nonpositive_integer(x))
        throw pole_error("gamma: pole at " + std::to_string(x));
    if (x > detail::gamma_overflow_threshold)
        throw overflow_error("gamma: overflow at " + std::to_string(x));
    if (x == std::floor(x) && x <= 23.0)
        return detail::factorial_gamma(static_cast<int>(x));
    if (x < 0.5) {
        const double reflected = 1.0 - x;
        const double s = sinpi(x);
        if (reflected > detail::gamma_overflow_threshold)
            return std::numbers::pi / s / std::exp(detail::log_gamma_large(reflected));
        return std::numbers::pi / (s * gamma(reflected));
    }
    return detail::lanczos_gamma(x);
}

/// 1/Gamma(x); entire, zero at the poles of Gamma.
inline double rgamma(double x)
{
    if (std::isnan(x))
        return x;
    if (detail::is_nonpositive_integer(x))
        return 0.0;
    if (x > detail::gamma_overflow_threshold)
        return std::exp(-detail::log_gamma_large(x));
    if (x < 0.5) {
        const double reflected = 1.0 - x;
        if (reflected > detail::gamma_overflow_threshold)
            throw overflow_error("rgamma: overflow at " + std::to_string(x));
        return sinpi(x) * gamma(reflected) / std::numbers::pi;
    }
    return 1.0 / gamma(x);
}

/// Smallest |x| at which ml_asymptotic accepts a call.
inline double asymptotic_floor(double alpha, double beta, const MLConfig& cfg = {})
{
    const double classic = std::max(10.0, std::pow(5.0 * gamma(alpha + beta), 1.0 / alpha));
    return std::min(classic, std::pow(cfg.crossover_rho, alpha));
}

/// |x| beyond which mittag_leffler uses the asymptotic branch.
inline double crossover_radius(double alpha, [[maybe_unused]] double beta, const MLConfig& cfg = {})
{
    return std::pow(cfg.crossover_rho, alpha);
}

namespace detail {

inline void check_ml_params(const MLParams& p, const char* where)
{
    if (!(p.alpha > 0.0) || !std::isfinite(p.alpha))
        throw_domain(where, "alpha must be positive");
    if (!(p.beta > 0.0) || !std::isfinite(p.beta))
        throw_domain(where, "beta must be positive");
    if (!std::isfinite(p.x))
        throw_domain(where, "x must be finite");
}

// Gamma(a k + b) for k = 0, 1, ... memoised per thread for the most recent
// (a, b) pairs. Entries are computed exactly as without the memo, so results
// do not depend on call history.
template <class Real>
class GammaLadder {
public:
    static GammaLadder& local()
    {
        thread_local GammaLadder ladder;
        return ladder;
    }

    const std::vector<Real>& table(double alpha, double beta, std::size_t need)
    {
        Entry* e = nullptr;
        for (Entry& c : entries_)
            if (c.alpha == alpha && c.beta == beta)
                e = &c;
        if (e == nullptr) {
            if (entries_.size() < slots) {
                entries_.push_back({alpha, beta, {}});
                e = &entries_.back();
            } else {
                e = &entries_[next_];
                *e = {alpha, beta, {}};
                next_ = (next_ + 1) % slots;
            }
        }
        const Real a = alpha;
        const Real b = beta;
        for (std::size_t k = e->gamma.size(); k < need; ++k)
            e->gamma.push_back(ExtendedMath<Real>::tgamma(a * Real(static_cast<int>(k)) + b));
        return e->gamma;
    }

private:
    static constexpr std::size_t slots = 16;
    struct Entry {
        double alpha;
        double beta;
        std::vector<Real> gamma;
    };
    std::vector<Entry> entries_;
    std::size_t next_ = 0;
};

template <class Real>
EvalResult ml_series_impl(const MLParams& p, double tol, int cap)
{
    using M = ExtendedMath<Real>;
    GammaLadder<Real>& ladder = GammaLadder<Real>::local();
    constexpr std::size_t chunk = 64;
    const std::vector<Real>* gammas = &ladder.table(p.alpha, p.beta, chunk);
    const Real x = p.x;
    NeumaierSum<Real> sum;
    Real magnitude = 0;
    Real power = 1;
    Real prev_abs = 0;
    for (int k = 0; k < cap; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        if (kk >= gammas->size())
            gammas = &ladder.table(p.alpha, p.beta, kk + chunk);
        const Real term = power / (*gammas)[kk];
        const Real term_abs = M::abs(term);
        sum.add(term);
        magnitude += term_abs;
        if (!M::isfinite(magnitude))
            throw overflow_error("ml_series: overflow for x = " + std::to_string(p.x));
        if (k > 0 && term_abs < Real(tol)) {
            // Gamma is log-convex, so successive term ratios never increase.
            const Real ratio = term_abs / prev_abs;
            if (ratio < Real(1)) {
                const Real tail = term_abs * ratio / (Real(1) - ratio);
                if (tail < Real(tol)) {
                    const double value = static_cast<double>(sum.value());
                    if (!std::isfinite(value))
                        throw overflow_error("ml_series: result overflows double");
                    const double rounding =
                        static_cast<double>(Real(4) * M::epsilon * magnitude) +
                        0.5 * std::numeric_limits<double>::epsilon() * std::fabs(value);
                    return {value, static_cast<double>(tail) + rounding, k + 1, MLBranch::series};
                }
            }
        }
        prev_abs = term_abs;
        power *= x;
    }
    throw convergence_error("ml_series: no convergence within " + std::to_string(cap) + " terms");
}

// Treat arguments within a few ulps of a non-positive integer as poles of Gamma.
inline bool near_pole(double s)
{
    if (s > 0.5)
        return false;
    const double n = std::nearbyint(s);
    return std::fabs(s - n) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::fabs(s));
}

// (-1)^{k-1} y^{-k} / Gamma(beta - alpha k). For very negative arguments
// 1/Gamma overflows while y^{-k} underflows, so the product goes through logs.
inline double asymptotic_term(double alpha, double beta, double y, int k)
{
    const double arg = beta - alpha * k;
    if (near_pole(arg))
        return 0.0;
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    if (arg > -150.0)
        return sign * std::pow(y, -static_cast<double>(k)) * rgamma(arg);
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi
    const double log_mag = log_gamma_large(1.0 - arg) - k * std::log(y);
    return sign * sinpi(arg) * std::exp(log_mag) / std::numbers::pi;
}

// |asymptotic_term| with the oscillating factor sin(pi (beta - alpha k)) dropped:
// y^{-k} Gamma(alpha k + 1 - beta) / pi once the Gamma argument is negative.
// Decides truncation, since single terms can sit arbitrarily close to a zero.
inline double asymptotic_envelope(double alpha, double beta, double y, int k)
{
    const double arg = beta - alpha * k;
    if (near_pole(arg))
        return 0.0;
    if (arg > 0.0)
        return std::pow(y, -static_cast<double>(k)) * std::fabs(rgamma(arg));
    const double z = 1.0 - arg;
    const double log_gamma = z >= 10.0 ? log_gamma_large(z) : std::log(gamma(z));
    return std::exp(log_gamma - k * std::log(y)) / std::numbers::pi;
}

struct SaddlePart {
    double value = 0.0;
    double envelope = 0.0;  // |value| without the oscillating factor
    double phase = 0.0;
};

// Exponentially small (or, at alpha = 2, oscillating) saddle contribution.
inline SaddlePart asymptotic_exponential_part(double alpha, double beta, double y)
{
    if (alpha < 1.0)
        return {};
    const double rho = std::pow(y, 1.0 / alpha);
    if (alpha == 1.0) {
        const double envelope = std::pow(rho, 1.0 - beta) * std::exp(-rho);
        return {envelope * std::cos((1.0 - beta) * std::numbers::pi), envelope, 0.0};
    }
    const double theta = std::numbers::pi / alpha;
    const double envelope = (2.0 / alpha) * std::pow(rho, 1.0 - beta) * std::exp(rho * std::cos(theta));
    const double phase = rho * std::sin(theta) + (1.0 - beta) * theta;
    return {envelope * std::cos(phase), envelope, phase};
}

}  // namespace detail

/// Power series summed in ascending order with compensated accumulation.
inline EvalResult ml_series(const MLParams& p, double tol, const MLConfig& cfg = {})
{
    detail::check_ml_params(p, "ml_series");
    if (!(tol > 0.0))
        detail::throw_domain("ml_series", "tol must be positive");
    if (p.x == 0.0)
        return {rgamma(p.beta), 0.0, 1, MLBranch::series};
    const double rho = std::pow(std::fabs(p.x), 1.0 / p.alpha);
    if (p.x < 0.0 && rho > cfg.long_double_rho)
        return detail::ml_series_impl<detail::WidestFloat>(p, tol, cfg.series_term_cap);
    return detail::ml_series_impl<long double>(p, tol, cfg.series_term_cap);
}

/// Large negative argument expansion, truncated at k_max terms or where the
/// term magnitudes start to grow, whichever comes first. est_abs_error is the
/// magnitude bound of the first omitted term that is not a pole, plus rounding.
inline EvalResult ml_asymptotic(const MLParams& p, int k_max, const MLConfig& cfg = {})
{
    detail::check_ml_params(p, "ml_asymptotic");
    if (p.alpha > 2.0)
        detail::throw_domain("ml_asymptotic", "alpha must lie in (0, 2]");
    if (k_max < 0)
        detail::throw_domain("ml_asymptotic", "k_max must be non-negative");
    if (!(p.x < 0.0) || -p.x < asymptotic_floor(p.alpha, p.beta, cfg))
        detail::throw_domain("ml_asymptotic", "x = " + std::to_string(p.x) + " is inside the series region");

    const double y = -p.x;
    const detail::SaddlePart saddle = detail::asymptotic_exponential_part(p.alpha, p.beta, y);
    const double exponential = saddle.value;
    detail::NeumaierSum<double> sum;
    sum.add(exponential);
    double magnitude = std::fabs(exponential);
    double last_envelope = std::numeric_limits<double>::infinity();
    double omitted = 0.0;
    int used = 0;
    int k = 1;
    for (; k <= k_max; ++k) {
        const double term = detail::asymptotic_term(p.alpha, p.beta, y, k);
        const double envelope = detail::asymptotic_envelope(p.alpha, p.beta, y, k);
        if (envelope == 0.0) {
            used = k;
            continue;
        }
        if (envelope > last_envelope) {
            omitted = envelope;
            break;
        }
        if (envelope < 1e-3 * std::numeric_limits<double>::epsilon() * std::fabs(sum.value())) {
            // Everything from here on is below rounding.
            omitted = envelope;
            break;
        }
        sum.add(term);
        magnitude += std::fabs(term);
        last_envelope = envelope;
        used = k;
    }
    if (k > k_max) {
        // Look a few indices past the cut for the next term that is not a pole.
        for (int j = k_max + 1; j <= k_max + 4 && omitted == 0.0; ++j)
            omitted = detail::asymptotic_envelope(p.alpha, p.beta, y, j);
    }
    const double value = sum.value();
    // Each algebraic term carries the error of rgamma and pow (under 8 ulps);
    // the phase of the saddle part an absolute error of order eps * phase.
    const double rounding = std::numeric_limits<double>::epsilon() *
                            (16.0 * magnitude + 4.0 * saddle.envelope * (1.0 + std::fabs(saddle.phase)));
    return {value, omitted + rounding, used, MLBranch::asymptotic};
}

/// E_{alpha,beta}(x) for real x, alpha in (0, 2].
inline EvalResult mittag_leffler(const MLParams& p, double tol, const MLConfig& cfg = {})
{
    detail::check_ml_params(p, "mittag_leffler");
    if (p.alpha > 2.0)
        detail::throw_domain("mittag_leffler", "alpha must lie in (0, 2]");
    if (!(tol > 0.0))
        detail::throw_domain("mittag_leffler", "tol must be positive");
    if (p.x < 0.0 && -p.x > crossover_radius(p.alpha, p.beta, cfg))
        return ml_asymptotic(p, cfg.asymptotic_term_cap, cfg);
    return ml_series(p, tol, cfg);
}

/// Value-only shorthand with the default tolerance.
inline double mittag_leffler(double alpha, double beta, double x)
{
    return mittag_leffler(MLParams{alpha, beta, x}, default_ml_tol).value;
}

struct PowerRatioMax {
    double argmax = 0.0;
    double max_value = 0.0;
};

/// Maximiser and maximum of x^beta / (1 + x) over x >= 0, 0 < beta < 1.
inline PowerRatioMax power_ratio_max(double beta)
{
    if (!(beta > 0.0 && beta < 1.0))
        detail::throw_domain("power_ratio_max", "beta must lie in (0, 1)");
    return {beta / (1.0 - beta), std::pow(beta, beta) * std::pow(1.0 - beta, 1.0 - beta)};
}

}  // namespace fracspec
