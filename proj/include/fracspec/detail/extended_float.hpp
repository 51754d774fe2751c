#pragma once

#include <cfloat>
#include <cmath>

#if defined(FRACSPEC_HAVE_FLOAT128)
#include <quadmath.h>
#endif

namespace fracspec::detail {

// Arithmetic helpers for the wide accumulators used by the Mittag-Leffler series.
template <class Real>
struct ExtendedMath;

template <>
struct ExtendedMath<long double> {
    static constexpr long double epsilon = LDBL_EPSILON;
    static long double tgamma(long double x) { return std::tgamma(x); }
    static long double abs(long double x) { return std::fabs(x); }
    static bool isfinite(long double x) { return std::isfinite(x); }
};

#if defined(FRACSPEC_HAVE_FLOAT128)
using float128 = __float128;

template <>
struct ExtendedMath<float128> {
    static constexpr float128 epsilon = 0x1p-112;  // FLT128_EPSILON
    static float128 tgamma(float128 x) { return ::tgammaq(x); }
    static float128 abs(float128 x) { return ::fabsq(x); }
    static bool isfinite(float128 x) { return ::finiteq(x) != 0; }
};

using WidestFloat = float128;
inline constexpr bool have_float128 = true;
#else
using WidestFloat = long double;
inline constexpr bool have_float128 = false;
#endif

}  // namespace fracspec::detail
