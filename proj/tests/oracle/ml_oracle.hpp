#pragma once

// Reference Mittag-Leffler values from the plain power series in 100-digit
// decimal arithmetic. Slow, but independent of everything in include/.

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle {

using big = boost::multiprecision::cpp_dec_float_100;

/// E_{a,b}(x) by direct summation. Reliable while exp(|x|^{1/a}) stays well
/// below 1e80, i.e. |x|^{1/a} < ~150.
inline double mittag_leffler(double alpha, double beta, double x)
{
    const big a(alpha), b(beta), z(x);
    big sum = 0, power = 1;
    const big eps("1e-60");
    for (int k = 0; k < 20000; ++k) {
        const big term = power / boost::multiprecision::tgamma(a * k + b);
        sum += term;
        if (k > 5 && abs(term) < eps * (1 + abs(sum)) && abs(term * z) < eps * (1 + abs(sum)))
            return sum.convert_to<double>();
        power *= z;
    }
    throw std::runtime_error("oracle series did not converge");
}

}  // namespace oracle
