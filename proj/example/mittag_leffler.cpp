// Tabulate E_{a,1}(-x) for a few orders and show which branch answered.

#include <cstdio>

#include "fracspec/special_functions.hpp"

int main()
{
    std::printf("%8s %6s %24s %10s %s\n", "x", "alpha", "E", "est_err", "branch");
    for (double alpha : {1.2, 1.5, 1.8}) {
        for (double x : {0.5, 5.0, 50.0, 500.0, 5000.0}) {
            const fracspec::EvalResult r = fracspec::mittag_leffler({alpha, 1.0, -x}, fracspec::default_ml_tol);
            std::printf("%8g %6.2f %24.16e %10.2e %s\n", x, alpha, r.value, r.est_abs_error,
                        fracspec::to_string(r.branch));
        }
    }
}
