// d^a u = -lambda u: closed form against the L1 stepper under refinement.

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fracspec/scalar_fode.hpp"

int main()
{
    const fracspec::ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    const double T = 1.0;
    double prev = 0.0;
    for (double dt : {4e-3, 2e-3, 1e-3}) {
        const auto n = static_cast<std::size_t>(std::lround(T / dt));
        const fracspec::SampledFunction u = fracspec::l1_stepper(p, dt, n);
        double err = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            err = std::max(err, std::fabs(u(i) - fracspec::scalar_solution(p, u.time(i))));
        if (prev > 0.0)
            std::printf("dt=%.0e  sup err %.3e  order %.3f\n", dt, err, std::log2(prev / err));
        else
            std::printf("dt=%.0e  sup err %.3e\n", dt, err);
        prev = err;
    }
    std::printf("expected order 3 - alpha = %.2f\n", 3.0 - p.alpha);
}
