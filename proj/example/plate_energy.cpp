// Hinged plate with parabolic initial displacement: energy ratio and the
// time derivative of the memory term against -lambda u, mode by mode.

#include <cmath>
#include <cstdio>

#include "fracspec/model_problems.hpp"

int main()
{
    fracspec::IntervalProblem p;
    p.kind = fracspec::ProblemKind::petrovsky;
    p.n_modes = 24;
    const double L = p.L;
    const fracspec::SpectralState s = fracspec::project_state(
        p, 1.6, [L](double x) { return x * (L - x); }, [](double) { return 0.0; });

    const fracspec::EnergyBound e = fracspec::energy_bound_check(s, 3.0, 300);
    std::printf("max energy ratio %.6f at t = %.3f\n", e.max_ratio, e.argmax_t);

    double worst = 0.0;
    for (std::size_t m = 1; m <= s.count(); ++m)
        for (double t : {0.25, 1.0, 2.5})
            worst = std::fmax(worst, std::fabs(fracspec::weak_residual(s, t, m, 1e-5)));
    std::printf("largest weak-form residual %.3e\n", worst);

    const fracspec::GridSpec g = fracspec::GridSpec::uniform(3.0, 6, L, 9);
    const fracspec::FieldGrid u = fracspec::solve_fields(p, s, g).u;
    for (std::size_t i = 0; i < u.t.size(); ++i) {
        std::printf("t=%.1f", u.t[i]);
        for (std::size_t j = 0; j < u.x.size(); ++j)
            std::printf(" %9.5f", u(i, j));
        std::printf("\n");
    }
}
