#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fracspec/spectral_core.hpp"
#include "oracle/ml_oracle.hpp"

using namespace fracspec;

namespace {

SpectralOperator squares(std::size_t n)
{
    std::vector<double> l(n);
    for (std::size_t k = 0; k < n; ++k)
        l[k] = static_cast<double>((k + 1) * (k + 1));
    return SpectralOperator(l);
}

SpectralState random_state(std::mt19937_64& rng, std::size_t n, double alpha)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> c0(n), c1(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double decay = 1.0 / std::pow(static_cast<double>(k + 1), 2.0);
        c0[k] = u(rng) * decay;
        c1[k] = u(rng) * decay;
    }
    return SpectralState(c0, c1, alpha, squares(n));
}

}  // namespace

TEST(SpectralOperator, Validation)
{
    EXPECT_THROW(SpectralOperator({}), domain_error);
    EXPECT_THROW(SpectralOperator({2.0, 1.0}), domain_error);
    EXPECT_THROW(SpectralOperator({1.0, 1.0}), domain_error);
    EXPECT_THROW(SpectralOperator({-1.0, 2.0}), domain_error);
    EXPECT_THROW(SpectralOperator({1.0, 2.0}, 1.5), domain_error);
    EXPECT_EQ(SpectralOperator({1.0, 2.0}).coercivity(), 1.0);
}

TEST(SpectralState, Validation)
{
    EXPECT_THROW(SpectralState({1.0}, {0.0, 0.0}, 1.5, squares(2)), domain_error);
    EXPECT_THROW(SpectralState({1.0}, {0.0}, 2.0, squares(1)), domain_error);
}

TEST(Evolve, InitialConditions)
{
    const SpectralState s({0.3, -0.2}, {1.0, 0.5}, 1.5, squares(2));
    const ModalTrajectory m = evolve(s, 0.0);
    EXPECT_EQ(m.u, s.c0);
    EXPECT_EQ(m.du, s.c1);
    EXPECT_EQ(m.memory, std::vector<double>(2, 0.0));
}

TEST(Evolve, SingleModeAtOne)
{
    const SpectralState s({1.0}, {0.0}, 1.5, SpectralOperator({1.0}));
    EXPECT_NEAR(evolve(s, 1.0).u[0], oracle::mittag_leffler(1.5, 1.0, -1.0), 1e-14);
}

TEST(Evolve, ModalEquationHoldsExactly)
{
    std::mt19937_64 rng(13);
    const SpectralState s = random_state(rng, 24, 1.35);
    for (double t : {0.1, 0.7, 3.0}) {
        const ModalTrajectory m = evolve(s, t);
        for (std::size_t n = 0; n < s.count(); ++n)
            ASSERT_EQ(m.d_alpha_u[n], -s.op[n] * m.u[n]);
    }
}

TEST(Evolve, ThreadCountDoesNotChangeResult)
{
    std::mt19937_64 rng(17);
    const SpectralState s = random_state(rng, 64, 1.7);
    const ModalTrajectory a = evolve(s, 1.3, 1), b = evolve(s, 1.3, 8);
    EXPECT_EQ(a.u, b.u);
    EXPECT_EQ(a.du, b.du);
    EXPECT_EQ(a.memory, b.memory);
}

TEST(FracPowerNorm, Parseval)
{
    const std::vector<double> c = {3.0, 4.0};
    EXPECT_DOUBLE_EQ(frac_power_norm(0.0, c, SpectralOperator({2.0, 5.0})), 5.0);
}

TEST(FracPowerNorm, HalfPowerDirectSum)
{
    const std::vector<double> c = {1.0, 1.0};
    EXPECT_DOUBLE_EQ(frac_power_norm(0.5, c, SpectralOperator({1.0, 4.0})), std::sqrt(5.0));
}

TEST(FracPowerNorm, MonotoneInTheta)
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 50; ++i) {
        const SpectralState s = random_state(rng, 16, 1.5);
        double prev = 0.0;
        for (double theta = -1.0; theta <= 1.5; theta += 0.25) {
            const double v = frac_power_norm(theta, s.c0, s.op);
            ASSERT_GE(v, prev);
            prev = v;
        }
    }
}

TEST(FracPowerNorm, SizeMismatch)
{
    const std::vector<double> c = {1.0};
    EXPECT_THROW(frac_power_norm(0.0, c, squares(2)), domain_error);
}

TEST(WeakResidual, SmallForRandomStates)
{
    std::mt19937_64 rng(23);
    for (double a : {1.2, 1.5, 1.8}) {
        const SpectralState s = random_state(rng, 32, a);
        const ModalTrajectory traj = evolve(s, 1.0);
        for (std::size_t m = 1; m <= 32; ++m) {
            const double r = weak_residual(s, 1.0, m, 1e-5);
            ASSERT_LE(std::fabs(r), 1e-6 * (1.0 + s.op[m - 1] * std::fabs(traj.u[m - 1]))) << a << ' ' << m;
        }
    }
}

TEST(WeakResidual, ZeroState)
{
    const SpectralState s({0.0, 0.0}, {0.0, 0.0}, 1.5, squares(2));
    EXPECT_EQ(weak_residual(s, 1.0, 2, 1e-5), 0.0);
}

TEST(WeakResidual, AnalyticPathIsRounding)
{
    const SpectralState s({1.0}, {0.5}, 1.5, SpectralOperator({1.0}));
    for (double t : {0.0, 0.1, 1.0, 2.0})
        EXPECT_LE(std::fabs(weak_residual(s, t, 1, 0.0, ResidualMode::analytic)), 1e-15);
}

TEST(WeakResidual, RejectsModeAndStep)
{
    const SpectralState s({1.0}, {0.0}, 1.5, SpectralOperator({1.0}));
    EXPECT_THROW(weak_residual(s, 1.0, 0, 1e-5), domain_error);
    EXPECT_THROW(weak_residual(s, 1.0, 2, 1e-5), domain_error);
    EXPECT_THROW(weak_residual(s, 1e-6, 1, 1e-5), domain_error);
}

TEST(ThetaWindow, Values)
{
    const ThetaWindow w = theta_window(1.5);
    EXPECT_DOUBLE_EQ(w.lo, 1.0 / 6.0);
    EXPECT_EQ(w.hi, 0.5);
    EXPECT_LT(theta_window(2.0 - 1e-9).lo, 1e-9);
    EXPECT_NEAR(theta_window(1.0 + 1e-9).lo, 0.5, 1e-8);
    EXPECT_THROW(theta_window(1.0), domain_error);
}

TEST(EnergyBound, SingleModeWithoutVelocity)
{
    const SpectralState s({1.0}, {0.0}, 1.5, SpectralOperator({1.0}));
    const EnergyBound e = energy_bound_check(s, 5.0, 1000);
    EXPECT_GE(e.max_ratio, 1.0 - 1e-12);
    EXPECT_LE(e.max_ratio, 1.0 + 1e-12);
    EXPECT_EQ(e.argmax_t, 0.0);
}

TEST(EnergyBound, ZeroStateRejected)
{
    const SpectralState s({0.0}, {0.0}, 1.5, SpectralOperator({1.0}));
    EXPECT_THROW(energy_bound_check(s, 1.0, 10), domain_error);
}

TEST(EnergyBound, StableUnderRefinement)
{
    const SpectralState s({0.5, 0.0}, {0.0, 1.0}, 1.6, SpectralOperator({1.0, 4.0}));
    const double a = energy_bound_check(s, 4.0, 2000).max_ratio;
    const double b = energy_bound_check(s, 4.0, 4000).max_ratio;
    EXPECT_TRUE(std::isfinite(a));
    EXPECT_LE(std::fabs(a - b), 0.01 * a);
}

TEST(Regularity, NormsAndDeclaredClass)
{
    const SpectralState strong({1.0, 0.5}, {0.0, 2.0}, 1.5, SpectralOperator({1.0, 4.0}), DataClass::strong_data);
    const RegularityReport r = classify_regularity(strong);
    EXPECT_EQ(r.data_class, DataClass::strong_data);
    ASSERT_TRUE(r.u0_a.has_value());
    EXPECT_DOUBLE_EQ(*r.u0_a, frac_power_norm(1.0, strong.c0, strong.op));
    EXPECT_TRUE(r.u1_sqrt_a.has_value());
    EXPECT_FALSE(r.decay_exponent.has_value());

    const SpectralState weak({1.0, 0.5}, {0.0, 2.0}, 1.5, SpectralOperator({1.0, 4.0}));
    const RegularityReport w = classify_regularity(weak);
    EXPECT_EQ(w.data_class, DataClass::weak_data);
    EXPECT_FALSE(w.u0_a.has_value());
    EXPECT_FALSE(w.u1_sqrt_a.has_value());
    EXPECT_TRUE(std::isfinite(w.u0_h) && std::isfinite(w.u0_sqrt_a) && std::isfinite(w.u1_h));
}

TEST(Regularity, PowerDecayFit)
{
    std::vector<double> c0(20), c1(20, 0.0);
    for (std::size_t n = 0; n < c0.size(); ++n)
        c0[n] = std::pow(static_cast<double>(n + 1), -3.0);
    const SpectralState s(c0, c1, 1.5, squares(20));
    const RegularityReport r = classify_regularity(s, DecayModel::power);
    ASSERT_TRUE(r.decay_exponent.has_value());
    EXPECT_NEAR(*r.decay_exponent, 3.0, 1e-12);
}

TEST(TailBound, ShrinksAsMoreModesAreKept)
{
    std::mt19937_64 rng(29);
    const SpectralState s = random_state(rng, 40, 1.5);
    double prev = tail_bound(s, 2.0, 0);
    for (std::size_t keep = 1; keep <= 40; ++keep) {
        const double v = tail_bound(s, 2.0, keep);
        ASSERT_LE(v, prev);
        prev = v;
    }
    EXPECT_EQ(prev, 0.0);
}
