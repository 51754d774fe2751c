#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "fracspec/fractional_calculus.hpp"
#include "fracspec/scalar_fode.hpp"
#include "oracle/ml_oracle.hpp"

using namespace fracspec;

namespace {

double sup_distance(const SampledFunction& s, const ScalarProblem& p)
{
    double m = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        m = std::max(m, std::fabs(s(i) - scalar_solution(p, s.time(i))));
    return m;
}

}  // namespace

TEST(ScalarSolution, InitialValue)
{
    for (double a : {1.1, 1.5, 1.9})
        EXPECT_EQ(scalar_solution({a, 3.0, -0.4, 2.0}, 0.0), -0.4);
}

TEST(ScalarSolution, DisplacementOnlyAtOne)
{
    EXPECT_NEAR(scalar_solution({1.5, 1.0, 1.0, 0.0}, 1.0), oracle::mittag_leffler(1.5, 1.0, -1.0), 1e-14);
}

TEST(ScalarSolution, VelocityOnlyAtOne)
{
    const double want = oracle::mittag_leffler(1.5, 2.0, -1.0);
    EXPECT_NEAR(scalar_solution({1.5, 1.0, 0.0, 1.0}, 1.0), want, 1e-14);
    const SampledFunction s = l1_stepper({1.5, 1.0, 0.0, 1.0}, 1e-3, 1000);
    EXPECT_NEAR(s(1000), want, 5e-4);
}

TEST(ScalarVelocity, StartsAtY0)
{
    EXPECT_EQ(scalar_velocity({1.5, 1.0, 1.0, 0.25}, 0.0), 0.25);
    EXPECT_NEAR(scalar_velocity({1.5, 1.0, 1.0, 0.25}, 1e-12), 0.25, 1e-5);
}

TEST(ScalarVelocity, AtOne)
{
    EXPECT_NEAR(scalar_velocity({1.5, 1.0, 1.0, 0.0}, 1.0), -oracle::mittag_leffler(1.5, 1.5, -1.0), 1e-14);
}

TEST(ScalarVelocity, MatchesCentralDifference)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    const double h = 1e-5;
    const double fd = (scalar_solution(p, 1.0 + h) - scalar_solution(p, 1.0 - h)) / (2.0 * h);
    EXPECT_LE(std::fabs(fd - scalar_velocity(p, 1.0)) / std::fabs(scalar_velocity(p, 1.0)), 1e-6);
}

TEST(ScalarAcceleration, AtOne)
{
    EXPECT_NEAR(scalar_acceleration({1.5, 1.0, 0.0, 1.0}, 1.0), -oracle::mittag_leffler(1.5, 1.5, -1.0), 1e-14);
}

TEST(ScalarAcceleration, MatchesCentralDifference)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    const double h = 1e-5;
    const double fd = (scalar_velocity(p, 1.0 + h) - scalar_velocity(p, 1.0 - h)) / (2.0 * h);
    EXPECT_NEAR(fd, scalar_acceleration(p, 1.0), 1e-5);
}

TEST(ScalarAcceleration, ZeroDataGivesZero)
{
    EXPECT_EQ(scalar_acceleration({1.5, 2.0, 0.0, 0.0}, 0.7), 0.0);
    EXPECT_THROW(scalar_acceleration({1.5, 2.0, 1.0, 0.0}, 0.0), domain_error);
}

TEST(ScalarMemory, ZeroAtOrigin)
{
    EXPECT_EQ(scalar_memory({1.3, 2.0, 1.0, 1.0}, 0.0), 0.0);
}

TEST(ScalarMemory, AtOne)
{
    EXPECT_NEAR(scalar_memory({1.5, 1.0, 1.0, 0.0}, 1.0), -oracle::mittag_leffler(1.5, 2.0, -1.0), 1e-14);
}

TEST(ScalarMemory, AgreesWithQuadratureOfVelocity)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    const double dt = 1e-3;
    const SampledFunction g =
        SampledFunction::sample([&](double t) { return scalar_velocity(p, t) - p.y0; }, 0.0, dt, 1001);
    IntegralOptions opt;
    opt.start_exponents = {p.alpha - 1.0, p.alpha, 2.0 * p.alpha - 1.0, 2.0 * p.alpha, 3.0 * p.alpha - 1.0};
    opt.fit_nodes = 16;
    const SampledFunction m = rl_integral(2.0 - p.alpha, g, opt);
    for (std::size_t i = 0; i < m.size(); ++i)
        ASSERT_NEAR(m(i), scalar_memory(p, m.time(i)), 1e-3) << i;
}

TEST(ScalarMemory, RateIsCaputoDerivative)
{
    const ScalarProblem p{1.7, 2.5, 0.3, -1.2};
    for (double t : {0.2, 0.9, 2.4}) {
        const double h = 1e-5;
        const double fd = (scalar_memory(p, t + h) - scalar_memory(p, t - h)) / (2.0 * h);
        EXPECT_NEAR(fd, scalar_memory_rate(p, t), 1e-7 * (1.0 + std::fabs(fd)));
    }
}

TEST(ScalarSolution, LinearInInitialData)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0), pa(1.05, 1.95), pt(0.0, 5.0);
    for (int i = 0; i < 200; ++i) {
        const double a = pa(rng), lam = 0.1 + std::fabs(u(rng)) * 5.0, t = pt(rng);
        const double x0 = u(rng), y0 = u(rng);
        const double sum = x0 * scalar_solution({a, lam, 1.0, 0.0}, t) + y0 * scalar_solution({a, lam, 0.0, 1.0}, t);
        ASSERT_NEAR(scalar_solution({a, lam, x0, y0}, t), sum, 1e-14 * (1.0 + std::fabs(sum)));
    }
    EXPECT_EQ(scalar_velocity({1.5, 1.0, 0.0, 0.0}, 0.8), 0.0);
}

TEST(ScalarProblem, RejectsParameters)
{
    EXPECT_THROW(scalar_solution({1.0, 1.0, 1.0, 0.0}, 1.0), domain_error);
    EXPECT_THROW(scalar_solution({2.0, 1.0, 1.0, 0.0}, 1.0), domain_error);
    EXPECT_THROW(scalar_solution({1.5, 0.0, 1.0, 0.0}, 1.0), domain_error);
    EXPECT_THROW(scalar_solution({1.5, 1.0, 1.0, 0.0}, -1.0), domain_error);
}

TEST(L1Stepper, TinyLambdaIsLinearMotion)
{
    const ScalarProblem p{1.5, 1e-12, 0.5, 2.0};
    const SampledFunction s = l1_stepper(p, 1e-2, 200);
    for (std::size_t i = 0; i < s.size(); ++i)
        ASSERT_NEAR(s(i), 0.5 + 2.0 * s.time(i), 1e-9) << i;
}

TEST(L1Stepper, CloseToClosedForm)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    EXPECT_LE(sup_distance(l1_stepper(p, 1e-3, 1000), p), 5e-3);
}

TEST(L1Stepper, RefinementReducesError)
{
    for (double a : {1.2, 1.5, 1.8}) {
        const ScalarProblem p{a, 1.0, 1.0, 1.0};
        double prev = sup_distance(l1_stepper(p, 1e-2, 100), p);
        for (double dt : {5e-3, 2.5e-3, 1.25e-3}) {
            const double e = sup_distance(l1_stepper(p, dt, static_cast<std::size_t>(std::llround(1.0 / dt))), p);
            EXPECT_LT(e, prev) << a << ' ' << dt;
            prev = e;
        }
    }
}

TEST(L1Stepper, ObservedOrderNearThreeMinusAlpha)
{
    for (double a : {1.2, 1.5, 1.8}) {
        const ScalarProblem p{a, 1.0, 1.0, 1.0};
        const double e1 = sup_distance(l1_stepper(p, 4e-3, 500), p);
        const double e2 = sup_distance(l1_stepper(p, 2e-3, 1000), p);
        const double e3 = sup_distance(l1_stepper(p, 1e-3, 2000), p);
        EXPECT_NEAR(std::log2(e1 / e2), 3.0 - a, 0.3) << a;
        EXPECT_NEAR(std::log2(e2 / e3), 3.0 - a, 0.3) << a;
    }
}

TEST(L1Stepper, UncorrectedStartSeedsTaylor)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    const SampledFunction s = l1_stepper(p, 1e-2, 10, 0);
    EXPECT_EQ(s(0), 1.0);
    EXPECT_DOUBLE_EQ(s(1), 1.0 + 1e-2);
}

TEST(L1Stepper, RejectsBadSteps)
{
    const ScalarProblem p{1.5, 1.0, 1.0, 1.0};
    EXPECT_THROW(l1_stepper(p, 0.0, 10), domain_error);
    EXPECT_THROW(l1_stepper(p, 1e-2, 0), domain_error);
}
