#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "ballast/load_stacked.hpp"

using namespace ballast;

TEST(PlanStacked, ThreeItemsHeightTwo) {
    const Placement p = plan_stacked({3, 2, 1});
    ASSERT_EQ(p.size(), 3u);
    EXPECT_EQ(p.steps[0].midpoint, Rational(1, 3));
    EXPECT_EQ(p.steps[1].midpoint, Rational(1, 3));
    EXPECT_EQ(p.steps[2].midpoint, Rational(-2, 3));
    EXPECT_EQ(p.steps[0].layer, 1);
    EXPECT_EQ(p.steps[1].layer, 2);
    EXPECT_EQ(p.steps[2].layer, 1);
    EXPECT_EQ(centers(p), (Trajectory{0, Rational(1, 3), Rational(1, 3), 0}));
}

TEST(PlanStacked, NoStackingAlternatesAroundOneHalf) {
    const Placement p = plan_stacked({2, 1, 1});
    EXPECT_EQ(p.steps[0].midpoint, Rational(1, 2));
    EXPECT_EQ(p.steps[1].midpoint, Rational(-1, 2));
    EXPECT_EQ(centers(p), (Trajectory{0, Rational(1, 2), 0}));
}

TEST(PlanStacked, FewItemsShareOneStackAtTheOrigin) {
    const Placement p = plan_stacked({1, 5, 1});
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.steps[0].midpoint, 0);
    EXPECT_EQ(deviation(p), 0);

    const Placement q = plan_stacked({4, 5, 2});
    EXPECT_EQ(deviation(q), 0);
    EXPECT_FALSE(validate_placement(q));
}

TEST(PlanStacked, SecondPairOpensOneUnitFurtherOut) {
    // mu = 1: stacks at 1/2, -1/2, 3/2, -3/2, 5/2
    const Placement p = plan_stacked({5, 1, 1});
    std::vector<Rational> mids;
    for (const auto& iv : p.steps) mids.push_back(iv.midpoint);
    EXPECT_EQ(mids, (std::vector<Rational>{Rational(1, 2), Rational(-1, 2), Rational(3, 2), Rational(-3, 2), Rational(5, 2)}));
}

TEST(PlanStacked, RejectsInvalidParameters) {
    EXPECT_THROW(plan_stacked({0, 1, 1}), InputError);
    EXPECT_THROW(plan_stacked({1, 0, 1}), InputError);
    EXPECT_THROW(plan_stacked({1, 1, 0}), InputError);
}

TEST(StackedOptimum, Values) {
    EXPECT_EQ(stacked_optimum({10, 2, 1}), Rational(1, 3));
    EXPECT_EQ(stacked_optimum({2, 1, 3}), Rational(3, 2));
    EXPECT_EQ(stacked_optimum({2, 5, 1}), 0);
}

TEST(PlanStacked, SweepStaysInWindowAndIsValid) {
    for (const Rational len : {Rational(1), Rational(3), Rational(2, 7)}) {
        for (std::size_t mu = 1; mu <= 8; ++mu) {
            for (std::size_t n = 1; n <= 60; ++n) {
                const StackPlanParams params{n, mu, len};
                const Placement p = plan_stacked(params);
                ASSERT_EQ(p.size(), n);
                const Rational top = stacked_optimum(params);
                for (const auto& c : centers(p)) {
                    EXPECT_GE(c, 0);
                    EXPECT_LE(c, top);
                }
                EXPECT_EQ(deviation(p), top);
                EXPECT_FALSE(validate_placement(p)) << "n=" << n << " mu=" << mu;
                for (const auto& iv : p.steps) EXPECT_LE(iv.layer, static_cast<int>(mu));
            }
        }
    }
}

TEST(PlanStacked, CenterMatchesClosedFormAfterLeftPlacements) {
    // after c = (2k+1) mu + zeta placements, zeta odd < 2 mu, the center is
    // (k(mu-1) + zeta - 1) / ((1+mu)(z+zeta)) * l with z = (2k+1) mu
    for (long long mu = 1; mu <= 8; ++mu) {
        for (long long k = 0; k <= 4; ++k) {
            for (long long zeta = 1; zeta < 2 * mu; zeta += 2) {
                const long long z = (2 * k + 1) * mu;
                const auto count = static_cast<std::size_t>(z + zeta);
                const Rational len(5, 2);
                const Trajectory c = centers(plan_stacked({count, static_cast<std::size_t>(mu), len}));
                const Rational expected = Rational(k * (mu - 1) + zeta - 1, (1 + mu) * (z + zeta)) * len;
                EXPECT_EQ(c.back(), expected) << "mu=" << mu << " k=" << k << " zeta=" << zeta;
            }
        }
    }
}
