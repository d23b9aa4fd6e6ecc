#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "ballast/load_exponential.hpp"
#include "oracles.hpp"

using namespace ballast;

namespace {

std::vector<Rational> ints(std::initializer_list<long long> v) { return {v.begin(), v.end()}; }

// 1-based steps in left-to-right order along the axis.
std::vector<std::size_t> expected_chain(std::size_t n) {
    std::vector<std::size_t> chain;
    const bool odd = n % 2 == 1;
    for (std::size_t i = odd ? 4 : 3; i < n; i += 2) chain.push_back(i);
    chain.push_back(1);
    for (std::size_t i = n; i >= (odd ? 5 : 4); i -= 2) chain.push_back(i);
    chain.push_back(2);
    if (odd) chain.push_back(3);
    return chain;
}

} // namespace

TEST(Tau, ExampleValues) {
    EXPECT_EQ(tau(ExpSystem(1, 2, 4)), Rational(4, 5));
    EXPECT_EQ(tau_from_lengths(ints({4, 8})), 1);
    EXPECT_EQ(tau(ExpSystem(1, 2, 5)), Rational(48, 31));
    EXPECT_EQ(exponential_lower_bound(ExpSystem(1, 2, 4)), Rational(4, 5));
    EXPECT_EQ(exponential_lower_bound(ExpSystem(1, 2, 5)), Rational(48, 31));
}

TEST(Tau, DefinitionAndClosedFormAgree) {
    oracle::PointGen gen(101);
    for (int trial = 0; trial < 200; ++trial) {
        const Rational ell(gen.integer(1, 30), gen.integer(1, 7));
        const Rational x = Rational(2) + Rational(gen.integer(0, 40), gen.integer(1, 9));
        const auto n = static_cast<std::size_t>(gen.integer(4, 18));
        const ExpSystem s(ell, x, n);
        std::vector<Rational> lengths;
        for (std::size_t i = 0; i < n; ++i) lengths.push_back(s.length(i));
        EXPECT_EQ(tau_from_lengths(lengths), tau_closed_form(s));
    }
}

TEST(ExpSystem, RejectsUnsupportedSystems) {
    EXPECT_THROW(ExpSystem(1, 2, 3), PreconditionError);
    EXPECT_THROW(ExpSystem(1, Rational(3, 2), 5), PreconditionError);
    EXPECT_THROW(ExpSystem(0, 2, 5), PreconditionError);
    EXPECT_THROW(ExpSystem::from_lengths(ints({1, 2, 4})), PreconditionError);
    EXPECT_THROW(ExpSystem::from_lengths(ints({1, 2, 4, 9})), PreconditionError);
    EXPECT_THROW(ExpSystem::from_lengths(ints({1, 2, 3, 4})), PreconditionError);
}

TEST(ExpSystem, FromLengthsAcceptsAnyInputOrder) {
    const ExpSystem s = ExpSystem::from_lengths(ints({4, 1, 8, 2}));
    EXPECT_EQ(s.smallest(), 1);
    EXPECT_EQ(s.ratio(), 2);
    const Placement p = plan_exponential(s);
    EXPECT_EQ(p.item_ids, (std::vector<std::size_t>{2, 1, 3, 0}));
    EXPECT_EQ(p.steps[1].midpoint, Rational(68, 5));
}

TEST(PlanExponential, FourIntervals) {
    const Placement p = plan_exponential(ExpSystem(1, 2, 4));
    std::vector<Rational> lens, mids;
    for (const auto& iv : p.steps) {
        lens.push_back(iv.length);
        mids.push_back(iv.midpoint);
    }
    EXPECT_EQ(lens, ints({8, 1, 2, 4}));
    EXPECT_EQ(mids, (std::vector<Rational>{Rational(-4, 5), Rational(68, 5), -8, Rational(26, 5)}));
    EXPECT_EQ(p.steps[0].left(), Rational(-24, 5));
    EXPECT_EQ(p.steps[0].right(), Rational(16, 5));
    EXPECT_EQ(p.steps[1].left(), Rational(131, 10));
    EXPECT_EQ(p.steps[1].right(), Rational(141, 10));
    EXPECT_EQ(p.steps[2].left(), -9);
    EXPECT_EQ(p.steps[3].right(), Rational(36, 5));
    EXPECT_EQ(centers(p), (Trajectory{0, Rational(-4, 5), Rational(4, 5), Rational(-4, 5), Rational(4, 5)}));
    EXPECT_EQ(deviation(p), Rational(4, 5));
    EXPECT_EQ(deviation(mirrored(p)), Rational(4, 5));
}

TEST(PlanExponential, FigurePlacementIsAlsoOptimal) {
    // unit interval at 10 instead of 13.6; the others re-solved for +-0.8
    Placement p;
    p.push({Rational(-4, 5), 8, 1}, 3);
    p.push({10, 1, 1}, 0);
    p.push({required_midpoint(Rational(2, 5), 9, Rational(-4, 5), 2), 2, 1}, 1);
    p.push({required_midpoint(Rational(-4, 5), 11, Rational(4, 5), 4), 4, 1}, 2);
    EXPECT_EQ(centers(p), (Trajectory{0, Rational(-4, 5), Rational(2, 5), Rational(-4, 5), Rational(4, 5)}));
    EXPECT_FALSE(validate_placement(p));
    EXPECT_EQ(deviation(p), tau(ExpSystem(1, 2, 4)));
}

TEST(PlanExponential, FiveIntervalsUseTheMergedStep) {
    const ExpSystem s(1, 2, 5);
    const Placement p = plan_exponential(s);
    const Trajectory c = centers(p);
    const Rational t = Rational(48, 31);
    EXPECT_EQ(c[1], -t);
    EXPECT_GT(c[2], -t);
    EXPECT_LT(c[2], t);
    EXPECT_EQ(c[3], t);
    EXPECT_EQ(c[4], -t);
    EXPECT_EQ(c[5], t);
    EXPECT_EQ(deviation(p), t);
    // the two small items touch, the shorter one nearer the first item
    EXPECT_EQ(p.steps[1].right(), p.steps[2].left());
    EXPECT_LT(p.steps[0].right(), p.steps[1].left());
}

TEST(PlanExponential, EvenMidpointsFollowTheAlternatingFormula) {
    for (std::size_t n : {4u, 6u, 8u, 10u}) {
        const ExpSystem s(Rational(3, 2), 3, n);
        const Placement p = plan_exponential(s);
        const Rational t = tau(s);
        Rational before = 0;
        for (std::size_t i = 1; i <= n; ++i) {
            const Rational& len = p.steps[i - 1].length;
            const Rational magnitude = 2 * t * before / len + t;
            EXPECT_EQ(p.steps[i - 1].midpoint, i % 2 == 0 ? magnitude : Rational(-magnitude)) << "n=" << n << " i=" << i;
            before += len;
        }
    }
}

TEST(PlanExponential, SweepAttainsTauWithDisjointIntervalsInChainOrder) {
    for (const Rational x : {Rational(2), Rational(5, 2), Rational(3)}) {
        for (const Rational ell : {Rational(1), Rational(7, 3)}) {
            for (std::size_t n = 4; n <= 16; ++n) {
                const ExpSystem s(ell, x, n);
                const Placement p = plan_exponential(s);
                const Rational t = tau(s);
                EXPECT_EQ(deviation(p), t);
                EXPECT_FALSE(validate_state(p.steps)) << "x=" << to_string(x) << " n=" << n;

                const Trajectory c = centers(p);
                for (std::size_t i = 1; i <= n; ++i) {
                    if (n % 2 == 1 && i == 2) {
                        EXPECT_LE(abs(c[i]), t);
                        continue;
                    }
                    const bool positive = n % 2 == 0 ? i % 2 == 0 : (i == 3 || (i >= 4 && i % 2 == 1));
                    EXPECT_EQ(c[i], positive ? t : Rational(-t)) << "n=" << n << " i=" << i;
                }

                const std::vector<std::size_t> chain = expected_chain(n);
                ASSERT_EQ(chain.size(), n);
                for (std::size_t k = 0; k + 1 < chain.size(); ++k)
                    EXPECT_LE(p.steps[chain[k] - 1].right(), p.steps[chain[k + 1] - 1].left())
                        << "x=" << to_string(x) << " n=" << n << " between I" << chain[k] << " and I" << chain[k + 1];
            }
        }
    }
}

TEST(DisjointnessConditions, HandEvaluatedValues) {
    const DisjointnessReport six = verify_disjointness_conditions(2, 6);
    EXPECT_EQ(six.conditions[0].lhs, 8757);
    EXPECT_EQ(six.conditions[0].rhs, 4608);
    EXPECT_TRUE(six.conditions[0].holds);
    EXPECT_FALSE(six.conditions[3].applicable);

    const DisjointnessReport five = verify_disjointness_conditions(2, 5);
    EXPECT_EQ(five.conditions[3].lhs, 11328);
    EXPECT_EQ(five.conditions[3].rhs, 8184);
    EXPECT_FALSE(five.conditions[0].applicable);
    EXPECT_TRUE(five.conditions[3].applicable);

    const DisjointnessReport four = verify_disjointness_conditions(2, 4);
    EXPECT_FALSE(four.conditions[0].applicable);
    EXPECT_TRUE(four.conditions[1].applicable && four.conditions[1].holds);
    EXPECT_TRUE(four.conditions[2].applicable && four.conditions[2].holds);
    EXPECT_FALSE(four.conditions[3].applicable);
}

TEST(DisjointnessConditions, HoldForFactorTwo) {
    for (long long n = 4; n <= 24; ++n) {
        const DisjointnessReport r = verify_disjointness_conditions(2, n);
        EXPECT_TRUE(r.all_hold()) << "n=" << n;
        const bool odd = n % 2 == 1;
        EXPECT_EQ(r.conditions[0].applicable, n >= 6);
        EXPECT_EQ(r.conditions[3].applicable, odd);
    }
}

TEST(DisjointnessConditions, CanFailForSmallFactors) {
    bool some_failure = false;
    for (long long n = 4; n <= 12; ++n) some_failure |= !verify_disjointness_conditions(Rational(11, 10), n).all_hold();
    EXPECT_TRUE(some_failure);
    EXPECT_THROW(verify_disjointness_conditions(0, 6), PreconditionError);
    EXPECT_THROW(verify_disjointness_conditions(2, 3), PreconditionError);
}

// Midpoint mesh l/8 over [-3 sum, 3 sum]: lengths and midpoints are scaled by 8
// so the grid is the integers.
TEST(ExponentialLowerBound, GridSearchFindsNothingBelowTau) {
    const ExpSystem s(1, 2, 4);
    const Rational t = tau(s);
    const long long reach = 3 * 15 * 8;
    oracle::GridLoader strict({8, 16, 32, 64}, reach, t * 8, true);
    EXPECT_FALSE(strict.feasible());

    oracle::GridLoader relaxed({8, 16, 32, 64}, reach, Rational(8), false);
    EXPECT_TRUE(relaxed.feasible()) << "the search must be able to find placements at all";
}
