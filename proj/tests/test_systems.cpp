#include <gtest/gtest.h>

#include <set>

#include "algrel/combinatorics.hpp"
#include "algrel/oracle.hpp"
#include "algrel/systems.hpp"
#include "support.hpp"

using namespace algrel;
using namespace testing_support;

TEST(StructureFunction, SimpleKN) {
    const auto spec = mixed_caps_spec();
    EXPECT_EQ(structure_function(spec, {0, 0, 2, 2, 0}), 2u);
    EXPECT_EQ(structure_function(spec, {3, 3, 0, 0, 0}), 3u);
    EXPECT_EQ(structure_function(spec, {4, 3, 0, 0, 0}), 3u);
    EXPECT_EQ(structure_function(spec, {4, 0, 0, 0, 1}), 1u);
    EXPECT_EQ(structure_function(spec, {4, 0, 0, 0, 0}), 0u);
}

TEST(StructureFunction, GeneralizedKN) {
    const auto spec = three_component_spec();
    EXPECT_EQ(structure_function(spec, {1, 1, 1}), 1u);
    EXPECT_EQ(structure_function(spec, {2, 2, 0}), 2u);
    EXPECT_EQ(structure_function(spec, {3, 3, 0}), 3u);
    EXPECT_EQ(structure_function(spec, {3, 1, 0}), 0u);
}

TEST(StructureFunction, SumThresholdAndConsecutive) {
    const auto sum = SystemSpec::sum_threshold(4, 3, 5);
    EXPECT_EQ(structure_function(sum, {3, 1, 1, 0}), 1u);
    EXPECT_EQ(structure_function(sum, {3, 1, 0, 0}), 0u);
    const auto cons = SystemSpec::consecutive_kn(5, 2);
    EXPECT_EQ(structure_function(cons, {1, 0, 1, 0, 1}), 0u);
    EXPECT_EQ(structure_function(cons, {0, 0, 0, 1, 1}), 1u);
}

TEST(StructureFunction, StateAboveCapIsDomainError) {
    EXPECT_THROW((void)structure_function(mixed_caps_spec(), {0, 0, 0, 0, 2}), DomainError);
    EXPECT_THROW((void)structure_function(mixed_caps_spec(), {0, 0, 0, 0}), DimensionError);
}

TEST(SystemSpec, Validation) {
    EXPECT_THROW((void)SystemSpec::simple_kn(0, {1, 1}), ValidationError);
    EXPECT_THROW((void)SystemSpec::simple_kn(3, {1, 1}), ValidationError);
    EXPECT_THROW((void)SystemSpec::simple_kn(1, {1, 0}), ValidationError);
    EXPECT_THROW((void)SystemSpec::generalized_kn(std::vector<std::size_t>{3}, std::vector<Level>{1, 1}), ValidationError);
    EXPECT_THROW((void)SystemSpec::sum_threshold(2, 2, 5), ValidationError);
    EXPECT_THROW((void)SystemSpec::consecutive_kn(3, 4), ValidationError);
}

TEST(SystemSpec, DefaultMaxLevelIsHighestLevelKComponentsReach) {
    EXPECT_EQ(SystemSpec::simple_kn(2, {4, 3, 2, 2, 1}).max_level(), 3u);
    EXPECT_EQ(SystemSpec::simple_kn(1, {2, 3}).max_level(), 3u);
}

TEST(ReliabilityIdeal, MixedCapsLevelTwo) {
    const auto ideal = build_reliability_ideal(mixed_caps_spec(), 2);
    EXPECT_EQ(as_set(ideal.generators()),
              as_set(monomials({{2, 2, 0, 0, 0},
                                {2, 0, 2, 0, 0},
                                {2, 0, 0, 2, 0},
                                {0, 2, 2, 0, 0},
                                {0, 2, 0, 2, 0},
                                {0, 0, 2, 2, 0}})));
}

TEST(ReliabilityIdeal, ThreeComponentLevelOne) {
    const auto ideal = build_reliability_ideal(three_component_spec(), 1);
    EXPECT_EQ(as_set(ideal.generators()), as_set(monomials({{1, 1, 1}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2}})));
}

TEST(ReliabilityIdeal, SumThresholdMatchesBoundedCompositions) {
    std::set<Monomial> expected;
    for (const auto& e : box({3, 3, 3, 3})) {
        if (e[0] + e[1] + e[2] + e[3] == 5) {
            expected.insert(Monomial(e));
        }
    }
    const auto ideal = build_reliability_ideal(SystemSpec::sum_threshold(4, 3, 5), 1);
    EXPECT_EQ(ideal.size(), 40u);
    EXPECT_EQ(as_set(ideal.generators()), expected);
}

TEST(ReliabilityIdeal, GeneralizedFourTwoOnePaths) {
    EXPECT_EQ(build_reliability_ideal(s421(8), 1).size(), 106u);
    EXPECT_EQ(build_reliability_ideal(s421(8), 2).size(), 36u);
    EXPECT_EQ(build_reliability_ideal(s421(8), 3).size(), 8u);
}

TEST(ReliabilityIdeal, TooFewComponentsReachingGivesZeroIdeal) {
    const auto spec = SystemSpec::simple_kn(2, {4, 3, 2, 2, 1}, 4);
    EXPECT_TRUE(build_reliability_ideal(spec, 4).is_zero());
    EXPECT_THROW((void)build_reliability_ideal(spec, 5), DomainError);
    EXPECT_THROW((void)build_reliability_ideal(spec, 0), DomainError);
}

TEST(BoundaryPoints, MixedCapsAllLevels) {
    const auto spec = mixed_caps_spec();
    EXPECT_EQ(state_set(lower_boundary_points(spec, 1)),
              as_states({{0, 0, 0, 1, 1},
                         {0, 0, 1, 0, 1},
                         {0, 1, 0, 0, 1},
                         {1, 0, 0, 0, 1},
                         {0, 0, 1, 1, 0},
                         {0, 1, 0, 1, 0},
                         {1, 0, 0, 1, 0},
                         {0, 1, 1, 0, 0},
                         {1, 0, 1, 0, 0},
                         {1, 1, 0, 0, 0}}));
    EXPECT_EQ(state_set(lower_boundary_points(spec, 2)),
              as_states({{0, 0, 2, 2, 0}, {0, 2, 0, 2, 0}, {2, 0, 0, 2, 0}, {0, 2, 2, 0, 0}, {2, 0, 2, 0, 0},
                         {2, 2, 0, 0, 0}}));
    EXPECT_EQ(state_set(lower_boundary_points(spec, 3)), as_states({{3, 3, 0, 0, 0}}));
    EXPECT_EQ(state_set(upper_boundary_points(spec, 0)),
              as_states({{0, 0, 0, 0, 1}, {0, 0, 0, 2, 0}, {0, 0, 2, 0, 0}, {0, 3, 0, 0, 0}, {4, 0, 0, 0, 0}}));
    EXPECT_EQ(state_set(upper_boundary_points(spec, 1)),
              as_states({{1, 1, 1, 2, 1}, {1, 1, 2, 1, 1}, {1, 3, 1, 1, 1}, {4, 1, 1, 1, 1}}));
    EXPECT_EQ(state_set(upper_boundary_points(spec, 2)), as_states({{2, 3, 2, 2, 1}, {4, 2, 2, 2, 1}}));
    EXPECT_THROW((void)upper_boundary_points(spec, 3), DomainError);
}

TEST(BoundaryPoints, SeriesSystem) {
    const auto spec = SystemSpec::simple_kn(4, {3, 3, 3, 3}, 3);
    EXPECT_EQ(state_set(lower_boundary_points(spec, 2)), as_states({{2, 2, 2, 2}}));
    const auto upper = upper_boundary_points(spec, 2);
    EXPECT_EQ(state_set(upper), as_states({{2, 3, 3, 3}, {3, 2, 3, 3}, {3, 3, 2, 3}, {3, 3, 3, 2}}));
    EXPECT_EQ(upper, oracle::brute_force_upper_boundary(spec, 2));
}

TEST(BoundaryPoints, HomogeneousSimpleCounts) {
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            const auto spec = SystemSpec::simple_kn(k, std::vector<Level>(n, 3));
            for (Level j = 1; j <= 3; ++j) {
                EXPECT_EQ(BigInt(lower_boundary_points(spec, j).size()), binomial(n, k));
            }
            for (Level j = 0; j <= 2; ++j) {
                const auto upper = upper_boundary_points(spec, j);
                EXPECT_EQ(BigInt(upper.size()), binomial(n, k - 1)) << "n=" << n << " k=" << k << " j=" << j;
                EXPECT_EQ(upper, oracle::brute_force_upper_boundary(spec, j));
            }
        }
    }
}

TEST(BoundaryPoints, BudgetExceededIsResourceError) {
    try {
        (void)upper_boundary_points(s421(8), 0, 1000);
        FAIL() << "expected a resource error";
    } catch (const ResourceError& e) {
        EXPECT_EQ(e.requested(), 65536u);
        EXPECT_EQ(e.budget(), 1000u);
    }
}

TEST(StandardPairs, MixedCapsLevelThree) {
    const auto pairs = maximal_standard_pairs(mixed_caps_spec(), 3);
    const std::vector<StandardPair> expected{
        {Monomial{0, 2, 0, 0, 0}, {0, 2, 3, 4}},
        {Monomial{2, 0, 0, 0, 0}, {1, 2, 3, 4}},
    };
    EXPECT_EQ(pairs, expected);
}

TEST(StandardPairs, HomogeneousThresholdIdeal) {
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            const auto spec = SystemSpec::simple_kn(k, std::vector<Level>(n, 3));
            for (Level j = 2; j <= 3; ++j) {
                const auto pairs = maximal_standard_pairs(spec, j);
                EXPECT_EQ(BigInt(pairs.size()), binomial(n, k - 1));
                EXPECT_EQ(pairs.size(), upper_boundary_points(spec, j - 1).size());
                for (const auto& p : pairs) {
                    EXPECT_EQ(p.free_set.size(), k - 1);
                    std::size_t support = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const bool free = std::find(p.free_set.begin(), p.free_set.end(), i) != p.free_set.end();
                        EXPECT_EQ(p.base[i], free ? 0u : j - 1);
                        support += free ? 0 : 1;
                    }
                    EXPECT_EQ(support, n - k + 1);
                }
            }
        }
    }
}

TEST(StandardPairs, UnitIdealHasNone) {
    const auto spec = SystemSpec::sum_threshold(3, 2, 0);
    EXPECT_TRUE(build_reliability_ideal(spec, 1).is_unit());
    EXPECT_TRUE(maximal_standard_pairs(spec, 1).empty());
}

TEST(MinimalCuts, FourTwoOneCounts) {
    EXPECT_EQ(minimal_cuts(s421(8), 1).size(), 168u);
    EXPECT_EQ(minimal_cuts(s421(8), 2).size(), 8u);
    const auto top = minimal_cuts(s421(8), 3);
    ASSERT_EQ(top.size(), 1u);
    EXPECT_EQ(top.front(), StateVector(std::vector<Level>(8, 2)));
    EXPECT_EQ(minimal_cuts(s421(11), 1).size(), 495u);
}

TEST(MinimalCuts, FastPathAgreesWithLatticeScan) {
    SystemGenerator gen(77);
    int compared = 0;
    while (compared < 200) {
        const auto sys = gen.next();
        const auto& v = sys.spec.variant();
        if (!std::holds_alternative<GeneralizedKN>(v) && !std::holds_alternative<SimpleKN>(v)) {
            continue;
        }
        for (Level j = 1; j <= sys.spec.max_level(); ++j) {
            EXPECT_EQ(generalized_kn_minimal_cuts(sys.spec, j), upper_boundary_points(sys.spec, j - 1))
                << sys.description << " j=" << j;
        }
        ++compared;
    }
    for (Level j = 1; j <= 3; ++j) {
        EXPECT_EQ(generalized_kn_minimal_cuts(s421(8), j), upper_boundary_points(s421(8), j - 1));
    }
}

TEST(MinimalCuts, FallBackToFastPathOverBudget) {
    EXPECT_EQ(minimal_cuts(s421(8), 1, 100).size(), 168u);
    EXPECT_THROW((void)minimal_cuts(SystemSpec::consecutive_kn(5, 2), 1, 4), ResourceError);
}

class SystemProperties : public ::testing::Test {
protected:
    SystemGenerator gen{5150};
};

TEST_F(SystemProperties, Coherence) {
    for (int trial = 0; trial < 300; ++trial) {
        const auto sys = gen.next();
        const auto caps = sys.spec.component_caps();
        for (int pair = 0; pair < 20; ++pair) {
            std::vector<Level> x(caps.size()), y(caps.size());
            for (std::size_t i = 0; i < caps.size(); ++i) {
                x[i] = static_cast<Level>(gen.pick(0, static_cast<int>(caps[i])));
                y[i] = static_cast<Level>(gen.pick(static_cast<int>(x[i]), static_cast<int>(caps[i])));
            }
            EXPECT_LE(structure_function(sys.spec, StateVector(x)), structure_function(sys.spec, StateVector(y)))
                << sys.description;
        }
    }
}

TEST_F(SystemProperties, MembershipEquivalenceAndNesting) {
    for (int trial = 0; trial < 300; ++trial) {
        const auto sys = gen.next();
        const auto states = box(sys.spec.component_caps());
        for (Level j = 1; j <= sys.spec.max_level(); ++j) {
            const auto ideal = build_reliability_ideal(sys.spec, j);
            for (const auto& x : states) {
                const bool working = structure_function(sys.spec, StateVector(x)) >= j;
                EXPECT_EQ(working, ideal.contains(Monomial(x))) << sys.description << " j=" << j;
            }
            if (j < sys.spec.max_level()) {
                const auto next = build_reliability_ideal(sys.spec, j + 1);
                for (const auto& g : next.generators()) {
                    EXPECT_TRUE(ideal.contains(g)) << sys.description;
                }
            }
        }
    }
}

TEST_F(SystemProperties, StandardPairsMatchUpperBoundary) {
    for (int trial = 0; trial < 200; ++trial) {
        const auto sys = gen.next();
        for (Level j = 1; j <= sys.spec.max_level(); ++j) {
            const auto upper = upper_boundary_points(sys.spec, j - 1);
            EXPECT_EQ(upper, oracle::brute_force_upper_boundary(sys.spec, j - 1)) << sys.description;
            EXPECT_EQ(maximal_standard_pairs(sys.spec, j).size(), upper.size());
        }
    }
}
