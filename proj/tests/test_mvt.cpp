#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "algrel/mvt.hpp"
#include "algrel/oracle.hpp"
#include "algrel/systems.hpp"
#include "support.hpp"

using namespace algrel;
using namespace testing_support;

namespace {

MonomialIdeal consecutive_two_of_five() { return build_reliability_ideal(SystemSpec::consecutive_kn(5, 2), 1); }

std::vector<Monomial> sorted(std::vector<Monomial> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::map<Monomial, std::int64_t> coefficient_map(std::initializer_list<std::pair<Monomial, std::int64_t>> terms) {
    return {terms.begin(), terms.end()};
}

}  // namespace

TEST(MvTree, ConsecutiveTwoOfFiveRelevantNodes) {
    const auto hn = hilbert_numerator(consecutive_two_of_five());
    ASSERT_EQ(hn.by_dimension.size(), 3u);
    EXPECT_EQ(sorted(hn.by_dimension[0]),
              sorted(monomials({{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 1, 1, 0}, {0, 0, 0, 1, 1}})));
    EXPECT_EQ(sorted(hn.by_dimension[1]),
              sorted(monomials({{1, 1, 0, 1, 1}, {0, 0, 1, 1, 1}, {0, 1, 1, 1, 0}, {1, 1, 1, 0, 0}})));
    EXPECT_EQ(hn.by_dimension[2], monomials({{1, 1, 1, 1, 1}}));
}

TEST(MvTree, MaterializedTreeMatchesStream) {
    const auto ideal = consecutive_two_of_five();
    const auto tree = build_mvt(ideal);
    ASSERT_FALSE(tree.nodes.empty());
    EXPECT_EQ(tree.nodes.front().position, 1);
    EXPECT_EQ(tree.nodes.front().ideal, ideal);
    const auto a = hilbert_numerator(tree);
    const auto b = hilbert_numerator(ideal);
    ASSERT_EQ(a.by_dimension.size(), b.by_dimension.size());
    for (std::size_t d = 0; d < a.by_dimension.size(); ++d) {
        EXPECT_EQ(sorted(a.by_dimension[d]), sorted(b.by_dimension[d]));
    }
    for (const auto& node : tree.nodes) {
        if (node.position == 1) {
            continue;
        }
        const TreePosition parent = node.position / 2;
        const auto it = std::find_if(tree.nodes.begin(), tree.nodes.end(),
                                     [&](const MvNode& m) { return m.position == parent; });
        ASSERT_NE(it, tree.nodes.end());
        const bool left = (node.position & 1) == 0;
        EXPECT_EQ(node.dimension, it->dimension + (left ? 1 : 0));
    }
}

TEST(MvTree, PrincipalIdealIsASingleNode) {
    const auto tree = build_mvt(minimalize(monomials({{2, 1, 0}})));
    ASSERT_EQ(tree.nodes.size(), 1u);
    EXPECT_FALSE(tree.nodes.front().pivot.has_value());
}

TEST(MvTree, TwoVariablesParallel) {
    const auto tree = build_mvt(minimalize(monomials({{1, 0}, {0, 1}})));
    const auto relevant = tree.relevant_nodes();
    ASSERT_EQ(relevant.size(), 2u);
    EXPECT_EQ(relevant[0]->position, 1);
    EXPECT_EQ(relevant[0]->dimension, 0u);
    EXPECT_EQ(as_set(relevant[0]->ideal.generators()), as_set(monomials({{1, 0}, {0, 1}})));
    EXPECT_EQ(relevant[1]->position, 2);
    EXPECT_EQ(relevant[1]->dimension, 1u);
    EXPECT_EQ(relevant[1]->ideal.generators(), monomials({{1, 1}}));
}

TEST(MvTree, ZeroIdealHasEmptyNumerator) {
    const auto hn = hilbert_numerator(MonomialIdeal::zero(3));
    EXPECT_EQ(hn.num_terms(), 0u);
    EXPECT_TRUE(hn.coefficients().empty());
}

TEST(Betti, ConsecutiveTwoOfFive) {
    const auto b = betti_bounds(consecutive_two_of_five());
    EXPECT_TRUE(b.exact);
    const auto graded = b.graded_upper();
    ASSERT_EQ(graded.size(), 3u);
    EXPECT_EQ(graded[0], (std::map<std::uint64_t, std::uint64_t>{{2, 4}}));
    EXPECT_EQ(graded[1], (std::map<std::uint64_t, std::uint64_t>{{3, 3}, {4, 1}}));
    EXPECT_EQ(graded[2], (std::map<std::uint64_t, std::uint64_t>{{5, 1}}));
    EXPECT_EQ(b.graded_lower(), graded);
}

TEST(Betti, SumThresholdExampleTotals) {
    const auto b = betti_bounds(build_reliability_ideal(SystemSpec::sum_threshold(4, 3, 5), 1));
    EXPECT_TRUE(b.exact);
    EXPECT_EQ(b.totals(), (std::vector<std::uint64_t>{40, 92, 72, 19}));
}

TEST(Betti, SingleVariable) {
    const auto b = betti_bounds(minimalize(monomials({{1, 0}})));
    EXPECT_TRUE(b.exact);
    ASSERT_EQ(b.upper.size(), 1u);
    EXPECT_EQ(b.upper_at(0, Monomial{1, 0}), 1u);
    EXPECT_EQ(b.lower_at(0, Monomial{1, 0}), 1u);
    EXPECT_EQ(b.upper_at(1, Monomial{1, 0}), 0u);
}

TEST(Betti, CompatibilityOnlyRaisesLowerBounds) {
    SystemGenerator gen(31337);
    for (int trial = 0; trial < 150; ++trial) {
        const auto ideal = gen.random_ideal(static_cast<std::size_t>(gen.pick(2, 4)), 8, 3);
        const auto plain = betti_bounds(ideal);
        const auto refined = betti_bounds(ideal, BettiOptions{true, {}});
        ASSERT_EQ(plain.upper, refined.upper);
        for (std::size_t d = 0; d < plain.upper.size(); ++d) {
            for (const auto& [mu, count] : plain.upper[d]) {
                EXPECT_LE(plain.lower_at(d, mu), refined.lower_at(d, mu));
                EXPECT_LE(refined.lower_at(d, mu), count);
            }
        }
        if (plain.exact) {
            EXPECT_TRUE(refined.exact);
        }
    }
}

TEST(Hilbert, ConsecutiveTwoOfFive) {
    const auto expected = coefficient_map({{Monomial{1, 1, 0, 0, 0}, 1},
                                           {Monomial{0, 1, 1, 0, 0}, 1},
                                           {Monomial{0, 0, 1, 1, 0}, 1},
                                           {Monomial{0, 0, 0, 1, 1}, 1},
                                           {Monomial{1, 1, 0, 1, 1}, -1},
                                           {Monomial{0, 0, 1, 1, 1}, -1},
                                           {Monomial{0, 1, 1, 1, 0}, -1},
                                           {Monomial{1, 1, 1, 0, 0}, -1},
                                           {Monomial{1, 1, 1, 1, 1}, 1}});
    EXPECT_EQ(hilbert_numerator(consecutive_two_of_five()).coefficients(), expected);
}

TEST(Hilbert, ThreeComponentLevelTwo) {
    const auto ideal = minimalize(monomials({{2, 2, 0}, {2, 0, 2}, {0, 2, 2}}));
    const auto expected = coefficient_map(
        {{Monomial{2, 2, 0}, 1}, {Monomial{2, 0, 2}, 1}, {Monomial{0, 2, 2}, 1}, {Monomial{2, 2, 2}, -2}});
    EXPECT_EQ(hilbert_numerator(ideal).coefficients(), expected);
}

TEST(Hilbert, ThreeComponentLevelOne) {
    const auto ideal = minimalize(monomials({{1, 1, 1}, {2, 2, 0}, {2, 0, 2}, {0, 2, 2}}));
    const auto expected = coefficient_map({{Monomial{1, 1, 1}, 1},
                                           {Monomial{2, 2, 0}, 1},
                                           {Monomial{2, 0, 2}, 1},
                                           {Monomial{0, 2, 2}, 1},
                                           {Monomial{1, 2, 2}, -1},
                                           {Monomial{2, 1, 2}, -1},
                                           {Monomial{2, 2, 1}, -1}});
    EXPECT_EQ(hilbert_numerator(ideal).coefficients(), expected);
}

TEST(Hilbert, CustomPivotKeepsTheNumerator) {
    SystemGenerator gen(99);
    MvtOptions first;
    first.pivot = [](std::span<const Monomial>) { return std::size_t{0}; };
    for (int trial = 0; trial < 100; ++trial) {
        const auto ideal = gen.random_ideal(static_cast<std::size_t>(gen.pick(1, 4)), 10, 3);
        EXPECT_EQ(hilbert_numerator(ideal, first).coefficients(), hilbert_numerator(ideal).coefficients());
    }
}

class MvtProperties : public ::testing::Test {
protected:
    SystemGenerator gen{4242};
};

TEST_F(MvtProperties, NumeratorMatchesInclusionExclusion) {
    for (int trial = 0; trial < 300; ++trial) {
        const auto ideal = gen.random_ideal(static_cast<std::size_t>(gen.pick(1, 5)), 18, 3);
        const auto hn = hilbert_numerator(ideal);
        EXPECT_EQ(hn.coefficients(), oracle::inclusion_exclusion_numerator(ideal)) << to_string(ideal);
        EXPECT_LE(hn.max_dimension(), ideal.num_vars());
        std::int64_t at_one = 0;
        for (const auto& [mu, c] : hn.coefficients()) {
            at_one += c;
        }
        EXPECT_EQ(at_one, 1);
    }
}

TEST_F(MvtProperties, BettiBoundsOrderedAndIntrinsic) {
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = static_cast<std::size_t>(gen.pick(2, 4));
        const auto ideal = gen.random_ideal(n, 10, 3);
        const auto b = betti_bounds(ideal);
        for (std::size_t d = 0; d < b.upper.size(); ++d) {
            for (const auto& [mu, count] : b.lower[d]) {
                EXPECT_LE(count, b.upper_at(d, mu));
            }
        }
        if (!b.exact) {
            continue;
        }
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen.rng());
        std::vector<Monomial> moved;
        for (const auto& g : ideal.generators()) {
            std::vector<Exponent> e(n);
            for (std::size_t i = 0; i < n; ++i) {
                e[perm[i]] = g[i];
            }
            moved.emplace_back(e);
        }
        const auto p = betti_bounds(minimalize(n, moved));
        const auto exact = b.graded_upper();
        const auto hi = p.graded_upper();
        const auto lo = p.graded_lower();
        for (std::size_t d = 0; d < exact.size(); ++d) {
            for (const auto& [deg, count] : exact[d]) {
                const auto get = [&](const auto& t) -> std::uint64_t {
                    if (d >= t.size()) {
                        return 0;
                    }
                    const auto it = t[d].find(deg);
                    return it == t[d].end() ? 0 : it->second;
                };
                EXPECT_LE(get(lo), count);
                EXPECT_GE(get(hi), count);
                if (p.exact) {
                    EXPECT_EQ(get(hi), count);
                }
            }
        }
    }
}
