#include <gtest/gtest.h>

#include "qres/galois_set.hpp"
#include "qres/resolvent.hpp"

using namespace qres;
using namespace qres::gs;

TEST(GaloisSet, OrbitShapes)
{
    // S and C component degrees for each Frobenius cycle type on X
    struct Row {
        std::vector<int> type, s, c;
    };
    const std::vector<Row> rows{
        {{4}, {2, 4}, {1, 2}},
        {{1, 3}, {3, 3}, {3}},
        {{2, 2}, {1, 1, 2, 2}, {1, 1, 1}},
        {{1, 1, 2}, {1, 1, 2, 2}, {1, 2}},
        {{1, 1, 1, 1}, {1, 1, 1, 1, 1, 1}, {1, 1, 1}},
    };
    for (const auto& r : rows) {
        const auto f = frobenius_of_type(r.type);
        EXPECT_EQ(orbit_sizes(f), r.type);
        EXPECT_EQ(orbit_sizes(action_on_pairs(f)), r.s);
        EXPECT_EQ(orbit_sizes(action_on_partitions(f)), r.c);
    }
}

TEST(GaloisSet, SplitQuarticsDoNotExistOverF3)
{
    EXPECT_TRUE(quartics_of_type(PrimeField(3), {1, 1, 1, 1}, 1).empty());
    EXPECT_EQ(quartics_of_type(PrimeField(5), {1, 1, 1, 1}, 10).size(), 5U);  // choose 4 of the 5 roots
}

TEST(GaloisSet, ModelMatchesResolventWhenGeneric)
{
    // over 𝔽_p with p large the polynomial construction applies and must
    // reproduce the orbit model's component shapes
    const PrimeField f(101);
    for (const auto& type : all_cycle_types()) {
        auto quartics = quartics_of_type(f, type, 1);
        ASSERT_FALSE(quartics.empty());
        auto r = Resolvent<ModP>::build(quartics[0], {.seed = 4});
        const auto frob = frobenius_of_type(type);
        EXPECT_EQ(r.S().component_degrees(), orbit_sizes(action_on_pairs(frob)));
        EXPECT_EQ(r.C().component_degrees(), orbit_sizes(action_on_partitions(frob)));
    }
}

TEST(GaloisSet, ExhaustiveNormGroups)
{
    for (std::uint64_t p : {3, 5}) {
        for (const auto& type : all_cycle_types()) {
            auto rep = exhaustive_check(PrimeField(p), type);
            if (p == 3 && type.size() == 4) {
                EXPECT_FALSE(rep.exists());
                continue;
            }
            ASSERT_TRUE(rep.exists());
            EXPECT_TRUE(rep.ok()) << "p=" << p << " " << rep.quartic << ": "
                                  << (rep.failures.empty() ? "" : rep.failures[0]);
            // over a finite field every norm map to k is onto
            EXPECT_EQ(rep.NL.size(), p - 1);
            EXPECT_EQ(rep.NS.size(), p - 1);
        }
    }
}
