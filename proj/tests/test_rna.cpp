#include <set>
#include <vector>

#include <gtest/gtest.h>

#include <qmetallic/golden.hpp>
#include <qmetallic/rna.hpp>

using namespace qmetallic;
using namespace qmetallic::rna;

TEST(Enumeration, PrintedCounts)
{
    EXPECT_EQ(enumerate_structures(5, 1), 8);
    EXPECT_EQ(enumerate_structures(10, 1), 423);
    EXPECT_EQ(enumerate_structures(4, 0), 9);
    const auto &printed = golden::rna_counts();
    for (long l = 1; l < static_cast<long>(printed.size()); ++l) {
        EXPECT_EQ(enumerate_structures(l, 1), printed[static_cast<std::size_t>(l)]) << l;
    }
}

TEST(Enumeration, Budget)
{
    EXPECT_NO_THROW((void)enumerate_structures(22, 1));
    try {
        (void)enumerate_structures(23, 1);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
    }
    EXPECT_THROW((void)enumerate_structures(0, 1), Error);
    EXPECT_THROW((void)enumerate_structures(5, -1), Error);
    EXPECT_THROW((void)generate_structures(17, 1), Error);
}

TEST(Enumeration, ExplicitGenerationAgrees)
{
    for (long rank = 0; rank <= 4; ++rank) {
        for (long l = 1; l <= 12; ++l) {
            const auto all = generate_structures(l, rank);
            EXPECT_EQ(BigInt(static_cast<long>(all.size())), enumerate_structures(l, rank)) << l << " " << rank;
            std::set<std::vector<std::pair<long, long>>> distinct;
            for (const auto &s : all) {
                EXPECT_TRUE(is_valid(s, rank));
                distinct.insert(s.hbonds);
            }
            EXPECT_EQ(distinct.size(), all.size());
        }
    }
}

TEST(Enumeration, ExplicitGenerationToSixteen)
{
    const auto &printed = golden::rna_counts();
    for (long l = 13; l <= kMaxGenerationSize; ++l) {
        const auto all = generate_structures(l, 1);
        EXPECT_EQ(BigInt(static_cast<long>(all.size())), enumerate_structures(l, 1)) << l;
        if (l < static_cast<long>(printed.size())) {
            EXPECT_EQ(static_cast<long>(all.size()), printed[static_cast<std::size_t>(l)]) << l;
        }
    }
}

TEST(Enumeration, ValidityPredicate)
{
    EXPECT_TRUE(is_valid({6, {{1, 3}, {4, 6}}}, 1));
    EXPECT_FALSE(is_valid({6, {{1, 4}, {3, 6}}}, 1));
    EXPECT_FALSE(is_valid({6, {{1, 2}}}, 1));
    EXPECT_TRUE(is_valid({6, {{1, 2}}}, 0));
    EXPECT_FALSE(is_valid({6, {{1, 3}, {3, 6}}}, 1));
}

TEST(Enumeration, RankMonotoneAndTrivialSizes)
{
    for (long l = 1; l <= 22; ++l) {
        for (long r = 0; r < 22; ++r) {
            EXPECT_LE(enumerate_structures(l, r + 1), enumerate_structures(l, r));
        }
        for (long r = l - 1; r <= l + 2; ++r) {
            EXPECT_EQ(enumerate_structures(l, r), 1) << l << " " << r;
        }
    }
    EXPECT_EQ(enumerate_structures(1, 2), 1);
    EXPECT_EQ(enumerate_structures(2, 2), 1);
}

TEST(Recurrence, PrintedValues)
{
    const auto a = rna_recurrence(16);
    EXPECT_EQ(a[2], 1);
    EXPECT_EQ(a[6], 17);
    EXPECT_EQ(a[15], 30372);
    const auto &printed = golden::rna_counts();
    for (std::size_t i = 0; i < printed.size(); ++i) {
        EXPECT_EQ(a[i], printed[i]);
    }
    EXPECT_THROW((void)rna_recurrence(1), Error);
}

TEST(Recurrence, CountsRecurrenceAndClosedFormAgree)
{
    const auto a = rna_recurrence(40);
    for (long l = 2; l <= 16; ++l) {
        EXPECT_EQ(enumerate_structures(l, 1), a[static_cast<std::size_t>(l)]);
    }
    for (long l = 1; l < 40; ++l) {
        EXPECT_EQ(rna_closed_form(l), a[static_cast<std::size_t>(l)]) << l;
    }
    EXPECT_EQ(rna_closed_form(6), 17);
    EXPECT_EQ(rna_closed_form(2), 1);
    EXPECT_EQ(rna_closed_form(14), 12735);
}

TEST(PRecurrence, HoldsAndDetectsPerturbation)
{
    auto a = rna_recurrence(12);
    EXPECT_EQ(rna_p_residual(a, 4), 0);
    EXPECT_TRUE(rna_p_recurrence_check(500));
    a[10] += 1;
    const auto bad = rna_p_recurrence_failure(a);
    ASSERT_TRUE(bad.has_value());
    EXPECT_EQ(*bad, 10);
    EXPECT_THROW((void)rna_p_recurrence_check(4), Error);
}

TEST(Bridge, SignedShiftedCoefficients)
{
    const auto k = coeffs_p_recurrence(1, 20).values;
    EXPECT_EQ(k[9], -82);
    EXPECT_EQ(k[2], 1);
    const auto r = sign_bridge_check(1000);
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.first_failure.has_value());

    auto bad = coeffs_p_recurrence(1, 50).values;
    bad[17] += 1;
    const auto rb = sign_bridge_check(bad, 50);
    EXPECT_FALSE(rb.holds);
    EXPECT_EQ(rb.first_failure.value_or(-1), 17);
}

TEST(Motzkin, RankZeroOffset)
{
    const auto m = motzkin_numbers(15);
    EXPECT_EQ(m[4], 9);
    EXPECT_EQ(m[14], 113634);
    // M_k = M_{k-1} + sum M_i M_{k-2-i}
    for (long k = 2; k < 15; ++k) {
        BigInt s = m[static_cast<std::size_t>(k - 1)];
        for (long i = 0; i <= k - 2; ++i) {
            s += m[static_cast<std::size_t>(i)] * m[static_cast<std::size_t>(k - 2 - i)];
        }
        EXPECT_EQ(s, m[static_cast<std::size_t>(k)]);
    }
    const auto d = motzkin_offset(14);
    ASSERT_TRUE(d.has_value());
    EXPECT_EQ(*d, 0);
}

TEST(FamilyDivergence, GoldenAlignsSilverDoesNot)
{
    EXPECT_FALSE(family_divergence(1, 16).has_value());
    EXPECT_FALSE(family_divergence(1, 23).has_value());
    const auto d = family_divergence(2, 15);
    ASSERT_TRUE(d.has_value());
    EXPECT_LT(*d, 15);
    EXPECT_THROW((void)family_divergence(2, 40), Error);
}

TEST(Grid, Layout)
{
    const auto g = count_grid(5, 2);
    ASSERT_EQ(g.size(), 15U);
    EXPECT_EQ(g[4].size, 5);
    EXPECT_EQ(g[4].rank, 0);
    EXPECT_EQ(g[4].count, 21);
    EXPECT_EQ(g[9].count, 8);
}
