#include <gtest/gtest.h>

#include <qmetallic/verify.hpp>

using namespace qmetallic;

TEST(VerifySuite, PassesForSmallIndices)
{
    for (const long n : {1L, 2L, 4L}) {
        const auto kappa = coeffs_p_recurrence(n, 300).values;
        const auto checks = verify_suite(n, kappa);
        EXPECT_TRUE(all_passed(checks)) << n << " " << first_failure(checks)->name << " "
                                        << first_failure(checks)->detail;
        const bool has_bridge = std::any_of(checks.begin(), checks.end(),
                                            [](const CheckResult &c) { return c.name == "sign_bridge"; });
        EXPECT_EQ(has_bridge, n == 1);
    }
}

TEST(VerifySuite, NamesFirstFailure)
{
    auto kappa = coeffs_p_recurrence(2, 120).values;
    kappa[60] += 1;
    const auto checks = verify_suite(2, kappa);
    const auto *bad = first_failure(checks);
    ASSERT_NE(bad, nullptr);
    EXPECT_EQ(bad->name, "engine_agreement");
    EXPECT_NE(bad->detail.find("l = 60"), std::string::npos);
    const auto j = checks_to_json(checks);
    EXPECT_EQ(j[0]["status"], "pass");
    EXPECT_EQ(j[1]["status"], "fail");
}

TEST(GoldenSuite, SeriesExactTablesToTenDigits)
{
    const auto checks = golden_suite(256, 10);
    for (const auto &c : checks) {
        EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
    }
    EXPECT_EQ(std::count_if(checks.begin(), checks.end(),
                            [](const CheckResult &c) { return c.name.rfind("table", 0) == 0; }),
              60);
}

TEST(DecimalAgreement, HalfUnitRule)
{
    EXPECT_TRUE(decimal_agreement("1.0000000000049", "1.00000000000", 12));
    EXPECT_FALSE(decimal_agreement("1.0000000000051", "1.00000000000", 12));
    EXPECT_TRUE(decimal_agreement("0.990550401852901", "0.990550401870774", 10));
    EXPECT_FALSE(decimal_agreement("0.990550401852901", "0.990550401870774", 12));
    EXPECT_TRUE(decimal_agreement("0", "0", 5));
}
