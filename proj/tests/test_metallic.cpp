#include <vector>

#include <gtest/gtest.h>

#include <qmetallic/golden.hpp>
#include <qmetallic/metallic.hpp>
#include <qmetallic/qnum.hpp>

using namespace qmetallic;

namespace {

std::vector<BigInt> big(const std::vector<long> &v) { return {v.begin(), v.end()}; }

std::vector<BigInt> head(const CoeffTable &t, std::size_t count)
{
    return {t.values.begin(), t.values.begin() + static_cast<long>(count)};
}

} // namespace

TEST(MetallicPolynomials, Examples)
{
    EXPECT_EQ(poly_R(1), IntPolynomial({-1, 1, 1}));
    EXPECT_EQ(poly_R(2), IntPolynomial({-1, 2, 0, 1}));
    EXPECT_EQ(poly_R(3), IntPolynomial({-1, 2, 1, 0, 1}));
    EXPECT_EQ(poly_R(5), IntPolynomial({-1, 2, 1, 1, 1, 0, 1}));
    EXPECT_EQ(poly_Q(1), IntPolynomial({1, 3, 1}));
    EXPECT_EQ(poly_Q(2), IntPolynomial({1, 1, 4, 1, 1}));
    EXPECT_EQ(poly_Q(3), IntPolynomial({1, 1, 2, 5, 2, 1, 1}));
    EXPECT_EQ(poly_Q(5), IntPolynomial({1, 1, 2, 3, 4, 7, 4, 3, 2, 1, 1}));
    EXPECT_EQ(poly_P(1), IntPolynomial({1, 2, -1, 2, 1}));
    for (long n = 1; n <= 60; ++n) {
        EXPECT_TRUE(poly_P(n).is_palindromic()) << n;
        EXPECT_TRUE(poly_Q(n).is_palindromic()) << n;
        EXPECT_EQ(poly_Q(n).degree(), 2 * n);
        EXPECT_EQ(poly_R(n).degree(), n + 1);
    }
    EXPECT_THROW((void)poly_R(0), Error);
}

TEST(Convolution, PrintedSeries)
{
    EXPECT_EQ(coeffs_convolution(1, 21).values, big(golden::phi1().coeffs));
    EXPECT_EQ(coeffs_convolution(2, 21).values, big(golden::phi2().coeffs));
    EXPECT_EQ(coeffs_convolution(3, 23).values, big(golden::phi3().coeffs));
    EXPECT_EQ(coeffs_convolution(5, 28).values, big(golden::phi5().coeffs));
    EXPECT_EQ(coeffs_convolution(2, 14).values[13], -55);
    EXPECT_EQ(coeffs_convolution(5, 24).values[23], 21);
}

TEST(Convolution, MatchesContinuedFraction)
{
    for (long n = 1; n <= 6; ++n) {
        const auto cf = q_real_truncated(PeriodicCF({n}, {n}), 40);
        EXPECT_EQ(LaurentSeries::from_integers(coeffs_convolution(n, 40).values).truncated(40), cf) << n;
    }
}

TEST(Convolution, PrefixPattern)
{
    for (long n = 1; n <= 25; ++n) {
        const auto t = coeffs_convolution(n, 2 * n + 1);
        EXPECT_FALSE(t.prefix_violation().has_value()) << n;
        EXPECT_EQ(t.values[static_cast<std::size_t>(2 * n)], 1) << n;
        for (long l = n + 1; l < 2 * n; ++l) {
            EXPECT_EQ(t.values[static_cast<std::size_t>(l)], 0) << n << " " << l;
        }
    }
}

TEST(RecurrenceSpec, Tables)
{
    const auto s1 = recurrence_spec(1);
    ASSERT_EQ(s1.terms.size(), 5U);
    EXPECT_EQ(s1.order, 4);
    EXPECT_EQ(s1.valid_from, 4);
    const std::vector<std::array<long, 3>> want1 = {{0, 1, 1}, {1, 2, -1}, {2, -1, 2}, {3, 2, -7}, {4, 1, -5}};
    for (std::size_t i = 0; i < want1.size(); ++i) {
        EXPECT_EQ(s1.terms[i].lag, want1[i][0]);
        EXPECT_EQ(s1.terms[i].slope, want1[i][1]);
        EXPECT_EQ(s1.terms[i].intercept, want1[i][2]);
    }
    const auto s2 = recurrence_spec(2);
    EXPECT_EQ(s2.order, 6);
    EXPECT_EQ(s2.valid_from, 6);
    std::vector<long> lags;
    for (const auto &t : s2.terms) {
        lags.push_back(t.lag);
    }
    EXPECT_EQ(lags, (std::vector<long>{0, 2, 3, 4, 6}));
    // n = 3: 2(l+1), 4(l-2), 4(2l-7), -(2l-10), 4(2l-13), 4(l-8), 2(l-11)
    const auto s3 = recurrence_spec(3);
    EXPECT_EQ(s3.order, 8);
    EXPECT_EQ(s3.valid_from, 8);
    std::vector<std::array<long, 3>> got3;
    for (const auto &t : s3.terms) {
        got3.push_back({t.lag, t.slope, t.intercept});
    }
    const std::vector<std::array<long, 3>> want3 = {{0, 2, 2},   {2, 4, -8},   {3, 8, -28}, {4, -2, 10},
                                                    {5, 8, -52}, {6, 4, -32}, {8, 2, -22}};
    EXPECT_EQ(got3, want3);
    for (long n = 2; n <= 30; ++n) {
        const auto s = recurrence_spec(n);
        EXPECT_EQ(s.order, 2 * n + 2);
        for (const auto &t : s.terms) {
            EXPECT_NE(t.lag, 1);
            EXPECT_NE(t.lag, 2 * n + 1);
        }
    }
}

TEST(PRecurrence, SpotCheckWithPrintedValues)
{
    const auto &k = golden::phi1().coeffs;
    EXPECT_EQ(9 * k[8] + 15 * k[7] - 6 * k[6] + 9 * k[5] + 3 * k[4], 0);
    const auto kb = big(k);
    for (long l = 4; l < 21; ++l) {
        EXPECT_EQ(recurrence_residual(recurrence_spec(1), kb, l), 0) << l;
    }
}

TEST(PRecurrence, AgreesWithConvolution)
{
    EXPECT_EQ(coeffs_p_recurrence(2, 21).values, big(golden::phi2().coeffs));
    EXPECT_EQ(coeffs_p_recurrence(7, 500).values, coeffs_convolution(7, 500).values);
    for (long n = 1; n <= 12; ++n) {
        EXPECT_EQ(coeffs_p_recurrence(n, 200).values, coeffs_convolution(n, 200).values) << n;
    }
}

TEST(PRecurrence, ResumeMatchesFreshRun)
{
    auto t = coeffs_p_recurrence(4, 60);
    extend_p_recurrence(t, 300);
    EXPECT_EQ(t.values, coeffs_p_recurrence(4, 300).values);
    EXPECT_EQ(t.upto, 300);
    CoeffTable short_table{4, 3, {BigInt(1), BigInt(1), BigInt(1)}, Engine::Convolution};
    EXPECT_THROW(extend_p_recurrence(short_table, 20), Error);
}

TEST(PRecurrence, DetectsTranscriptionErrors)
{
    // A corrupted seed makes some step non-divisible or wrong; the
    // convolution oracle catches whatever survives division.
    CoeffTable t = coeffs_convolution(1, 4);
    t.values[3] += 1;
    bool flagged = false;
    try {
        extend_p_recurrence(t, 40);
        flagged = t.values != coeffs_convolution(1, 40).values;
    } catch (const Error &e) {
        flagged = e.kind() == ErrorKind::NonExactDivision;
    }
    EXPECT_TRUE(flagged);
}

TEST(Multinomial, Examples)
{
    EXPECT_EQ(multinomial(4, {2, 2}), 6);
    EXPECT_EQ(multinomial(1, {0, 1, 0, 0}), 1);
    EXPECT_EQ(multinomial(7, {7}), 1);
    EXPECT_EQ(multinomial(5, {1, 2, 2}), 30);
    EXPECT_EQ(multinomial(3, {-1, 4}), 0);
    EXPECT_THROW((void)multinomial(3, {1, 1}), Error);
}

TEST(ClosedForms, Examples)
{
    EXPECT_EQ(closed_form_golden(2), 1);
    EXPECT_EQ(closed_form_golden(7), -17);
    EXPECT_EQ(closed_form_golden(16), 30372);
    EXPECT_EQ(closed_form_silver(4), 1);
    EXPECT_EQ(closed_form_silver(8), 4);
    EXPECT_EQ(closed_form_silver(13), -55);
    EXPECT_EQ(closed_form_bronze(6), 1);
    EXPECT_EQ(closed_form_bronze(13), -11);
    EXPECT_THROW((void)coeffs_closed_form(4, 10), Error);
}

TEST(ClosedForms, AgreeWithConvolutionTo150)
{
    for (long n = 1; n <= 3; ++n) {
        EXPECT_EQ(coeffs_closed_form(n, 151).values, coeffs_convolution(n, 151).values) << n;
    }
}

TEST(SqrtEngine, Examples)
{
    EXPECT_EQ(phi_series_sqrt(1, 21), golden::phi1().series());
    EXPECT_EQ(phi_series_sqrt(3, 23), golden::phi3().series());
    for (long n = 1; n <= 10; ++n) {
        EXPECT_EQ(coeffs_sqrt(n, 200).values, coeffs_convolution(n, 200).values) << n;
    }
}

TEST(FunctionalEquation, HoldsAndDetectsPerturbation)
{
    for (long n = 1; n <= 5; ++n) {
        const auto c = verify_functional_equation(n, 120);
        EXPECT_TRUE(c.holds) << n;
        EXPECT_EQ(c.checked_order, 120);
    }
    auto k = coeffs_convolution(1, 60).values;
    k[10] += 1;
    const auto bad = verify_functional_equation(1, k);
    EXPECT_FALSE(bad.holds);
    ASSERT_TRUE(bad.first_failure.has_value());
    EXPECT_LE(*bad.first_failure, 11);
}

TEST(Ode, BothForms)
{
    for (long n = 1; n <= 4; ++n) {
        const auto k = coeffs_convolution(n, 150).values;
        EXPECT_TRUE(verify_ode(n, k).holds) << n;
        EXPECT_TRUE(verify_ode_r_form(n, k).holds) << n;
        EXPECT_GE(verify_ode(n, k).checked_order, 150 - (2 * n + 3));
    }
}

TEST(Ode, ExplicitGoldenEquation)
{
    // q(1-q+q^2)(1+3q+q^2) y' + (1+q)(1-q^3) y = 1 + q + 3q^2
    const IntPolynomial a1 = IntPolynomial({0, 1}) * IntPolynomial({1, -1, 1}) * IntPolynomial({1, 3, 1});
    const IntPolynomial a0 = IntPolynomial({1, 1}) * IntPolynomial({1, 0, 0, -1});
    const auto y = coeffs_convolution(1, 100).series();
    EXPECT_TRUE(verify_linear_ode(a1, a0, IntPolynomial({1, 1, 3}), y).holds);
    EXPECT_FALSE(verify_linear_ode(a1, a0, IntPolynomial({1, 1, 2}), y).holds);
}

TEST(Hankel, Examples)
{
    EXPECT_EQ(hankel(1, 0, 1), 1);
    EXPECT_EQ(hankel(1, 0, 0), 1);
    const auto k = coeffs_convolution(1, 60).values;
    for (long s = 0; s <= 2; ++s) {
        for (long j = 1; j <= 25; ++j) {
            const BigInt d = hankel(k, s, j);
            EXPECT_TRUE(d == 0 || d == 1 || d == -1) << s << " " << j << " " << d;
        }
    }
    const auto k3 = coeffs_convolution(3, 50).values;
    for (long s = 0; s <= 4; ++s) {
        for (long j = 1; j <= 20; ++j) {
            const BigInt d = hankel(k3, s, j);
            EXPECT_TRUE(d == 0 || d == 1 || d == -1) << s << " " << j << " " << d;
        }
    }
    EXPECT_THROW((void)hankel(std::span<const BigInt>(k.data(), 5), 0, 4), Error);
}

TEST(Hankel, BareissMatchesCofactorExpansion)
{
    std::vector<std::vector<BigInt>> m = {{0, 2, 1}, {3, 0, 4}, {5, 6, 0}};
    // 0*(0-24) - 2*(0-20) + 1*(18-0) = 58
    EXPECT_EQ(bareiss_determinant(m), 58);
    std::vector<std::vector<BigInt>> sing = {{1, 2}, {2, 4}};
    EXPECT_EQ(bareiss_determinant(sing), 0);
}
