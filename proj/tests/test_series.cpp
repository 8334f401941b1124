#include <vector>

#include <gtest/gtest.h>

#include <qmetallic/series.hpp>

using namespace qmetallic;

namespace {

LaurentSeries poly(long start, std::vector<long> c)
{
    std::vector<BigRat> v(c.begin(), c.end());
    return LaurentSeries::exact(start, std::move(v));
}

LaurentSeries trunc(long start, std::vector<long> c, long order)
{
    std::vector<BigRat> v(c.begin(), c.end());
    return LaurentSeries(start, std::move(v), order);
}

// Golden-ratio series, coefficients 0 .. 16.
const std::vector<long> kGolden = {1, 0, 1, -1, 2, -4, 8, -17, 37, -82, 185, -423, 978, -2283, 5373, -12735, 30372};

LaurentSeries golden(long order)
{
    std::vector<long> c(kGolden.begin(), kGolden.begin() + order);
    return trunc(0, c, order);
}

} // namespace

TEST(SeriesAdd, Coefficientwise)
{
    auto s = trunc(0, {1, 1, 0, 0}, 4) + trunc(0, {-1, 1, 0, 0}, 4);
    EXPECT_EQ(s, trunc(1, {2, 0, 0}, 4));
    EXPECT_EQ(s.valuation(), 1);
    EXPECT_EQ(s.order(), 4);
}

TEST(SeriesAdd, ZeroIsIdentity)
{
    auto g = golden(10);
    EXPECT_EQ(g + LaurentSeries::zero(), g);
    EXPECT_EQ(LaurentSeries::zero() + g, g);
}

TEST(SeriesAdd, MixedOrdersTakeMinimum)
{
    auto s = golden(10) + golden(6);
    EXPECT_EQ(s.order(), 6);
}

TEST(SeriesAdd, QIntegerPlusNegative)
{
    // [2]_q = 1 + q, [-2]_q = -q^-1 - q^-2
    auto s = poly(0, {1, 1}) + poly(-2, {-1, -1});
    EXPECT_EQ(s, poly(-2, {-1, -1, 1, 1}));
    EXPECT_TRUE(s.is_exact());
}

TEST(SeriesAdd, CancellationToZero)
{
    auto s = golden(8) - golden(8);
    EXPECT_TRUE(s.is_zero());
    EXPECT_EQ(s.valuation(), 8);
    EXPECT_EQ(s.order(), 8);
}

TEST(SeriesMul, Basics)
{
    EXPECT_EQ(poly(0, {1, 1}) * poly(0, {1, -1}), poly(0, {1, 0, -1}));
    EXPECT_EQ(poly(-1, {1}) * poly(1, {1}), poly(0, {1}));
}

TEST(SeriesMul, OrderBookkeeping)
{
    // order = min(order(a) + val(b), order(b) + val(a))
    auto a = trunc(2, {1, 3, 5}, 5);
    auto b = trunc(-1, {2, 1, 0, 0}, 3);
    auto p = a * b;
    EXPECT_EQ(p.valuation(), 1);
    EXPECT_EQ(p.order(), std::min(5 - 1, 3 + 2));
}

TEST(SeriesMul, GoldenSquareShifted)
{
    // Naive double loop over the printed coefficients as the oracle.
    const long order = 6;
    std::vector<long> oracle(order, 0);
    for (long i = 0; i < order; ++i) {
        for (long j = 0; i + j + 1 < order; ++j) {
            oracle[static_cast<std::size_t>(i + j + 1)] += kGolden[i] * kGolden[j];
        }
    }
    auto got = (poly(1, {1}) * golden(order) * golden(order)).truncated(order);
    EXPECT_EQ(got, trunc(0, oracle, order));
    EXPECT_EQ(got, trunc(1, {1, 0, 2, -2, 5}, 6));
}

TEST(SeriesInverse, Geometric)
{
    auto inv = inverse(poly(0, {1, -1}), 10);
    EXPECT_EQ(inv, trunc(0, std::vector<long>(10, 1), 10));
}

TEST(SeriesInverse, GoldenInverse)
{
    auto inv = inverse(golden(17), 8);
    EXPECT_EQ(inv, trunc(0, {1, 0, -1, 1, -1, 2, -4, 8}, 8));
}

TEST(SeriesInverse, ShiftedGoldenHasNegativeValuation)
{
    auto inv = inverse(golden(17).shifted(1), 6);
    EXPECT_EQ(inv.valuation(), -1);
    EXPECT_EQ(inv.leading(), 1);
    EXPECT_EQ(inv, trunc(-1, {1, 0, -1, 1, -1, 2, -4}, 6));
}

TEST(SeriesInverse, Errors)
{
    try {
        (void)inverse(LaurentSeries::zero(5), 3);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroSeries);
    }
    try {
        (void)inverse(golden(5), 8);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientOrder);
    }
}

TEST(SeriesInverse, RationalConstantTerm)
{
    auto a = poly(0, {3, 1});
    auto inv = inverse(a, 6);
    EXPECT_EQ((a * inv).truncated(6), trunc(0, {1, 0, 0, 0, 0, 0}, 6));
    EXPECT_EQ(inv.coeff(1), BigRat(-1, 9));
}

TEST(SeriesSqrt, Examples)
{
    EXPECT_EQ(sqrt(poly(0, {1}), 5), trunc(0, {1, 0, 0, 0, 0}, 5));
    EXPECT_EQ(sqrt(poly(0, {1, 2, 1}), 7), trunc(0, {1, 1, 0, 0, 0, 0, 0}, 7));
    // P_1 = 1 + 2q - q^2 + 2q^3 + q^4; sqrt(P_1) = 2q*Phi_1 - R_1
    auto r = sqrt(poly(0, {1, 2, -1, 2, 1}), 12);
    EXPECT_EQ(r, (poly(1, {2}) * golden(12) - poly(0, {-1, 1, 1})).truncated(12));
    EXPECT_EQ(r.truncated(5), trunc(0, {1, 1, -1, 2, -2}, 5));
}

TEST(SeriesSqrt, Errors)
{
    try {
        (void)sqrt(poly(0, {4, 1}), 5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadConstantTerm);
    }
    try {
        (void)sqrt(poly(1, {1}), 5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::BadConstantTerm);
    }
    try {
        (void)sqrt(golden(4), 8);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::InsufficientOrder);
    }
}

TEST(SeriesIntegrality, Assertion)
{
    auto half = LaurentSeries::exact(0, {BigRat(1), BigRat(1, 2)});
    EXPECT_FALSE(half.is_integral());
    try {
        half.require_integral("probe");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonIntegralCoefficient);
    }
    EXPECT_NO_THROW(golden(10).require_integral());
}

TEST(SeriesOrder, NoCoefficientBeyondOrder)
{
    auto g = golden(7);
    EXPECT_EQ(g.coeff(6), 8);
    EXPECT_THROW((void)g.coeff(7), Error);
    EXPECT_EQ(g.coeff(-3), 0);
}

TEST(SeriesCompare, FirstDifference)
{
    auto a = golden(10);
    auto b = a + poly(7, {1});
    EXPECT_EQ(first_difference(a, b), 7);
    EXPECT_FALSE(first_difference(a, golden(12)).has_value());
    EXPECT_TRUE(agree_to_order(a, b, 7));
    EXPECT_FALSE(agree_to_order(a, b, 8));
}
