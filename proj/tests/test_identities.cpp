#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include <qmetallic/golden.hpp>
#include <qmetallic/identities.hpp>

using namespace qmetallic;

namespace {

// Continued fraction of (p + sqrt(d)) / s by exact integer arithmetic on
// reduced surds; requires s | d - p^2 and d not a square.
PeriodicCF surd_cf(long p, long s, long d)
{
    BigInt P = p;
    BigInt Q = s;
    const BigInt D = d;
    BigInt root;
    mpz_sqrt(root.get_mpz_t(), D.get_mpz_t());
    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::vector<BigInt> terms;
    while (true) {
        const auto state = std::make_pair(P, Q);
        if (const auto it = seen.find(state); it != seen.end()) {
            std::vector<BigInt> pre(terms.begin(), terms.begin() + static_cast<long>(it->second));
            std::vector<BigInt> per(terms.begin() + static_cast<long>(it->second), terms.end());
            std::vector<long> a;
            std::vector<long> b;
            for (const auto &x : pre) {
                a.push_back(x.get_si());
            }
            for (const auto &x : per) {
                b.push_back(x.get_si());
            }
            if (a.empty()) {
                a.push_back(b.front());
                std::rotate(b.begin(), b.begin() + 1, b.end());
            }
            return PeriodicCF(a, b);
        }
        seen.emplace(state, terms.size());
        BigInt a;
        if (Q > 0) {
            mpz_fdiv_q(a.get_mpz_t(), BigInt(P + root).get_mpz_t(), Q.get_mpz_t());
        } else {
            const BigInt absq = -Q;
            BigInt t;
            mpz_fdiv_q(t.get_mpz_t(), BigInt(P + root).get_mpz_t(), absq.get_mpz_t());
            a = -t - 1;
        }
        terms.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }
}

LaurentSeries printed(const golden::PrintedSeries &s) { return s.series(); }

} // namespace

TEST(SurdOracle, KnownExpansions)
{
    EXPECT_EQ(surd_cf(1, 2, 5).to_string(), PeriodicCF({1}, {1}).to_string());
    EXPECT_EQ(surd_cf(0, 1, 7).to_string(), PeriodicCF({2}, {1, 1, 1, 4}).to_string());
    EXPECT_EQ(surd_cf(1, -2, 5).to_string(), PeriodicCF({-2, 2}, {1}).to_string());
    EXPECT_EQ(surd_cf(-1, -2, 5).to_string(), PeriodicCF({-1, 2}, {1}).to_string());
}

TEST(AlphaPolynomial, CaseSplit)
{
    EXPECT_EQ(alpha_polynomial(1), LaurentSeries::exact(-2, {-1, -1, 1}));
    EXPECT_EQ(alpha_polynomial(2), LaurentSeries::exact(-3, {-1, 0, -2, 1}));
    EXPECT_EQ(alpha_polynomial(3), LaurentSeries::exact(-4, {-1, 0, -1, -2, 1}));
    EXPECT_EQ(alpha_polynomial(5), LaurentSeries::exact(-6, {-1, 0, -1, -1, -1, -2, 1}));
}

TEST(LaurentFamily, GoldenPrintedExpansions)
{
    const auto f = laurent_family(1, 30);
    EXPECT_TRUE(agree_to_order(f.reciprocal, printed(golden::recip_phi1()), golden::recip_phi1().order()));
    EXPECT_TRUE(agree_to_order(f.negative, printed(golden::neg_phi1()), golden::neg_phi1().order()));
    EXPECT_TRUE(agree_to_order(f.neg_reciprocal, printed(golden::neg_recip_phi1()), golden::neg_recip_phi1().order()));
    EXPECT_TRUE(agree_to_order(f.phi, printed(golden::phi1()), golden::phi1().order()));
    EXPECT_EQ(f.reciprocal.order(), 30);
}

TEST(LaurentFamily, MatchesIndependentContinuedFractions)
{
    const long L = 50;
    for (long n = 1; n <= 10; ++n) {
        const long d = n * n + 4;
        const auto f = laurent_family(n, L);
        EXPECT_EQ(f.phi.truncated(L), q_real_truncated(surd_cf(n, 2, d), L)) << n;
        EXPECT_EQ(f.reciprocal, q_real_truncated(surd_cf(-n, 2, d), L)) << n;
        EXPECT_EQ(f.neg_reciprocal, q_real_truncated(surd_cf(-n, -2, d), L)) << n;
        EXPECT_EQ(f.negative, q_real_truncated(surd_cf(n, -2, d), L)) << n;
    }
}

TEST(LaurentFamily, AgreesWithGroupActions)
{
    for (long n = 1; n <= 10; ++n) {
        const long L = 300;
        const auto kappa = coeffs_p_recurrence(n, L + 4 * n + 8).values;
        const auto phi = LaurentSeries::from_integers(kappa);
        const auto f = laurent_family(n, kappa, L);
        EXPECT_EQ(f.neg_reciprocal, neg_reciprocal(phi, L)) << n;
        EXPECT_EQ(f.reciprocal, reciprocal(phi, L)) << n;
        EXPECT_EQ(f.negative, negate(phi, L)) << n;
    }
}

TEST(LaurentFamily, OrderTooSmall)
{
    EXPECT_THROW((void)laurent_family(3, 7), Error);
    const auto kappa = coeffs_p_recurrence(3, 20).values;
    EXPECT_THROW((void)laurent_family(3, kappa, 20), Error);
}

TEST(Relations, FullSuiteToOrder300)
{
    for (long n = 1; n <= 10; ++n) {
        for (const auto &r : check_all(n, 300)) {
            EXPECT_TRUE(r.holds) << n << " " << identity_name(r.id) << " fails at "
                                 << r.first_failure.value_or(-1);
            EXPECT_FALSE(r.first_failure.has_value());
            EXPECT_EQ(r.n, n);
        }
    }
}

TEST(Relations, GoldenExamples)
{
    const auto r3 = check_rel(1, IdentityId::Rel3, 40);
    EXPECT_TRUE(r3.holds);
    EXPECT_EQ(r3.checked_order, 40);
    EXPECT_TRUE(check_rel(1, IdentityId::Rel1, 40).holds);
    EXPECT_THROW((void)check_rel(2, IdentityId::Rel1, 5), Error);
}

TEST(Relations, ParseNames)
{
    for (const auto id : kAllIdentities) {
        EXPECT_EQ(parse_identity(identity_name(id)), id);
    }
    EXPECT_THROW((void)parse_identity("rel9"), Error);
}

TEST(MultiplicativeInverse, PrintedAndInverted)
{
    const auto inv = inverse(golden::phi1().series(), 19);
    EXPECT_EQ(inv, printed(golden::mult_inverse_phi1()));
    for (long n = 1; n <= 10; ++n) {
        const auto r = mult_inverse_check(n, 300);
        EXPECT_TRUE(r.holds) << n;
        EXPECT_EQ(r.id, IdentityId::MultInv);
    }
    EXPECT_THROW((void)mult_inverse_check(2, 6), Error);
}

TEST(Reflection, PolynomialIdentitiesToHundred)
{
    for (long n = 1; n <= 100; ++n) {
        EXPECT_TRUE(reflection_check(n, IdentityId::ReflectR).holds) << n;
        EXPECT_TRUE(reflection_check(n, IdentityId::ReflectP).holds) << n;
    }
}

TEST(Reflection, PlusSignVariantFails)
{
    // q^{n+1} R_n(1/q) - R_n(q) is 2(1+q^n)(1-q), so the (1+q) variant never holds.
    for (long n = 1; n <= 20; ++n) {
        const IntPolynomial R = poly_R(n);
        const IntPolynomial plus =
            R + IntPolynomial({2}) * (IntPolynomial::monomial(BigInt(1), n) + IntPolynomial({1})) * IntPolynomial({1, 1});
        EXPECT_FALSE(R.reflected(n + 1) == plus) << n;
    }
    EXPECT_EQ(poly_R(1).reflected(2), IntPolynomial({1, 1, -1}));
}

TEST(Conjugates, SqrtSevenOnset)
{
    const auto r = conjugate_pair_check(PeriodicCF({2}, {1, 1, 1, 4}), 40);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.onset, 3);
    const auto f = quantize_quadratic(PeriodicCF({2}, {1, 1, 1, 4}));
    const auto y = f.conjugate_series(golden::neg_sqrt7().order());
    EXPECT_EQ(y, printed(golden::neg_sqrt7()));
}

TEST(Conjugates, MetallicConjugateIsNegReciprocal)
{
    for (long n = 1; n <= 8; ++n) {
        const PeriodicCF cf({n}, {n});
        const auto r = conjugate_pair_check(cf, 60);
        EXPECT_TRUE(r.holds) << n;
        const auto f = quantize_quadratic(cf);
        EXPECT_EQ(f.conjugate_series(60), laurent_family(n, 60).neg_reciprocal) << n;
    }
}

TEST(Conjugates, NonMonomialDenominatorRejected)
{
    try {
        (void)conjugate_pair_check(PeriodicCF({0, 2}, {1, 1, 1, 4}), 30);
        FAIL() << "expected NotMonomialDenominator";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotMonomialDenominator);
    }
}

TEST(Involutions, OnMetallicSeries)
{
    for (long n = 1; n <= 10; ++n) {
        const auto phi = coeffs_p_recurrence(n, 160).series();
        EXPECT_EQ(negate(negate(phi, 100), 80), phi.truncated(80)) << n;
        EXPECT_EQ(neg_reciprocal(neg_reciprocal(phi, 100), 90), phi.truncated(90)) << n;
    }
}
