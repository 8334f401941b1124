#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "metallic.hpp"
#include "qnum.hpp"

namespace qmetallic {

enum class IdentityId { Rel1, Rel2, Rel3, Rel4, Crin, Recip, Neg, MultInv, ReflectR, ReflectP };

inline constexpr std::array<IdentityId, 10> kAllIdentities = {
    IdentityId::Rel1, IdentityId::Rel2,  IdentityId::Rel3,    IdentityId::Rel4,     IdentityId::Crin,
    IdentityId::Recip, IdentityId::Neg, IdentityId::MultInv, IdentityId::ReflectR, IdentityId::ReflectP};

constexpr std::string_view identity_name(IdentityId id)
{
    switch (id) {
    case IdentityId::Rel1: return "rel1";
    case IdentityId::Rel2: return "rel2";
    case IdentityId::Rel3: return "rel3";
    case IdentityId::Rel4: return "rel4";
    case IdentityId::Crin: return "crin";
    case IdentityId::Recip: return "recip";
    case IdentityId::Neg: return "neg";
    case IdentityId::MultInv: return "multinv";
    case IdentityId::ReflectR: return "reflectR";
    case IdentityId::ReflectP: return "reflectP";
    }
    return "?";
}

inline IdentityId parse_identity(std::string_view s)
{
    for (const auto id : kAllIdentities) {
        if (identity_name(id) == s) {
            return id;
        }
    }
    raise(ErrorKind::InvalidArgument, "unknown identity '" + std::string(s) + "'");
}

struct IdentityReport {
    long n = 0;
    IdentityId id = IdentityId::Rel1;
    long checked_order = 0;
    bool holds = false;
    std::optional<long> first_failure;
};

namespace detail {

inline IdentityReport compare(long n, IdentityId id, const LaurentSeries &lhs, const LaurentSeries &rhs, long order)
{
    IdentityReport r{n, id, order, true, std::nullopt};
    if (lhs.order() < order || rhs.order() < order) {
        raise(ErrorKind::InsufficientOrder, std::string(identity_name(id)) + ": sides known only to order " +
                                                std::to_string(std::min(lhs.order(), rhs.order())));
    }
    if (const auto d = first_difference(lhs.truncated(order), rhs.truncated(order))) {
        r.holds = false;
        r.first_failure = *d;
    }
    return r;
}

inline void require_family_order(long n, long L)
{
    require_index(n);
    if (L < 2 * n + 2) {
        raise(ErrorKind::InvalidArgument, "order must be at least 2n+2");
    }
}

// Extra terms of Phi_n needed so that quotients by series of valuation n
// still reach the requested order.
inline long family_margin(long n) { return 4 * n + 8; }

// (q^n + 1)(q - 1) / q
inline LaurentSeries shift_term(long n)
{
    return LaurentSeries::from_polynomial(IntPolynomial::monomial(BigInt(1), n) + IntPolynomial({1}), -1) *
           LaurentSeries::exact(0, {BigRat(-1), BigRat(1)});
}

} // namespace detail

// The coefficient-free part of [-phi_n]_q.
inline LaurentSeries alpha_polynomial(long n)
{
    require_index(n);
    if (n == 1) {
        return LaurentSeries::exact(-2, {BigRat(-1), BigRat(-1), BigRat(1)});
    }
    if (n == 2) {
        return LaurentSeries::exact(-3, {BigRat(-1), BigRat(0), BigRat(-2), BigRat(1)});
    }
    std::vector<BigRat> c(static_cast<std::size_t>(n + 2), BigRat(0));
    // index i holds the coefficient of q^{i-n-1}
    c[0] = -1;
    for (long e = -(n - 1); e <= -2; ++e) {
        c[static_cast<std::size_t>(e + n + 1)] = -1;
    }
    c[static_cast<std::size_t>(n)] = -2;
    c[static_cast<std::size_t>(n + 1)] = 1;
    return LaurentSeries::exact(-(n + 1), std::move(c));
}

struct LaurentFamily {
    LaurentSeries phi;
    LaurentSeries reciprocal;
    LaurentSeries neg_reciprocal;
    LaurentSeries negative;
};

// The q-deformations of 1/phi_n, -1/phi_n and -phi_n written through the
// coefficients of Phi_n, all modulo q^L.
inline LaurentFamily laurent_family(long n, std::span<const BigInt> kappa, long L)
{
    detail::require_family_order(n, L);
    if (static_cast<long>(kappa.size()) < L + n) {
        raise(ErrorKind::InsufficientOrder, "laurent_family needs kappa_l for l < L + n");
    }
    const auto k = [&](long j) { return BigRat(kappa[static_cast<std::size_t>(j)]); };

    std::vector<BigRat> recip(static_cast<std::size_t>(L), BigRat(0));
    recip[static_cast<std::size_t>(n)] = 1;
    for (long j = n + 1; j < L; ++j) {
        recip[static_cast<std::size_t>(j)] = k(j + n);
    }
    LaurentSeries reciprocal_series(0, std::move(recip), L);

    std::vector<BigRat> nr(static_cast<std::size_t>(L + 1), BigRat(0));
    const auto at = [&](long e) -> BigRat & { return nr[static_cast<std::size_t>(e + 1)]; };
    at(-1) -= 1;
    at(0) += 1;
    at(n - 1) -= 1;
    at(n) += 1;
    at(2 * n) -= 1;
    for (long j = 2 * n + 1; j < L; ++j) {
        at(j) -= k(j);
    }
    LaurentSeries neg_reciprocal_series(-1, std::move(nr), L);

    LaurentSeries negative = (alpha_polynomial(n) - reciprocal_series).truncated(L);
    std::vector<BigInt> head(kappa.begin(), kappa.begin() + L);
    return {LaurentSeries::from_integers(head), std::move(reciprocal_series), std::move(neg_reciprocal_series),
            std::move(negative)};
}

inline LaurentFamily laurent_family(long n, long L)
{
    const auto kappa = coeffs_p_recurrence(n, L + n).values;
    return laurent_family(n, kappa, L);
}

// 1/Phi_n from the shifted coefficients of Phi_n against direct inversion.
inline IdentityReport mult_inverse_check(long n, long L)
{
    require_index(n);
    if (L < 2 * n + 3) {
        raise(ErrorKind::InvalidArgument, "order must be at least 2n+3");
    }
    const auto kappa = coeffs_p_recurrence(n, L).values;
    std::vector<BigRat> c(static_cast<std::size_t>(L), BigRat(0));
    const auto at = [&](long e) -> BigRat & { return c[static_cast<std::size_t>(e)]; };
    at(0) += 1;
    at(1) -= 1;
    at(n) += 1;
    at(n + 1) -= 1;
    at(2 * n + 1) += 1;
    for (long j = 2 * n + 2; j < L; ++j) {
        at(j) += BigRat(kappa[static_cast<std::size_t>(j - 1)]);
    }
    const LaurentSeries predicted(0, std::move(c), L);
    const LaurentSeries direct = inverse(LaurentSeries::from_integers(kappa), L);
    return detail::compare(n, IdentityId::MultInv, predicted, direct, L);
}

// Exact polynomial identities behind the q -> 1/q symmetry of Phi_n:
// q^{n+1} R_n(1/q) = R_n(q) + 2(1 + q^n)(1 - q) and P_n palindromic.
inline IdentityReport reflection_check(long n, IdentityId which)
{
    require_index(n);
    IdentityReport r{n, which, 0, true, std::nullopt};
    IntPolynomial lhs;
    IntPolynomial rhs;
    if (which == IdentityId::ReflectR) {
        const IntPolynomial R = poly_R(n);
        lhs = R.reflected(n + 1);
        rhs = R + IntPolynomial({2}) * (IntPolynomial::monomial(BigInt(1), n) + IntPolynomial({1})) *
                      IntPolynomial({1, -1});
        r.checked_order = n + 2;
    } else if (which == IdentityId::ReflectP) {
        const IntPolynomial P = poly_P(n);
        lhs = P.reflected(2 * n + 2);
        rhs = P;
        r.checked_order = 2 * n + 3;
    } else {
        raise(ErrorKind::InvalidArgument, "not a reflection identity");
    }
    const IntPolynomial diff = lhs - rhs;
    if (!(diff == IntPolynomial())) {
        r.holds = false;
        r.first_failure = diff.valuation();
    }
    return r;
}

inline IdentityReport check_rel(long n, IdentityId id, long L)
{
    if (id == IdentityId::ReflectR || id == IdentityId::ReflectP) {
        return reflection_check(n, id);
    }
    if (id == IdentityId::MultInv) {
        return mult_inverse_check(n, L);
    }
    detail::require_family_order(n, L);
    const long work = L + detail::family_margin(n);
    const auto kappa = coeffs_p_recurrence(n, work + n).values;
    const LaurentSeries phi = LaurentSeries::from_integers(std::span<const BigInt>(kappa.data(), work));
    const LaurentSeries qn = q_integer(n);
    const LaurentSeries q_pow_n = LaurentSeries::monomial(BigRat(1), n);

    // left-hand deformations through the group action
    const auto act_recip = [&] { return reciprocal(phi, L + n); };
    const auto act_neg = [&] { return negate(phi, L + n); };
    const auto act_neg_recip = [&] { return neg_reciprocal(phi, L); };

    switch (id) {
    case IdentityId::Rel1:
        return detail::compare(n, id, phi, q_pow_n * act_recip() + qn, L);
    case IdentityId::Rel2:
        return detail::compare(n, id, act_neg_recip(), q_pow_n * act_neg() + qn, L);
    case IdentityId::Rel3: {
        const LaurentSeries lhs = act_neg_recip();
        auto r = detail::compare(n, id, lhs, qn + detail::shift_term(n) - phi, L);
        // second form: (R_n - sqrt(P_n)) / (2q)
        const LaurentSeries root = sqrt(LaurentSeries::from_polynomial(poly_P(n)), L + 1);
        const LaurentSeries conj = BigRat(1, 2) * (LaurentSeries::from_polynomial(poly_R(n)) - root).shifted(-1);
        const auto r2 = detail::compare(n, id, lhs, conj, L);
        if (!r2.holds && (r.holds || *r2.first_failure < *r.first_failure)) {
            r = r2;
        }
        return r;
    }
    case IdentityId::Rel4:
        return detail::compare(n, id, phi, detail::shift_term(n) - q_pow_n * act_neg(), L);
    case IdentityId::Crin:
        return detail::compare(n, id, laurent_family(n, kappa, L).neg_reciprocal, act_neg_recip(), L);
    case IdentityId::Recip:
        return detail::compare(n, id, laurent_family(n, kappa, L).reciprocal, act_recip(), L);
    case IdentityId::Neg:
        return detail::compare(n, id, laurent_family(n, kappa, L).negative, act_neg(), L);
    default:
        break;
    }
    raise(ErrorKind::InvalidArgument, "unhandled identity");
}

inline std::vector<IdentityReport> check_all(long n, long L)
{
    std::vector<IdentityReport> out;
    for (const auto id : kAllIdentities) {
        out.push_back(check_rel(n, id, L));
    }
    return out;
}

struct ConjugateReport {
    long checked_order = 0;
    bool holds = false;
    std::optional<long> first_failure;
    // first exponent from which the two expansions are opposite
    long onset = 0;
};

// For a monomial denominator, [x]_q and its conjugate have opposite
// coefficients from some exponent on. The onset is detected, not assumed.
inline ConjugateReport conjugate_pair_check(const PeriodicCF &cf, long L)
{
    const QuadraticForm f = quantize_quadratic(cf);
    if (!f.S.is_monomial()) {
        raise(ErrorKind::NotMonomialDenominator, "denominator " + f.S.to_string() + " is not a monomial");
    }
    const LaurentSeries x = f.series(L);
    const LaurentSeries y = f.conjugate_series(L);
    const LaurentSeries sum = (x + y).truncated(L);
    ConjugateReport out;
    out.checked_order = L;
    out.onset = std::min(x.valuation(), y.valuation());
    if (!sum.is_zero()) {
        for (long e = sum.valuation(); e < L; ++e) {
            if (sum.coeff(e) != 0) {
                out.onset = e + 1;
            }
        }
    }
    // x + y = 2R/S, a Laurent polynomial
    const long support_end = f.R.degree() - f.S.valuation() + 1;
    out.holds = out.onset <= support_end && out.onset < L;
    if (!out.holds) {
        out.first_failure = out.onset - 1;
    }
    return out;
}

} // namespace qmetallic
