#pragma once

#include <array>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace qmetallic {

// [n]_q as an exact Laurent polynomial: 1 + q + ... + q^(n-1) for n >= 0,
// -q^-1 - q^-2 - ... - q^n for n < 0.
inline LaurentSeries q_integer(long n)
{
    if (n >= 0) {
        return LaurentSeries::exact(0, std::vector<BigRat>(static_cast<std::size_t>(n), BigRat(1)));
    }
    return LaurentSeries::exact(n, std::vector<BigRat>(static_cast<std::size_t>(-n), BigRat(-1)));
}

// [n]_{q^-1} = q^(1-n) [n]_q.
inline LaurentSeries q_integer_inverted(long n) { return q_integer(n).shifted(1 - n); }

// Eventually periodic continued fraction [a0; a1, ..., ak, (p1, ..., pm)*].
class PeriodicCF {
public:
    PeriodicCF(std::vector<long> preperiod, std::vector<long> period = {})
        : preperiod_(std::move(preperiod)), period_(std::move(period))
    {
        if (preperiod_.empty()) {
            raise(ErrorKind::InvalidArgument, "continued fraction needs a0");
        }
        for (std::size_t i = 1; i < preperiod_.size(); ++i) {
            if (preperiod_[i] <= 0) {
                raise(ErrorKind::InvalidArgument, "partial quotient a" + std::to_string(i) + " must be positive");
            }
        }
        for (long p : period_) {
            if (p <= 0) {
                raise(ErrorKind::InvalidArgument, "periodic partial quotients must be positive");
            }
        }
        // [..., a, 1] and [..., a+1] denote the same rational; keep the latter.
        if (period_.empty() && preperiod_.size() > 1 && preperiod_.back() == 1) {
            preperiod_.pop_back();
            preperiod_.back() += 1;
        }
    }

    // Euclid's algorithm on r/s, s > 0.
    static PeriodicCF rational(const BigInt &r, const BigInt &s)
    {
        if (s <= 0) {
            raise(ErrorKind::InvalidArgument, "denominator must be positive");
        }
        std::vector<long> terms;
        BigInt num = r;
        BigInt den = s;
        while (den != 0) {
            BigInt quo;
            BigInt rem;
            mpz_fdiv_qr(quo.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (!quo.fits_slong_p()) {
                raise(ErrorKind::InvalidArgument, "partial quotient out of range");
            }
            terms.push_back(quo.get_si());
            num = den;
            den = rem;
        }
        return PeriodicCF(std::move(terms));
    }

    // Text form "a0;a1,a2,(p1,p2)*"; "a0" alone is an integer.
    static PeriodicCF parse(std::string_view text)
    {
        std::string s;
        for (char ch : text) {
            if (std::isspace(static_cast<unsigned char>(ch)) == 0) {
                s.push_back(ch);
            }
        }
        if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
            s = s.substr(1, s.size() - 2);
        }
        const auto semi = s.find(';');
        std::vector<long> pre;
        std::vector<long> per;
        auto number = [&](const std::string &tok) -> long {
            BigInt v = parse_bigint(tok);
            if (!v.fits_slong_p()) {
                raise(ErrorKind::ParseError, "partial quotient out of range: " + tok);
            }
            return v.get_si();
        };
        pre.push_back(number(s.substr(0, semi)));
        if (semi != std::string::npos) {
            std::string rest = s.substr(semi + 1);
            const auto open = rest.find('(');
            std::string head = rest.substr(0, open);
            if (open != std::string::npos) {
                const auto close = rest.find(')', open);
                if (close == std::string::npos || rest.substr(close) != ")*") {
                    raise(ErrorKind::ParseError, "period must be written (p1,...,pm)* at the end");
                }
                std::stringstream ps(rest.substr(open + 1, close - open - 1));
                for (std::string tok; std::getline(ps, tok, ',');) {
                    per.push_back(number(tok));
                }
                if (per.empty()) {
                    raise(ErrorKind::ParseError, "empty period");
                }
                if (!head.empty() && head.back() != ',') {
                    raise(ErrorKind::ParseError, "expected ',' before the period");
                }
                if (!head.empty()) {
                    head.pop_back();
                }
            }
            std::stringstream hs(head);
            for (std::string tok; std::getline(hs, tok, ',');) {
                pre.push_back(number(tok));
            }
        }
        return PeriodicCF(std::move(pre), std::move(per));
    }

    [[nodiscard]] const std::vector<long> &preperiod() const noexcept { return preperiod_; }
    [[nodiscard]] const std::vector<long> &period() const noexcept { return period_; }
    [[nodiscard]] bool is_rational() const noexcept { return period_.empty(); }

    // Partial quotient a_i; for rationals only i < preperiod().size().
    [[nodiscard]] long term(std::size_t i) const
    {
        if (i < preperiod_.size()) {
            return preperiod_[i];
        }
        if (period_.empty()) {
            raise(ErrorKind::InvalidArgument, "rational continued fraction has no term " + std::to_string(i));
        }
        return period_[(i - preperiod_.size()) % period_.size()];
    }

    [[nodiscard]] std::string to_string() const
    {
        std::string s = std::to_string(preperiod_[0]);
        if (preperiod_.size() > 1 || !period_.empty()) {
            s += ';';
        }
        for (std::size_t i = 1; i < preperiod_.size(); ++i) {
            s += std::to_string(preperiod_[i]);
            if (i + 1 < preperiod_.size() || !period_.empty()) {
                s += ',';
            }
        }
        if (!period_.empty()) {
            s += '(';
            for (std::size_t i = 0; i < period_.size(); ++i) {
                s += (i ? "," : "") + std::to_string(period_[i]);
            }
            s += ")*";
        }
        return s;
    }

private:
    std::vector<long> preperiod_;
    std::vector<long> period_;
};

// 2x2 matrix over exact Laurent polynomials, acting by Moebius transform.
struct MoebiusMatrix {
    std::array<LaurentSeries, 4> m{LaurentSeries::constant(1), LaurentSeries::zero(), LaurentSeries::zero(),
                                   LaurentSeries::constant(1)};

    const LaurentSeries &a() const { return m[0]; }
    const LaurentSeries &b() const { return m[1]; }
    const LaurentSeries &c() const { return m[2]; }
    const LaurentSeries &d() const { return m[3]; }

    friend MoebiusMatrix operator*(const MoebiusMatrix &x, const MoebiusMatrix &y)
    {
        MoebiusMatrix r;
        r.m[0] = x.m[0] * y.m[0] + x.m[1] * y.m[2];
        r.m[1] = x.m[0] * y.m[1] + x.m[1] * y.m[3];
        r.m[2] = x.m[2] * y.m[0] + x.m[3] * y.m[2];
        r.m[3] = x.m[2] * y.m[1] + x.m[3] * y.m[3];
        return r;
    }
};

namespace detail {

// Level j of the q-continued fraction: t -> b_j + c_{j+1}/t with
// b_j = [a_j]_q, c_{j+1} = q^{a_j} on even levels and
// b_j = [a_j]_{q^-1}, c_{j+1} = q^{-a_j} on odd levels.
inline MoebiusMatrix cf_level(long a, std::size_t j)
{
    const bool even = (j % 2) == 0;
    MoebiusMatrix r;
    r.m[0] = even ? q_integer(a) : q_integer_inverted(a);
    r.m[1] = LaurentSeries::monomial(BigRat(1), even ? a : -a);
    r.m[2] = LaurentSeries::constant(1);
    r.m[3] = LaurentSeries::zero();
    return r;
}

// Numerator and denominator of the convergent after levels 0..count-1.
struct Convergent {
    LaurentSeries num;
    LaurentSeries den;
};

} // namespace detail

// Reduced fraction R(q)/S(q) of integer polynomials. The lowest nonzero
// coefficient of S is positive; S may vanish at q = 0.
struct QRational {
    IntPolynomial num;
    IntPolynomial den;

    [[nodiscard]] LaurentSeries to_series(long order) const
    {
        return divide(LaurentSeries::from_polynomial(num), LaurentSeries::from_polynomial(den), order);
    }

    friend bool operator==(const QRational &, const QRational &) = default;
};

namespace detail {

// Multiply a Laurent polynomial with integer coefficients by q^shift and
// return it as a polynomial.
inline IntPolynomial to_int_polynomial(const LaurentSeries &x, long shift)
{
    if (x.is_zero()) {
        return {};
    }
    if (x.valuation() + shift < 0) {
        raise(ErrorKind::InvalidArgument, "shift too small for Laurent polynomial");
    }
    const auto v = x.integer_coeffs(x.valuation(), x.window_end());
    std::vector<BigInt> c(static_cast<std::size_t>(x.valuation() + shift), BigInt(0));
    c.insert(c.end(), v.begin(), v.end());
    return IntPolynomial(std::move(c));
}

inline long min_valuation(std::initializer_list<const LaurentSeries *> xs)
{
    long v = 0;
    bool any = false;
    for (const auto *x : xs) {
        if (!x->is_zero()) {
            v = any ? std::min(v, x->valuation()) : x->valuation();
            any = true;
        }
    }
    return v;
}

// R/S from Laurent polynomials num/den, gcd-reduced and sign-normalized.
inline QRational reduce_fraction(const LaurentSeries &num, const LaurentSeries &den)
{
    if (den.is_zero()) {
        raise(ErrorKind::ZeroSeries, "zero denominator");
    }
    const long shift = -min_valuation({&num, &den});
    IntPolynomial r = to_int_polynomial(num, shift);
    IntPolynomial s = to_int_polynomial(den, shift);
    if (r.is_zero()) {
        return {IntPolynomial{}, IntPolynomial{1}};
    }
    const IntPolynomial g = IntPolynomial::gcd(r, s);
    r = r.divided_by(g);
    s = s.divided_by(g);
    if (s.coeff(s.valuation()) < 0) {
        r = -r;
        s = -s;
    }
    return {r, s};
}

inline detail::Convergent evaluate_levels(const PeriodicCF &cf, std::size_t count)
{
    // h_j = b_j h_{j-1} + c_j h_{j-2}, same for k_j, with h_{-1} = 1,
    // h_{-2} = 0, k_{-1} = 0, k_{-2} = 1.
    LaurentSeries h_prev = LaurentSeries::constant(1);
    LaurentSeries h_prev2 = LaurentSeries::zero();
    LaurentSeries k_prev = LaurentSeries::zero();
    LaurentSeries k_prev2 = LaurentSeries::constant(1);
    LaurentSeries c = LaurentSeries::constant(1);
    for (std::size_t j = 0; j < count; ++j) {
        const MoebiusMatrix lvl = cf_level(cf.term(j), j);
        LaurentSeries h = lvl.a() * h_prev + c * h_prev2;
        LaurentSeries k = lvl.a() * k_prev + c * k_prev2;
        h_prev2 = std::move(h_prev);
        h_prev = std::move(h);
        k_prev2 = std::move(k_prev);
        k_prev = std::move(k);
        c = lvl.b();
    }
    return {h_prev, k_prev};
}

} // namespace detail

// [r/s]_q as a reduced fraction of integer polynomials.
inline QRational q_rational(const BigInt &r, const BigInt &s)
{
    BigInt g;
    mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
    if (g != 1 && r != 0) {
        raise(ErrorKind::InvalidArgument, "q_rational needs gcd(r, s) = 1");
    }
    const PeriodicCF cf = PeriodicCF::rational(r, s);
    const auto conv = detail::evaluate_levels(cf, cf.preperiod().size());
    return detail::reduce_fraction(conv.num, conv.den);
}

inline QRational q_rational(const PeriodicCF &cf)
{
    if (!cf.is_rational()) {
        raise(ErrorKind::InvalidArgument, "q_rational needs a finite continued fraction");
    }
    const auto conv = detail::evaluate_levels(cf, cf.preperiod().size());
    return detail::reduce_fraction(conv.num, conv.den);
}

// [x]_q modulo q^order. Convergents are expanded until two consecutive
// ones agree and a third confirms; at most 16*order + 64 levels.
inline LaurentSeries q_real_truncated(const PeriodicCF &cf, long order)
{
    if (order < 1) {
        raise(ErrorKind::InvalidArgument, "order must be at least 1");
    }
    auto expand = [order](const detail::Convergent &c) { return divide(c.num, c.den, order); };
    if (cf.is_rational()) {
        return expand(detail::evaluate_levels(cf, cf.preperiod().size())).require_integral("q-rational");
    }
    const auto cap = static_cast<std::size_t>(16 * order + 64);
    LaurentSeries h_prev = LaurentSeries::constant(1);
    LaurentSeries h_prev2 = LaurentSeries::zero();
    LaurentSeries k_prev = LaurentSeries::zero();
    LaurentSeries k_prev2 = LaurentSeries::constant(1);
    LaurentSeries c = LaurentSeries::constant(1);
    std::optional<LaurentSeries> last;
    int agreements = 0;
    for (std::size_t j = 0; j < cap; ++j) {
        const MoebiusMatrix lvl = detail::cf_level(cf.term(j), j);
        LaurentSeries h = lvl.a() * h_prev + c * h_prev2;
        LaurentSeries k = lvl.a() * k_prev + c * k_prev2;
        h_prev2 = std::move(h_prev);
        h_prev = std::move(h);
        k_prev2 = std::move(k_prev);
        k_prev = std::move(k);
        c = lvl.b();
        LaurentSeries current = divide(h_prev, k_prev, order);
        if (last && current == *last) {
            if (++agreements >= 2) {
                return current.require_integral("q-real expansion");
            }
        } else {
            agreements = 0;
        }
        last = std::move(current);
    }
    raise(ErrorKind::NoStabilization,
          "convergents of " + cf.to_string() + " did not stabilize modulo q^" + std::to_string(order));
}

// (R + sign*sqrt(P)) / S, where sqrt(P) is the branch with positive
// leading coefficient.
struct QuadraticForm {
    IntPolynomial R;
    IntPolynomial P;
    IntPolynomial S;
    int sign = 1;

    // sqrt(P) modulo q^order.
    [[nodiscard]] LaurentSeries sqrt_p(long order) const
    {
        const long v = P.valuation();
        if (v % 2 != 0) {
            raise(ErrorKind::BadConstantTerm, "discriminant has odd valuation");
        }
        const BigInt lead = P.coeff(v);
        BigInt root;
        if (lead < 0 || !mpz_perfect_square_p(lead.get_mpz_t())) {
            raise(ErrorKind::BadConstantTerm, "lowest coefficient of the discriminant is not a square");
        }
        mpz_sqrt(root.get_mpz_t(), lead.get_mpz_t());
        const BigRat inv_lead = make_rat(BigInt(1), lead);
        const LaurentSeries unit = inv_lead * LaurentSeries::from_polynomial(P, -v);
        return (BigRat(root) * sqrt(unit, order - v / 2)).shifted(v / 2);
    }

    // Series of the value modulo q^order.
    [[nodiscard]] LaurentSeries series(long order, int branch) const
    {
        const long vs = S.valuation();
        const LaurentSeries num =
            LaurentSeries::from_polynomial(R) + BigRat(branch) * sqrt_p(order + vs);
        return divide(num, LaurentSeries::from_polynomial(S), order);
    }

    [[nodiscard]] LaurentSeries series(long order) const { return series(order, sign); }
    [[nodiscard]] LaurentSeries conjugate_series(long order) const { return series(order, -sign); }
};

// Closed form of a quadratic irrational from its periodic continued fraction.
inline QuadraticForm quantize_quadratic(const PeriodicCF &cf)
{
    if (cf.is_rational()) {
        raise(ErrorKind::InvalidArgument, "quantize_quadratic needs a nonempty period");
    }
    const std::size_t start = cf.preperiod().size();
    std::size_t len = cf.period().size();
    if (len % 2 != 0) {
        len *= 2;
    }
    MoebiusMatrix pre;
    for (std::size_t j = 0; j < start; ++j) {
        pre = pre * detail::cf_level(cf.term(j), j);
    }
    MoebiusMatrix per;
    for (std::size_t j = start; j < start + len; ++j) {
        per = per * detail::cf_level(cf.term(j), j);
    }
    // Tail t = per(t): C t^2 + (D - A) t - B = 0. With x = pre(t),
    // t = (delta x - beta) / (alpha - gamma x).
    const LaurentSeries &A = per.a();
    const LaurentSeries &B = per.b();
    const LaurentSeries &C = per.c();
    const LaurentSeries &D = per.d();
    const LaurentSeries &al = pre.a();
    const LaurentSeries &be = pre.b();
    const LaurentSeries &ga = pre.c();
    const LaurentSeries &de = pre.d();
    const LaurentSeries dma = D - A;
    const BigRat two(2);
    const LaurentSeries qa = C * de * de - dma * de * ga - B * ga * ga;
    const LaurentSeries qb = -(two * C * de * be) + dma * (de * al + be * ga) + two * B * al * ga;
    const LaurentSeries qc = C * be * be - dma * be * al - B * al * al;

    const long shift = -detail::min_valuation({&qa, &qb, &qc});
    IntPolynomial pa = detail::to_int_polynomial(qa, shift);
    IntPolynomial pb = detail::to_int_polynomial(qb, shift);
    IntPolynomial pc = detail::to_int_polynomial(qc, shift);
    const IntPolynomial g = IntPolynomial::gcd(IntPolynomial::gcd(pa, pb), pc);
    pa = pa.divided_by(g);
    pb = pb.divided_by(g);
    pc = pc.divided_by(g);
    if (pa.coeff(pa.valuation()) < 0) {
        pa = -pa;
        pb = -pb;
        pc = -pc;
    }
    QuadraticForm form{-pb, pb * pb - BigInt(4) * pa * pc, BigInt(2) * pa, 1};

    constexpr long kCheckOrder = 10;
    const LaurentSeries reference = q_real_truncated(cf, kCheckOrder);
    for (int branch : {1, -1}) {
        if (form.series(kCheckOrder, branch) == reference) {
            form.sign = branch;
            return form;
        }
    }
    raise(ErrorKind::BranchMismatch, "neither square-root branch matches the expansion of " + cf.to_string());
}

// [x + k]_q = q^k [x]_q + [k]_q.
inline LaurentSeries shift(const LaurentSeries &x, long k) { return x.shifted(k) + q_integer(k); }

// [-1/x]_q = -1/(q [x]_q), modulo q^order.
inline LaurentSeries neg_reciprocal(const LaurentSeries &x, long order)
{
    return -inverse(x.shifted(1), order);
}

// [-x]_q = (-[x]_q + 1 - q^-1) / ((q - 1)[x]_q + 1), modulo q^order.
inline LaurentSeries negate(const LaurentSeries &x, long order)
{
    const LaurentSeries num = -x + LaurentSeries::exact(-1, {BigRat(-1), BigRat(1)});
    const LaurentSeries den = LaurentSeries::exact(0, {BigRat(-1), BigRat(1)}) * x + LaurentSeries::constant(1);
    return divide(num, den, order);
}

// [1/x]_q = ((q - 1)[x]_q + 1) / (q [x]_q + 1 - q), modulo q^order.
inline LaurentSeries reciprocal(const LaurentSeries &x, long order)
{
    const LaurentSeries num = LaurentSeries::exact(0, {BigRat(-1), BigRat(1)}) * x + LaurentSeries::constant(1);
    const LaurentSeries den = x.shifted(1) + LaurentSeries::exact(0, {BigRat(1), BigRat(-1)});
    return divide(num, den, order);
}

} // namespace qmetallic
