#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "polynomial.hpp"
#include "series.hpp"

namespace qmetallic {

inline void require_index(long n)
{
    if (n < 1) {
        raise(ErrorKind::InvalidArgument, "metallic index must be at least 1, got " + std::to_string(n));
    }
}

// R_n = q[n]_q + (q^n + 1)(q - 1)
inline IntPolynomial poly_R(long n)
{
    require_index(n);
    const auto un = static_cast<std::size_t>(n);
    return IntPolynomial::q_integer(n).shifted(1) +
           (IntPolynomial::monomial(BigInt(1), un) + IntPolynomial{1}) * IntPolynomial{-1, 1};
}

// Q_n = [n+1]_q^2 - q[2n-1]_q + 2q^n
inline IntPolynomial poly_Q(long n)
{
    require_index(n);
    const IntPolynomial top = IntPolynomial::q_integer(n + 1);
    return top * top - IntPolynomial::q_integer(2 * n - 1).shifted(1) +
           IntPolynomial::monomial(BigInt(2), static_cast<std::size_t>(n));
}

// P_n = R_n^2 + 4q, checked against (1 - q + q^2) Q_n.
inline IntPolynomial poly_P(long n)
{
    const IntPolynomial r = poly_R(n);
    IntPolynomial p = r * r + IntPolynomial{0, 4};
    if (p != IntPolynomial{1, -1, 1} * poly_Q(n)) {
        raise(ErrorKind::InvalidArgument, "P_n does not factor as (1-q+q^2) Q_n for n = " + std::to_string(n));
    }
    return p;
}

enum class Engine { Convolution, PRecurrence, Sqrt, ClosedForm };

constexpr std::string_view engine_name(Engine e)
{
    switch (e) {
    case Engine::Convolution:
        return "conv";
    case Engine::PRecurrence:
        return "prec";
    case Engine::Sqrt:
        return "sqrt";
    case Engine::ClosedForm:
        return "closed";
    }
    return "?";
}

inline Engine parse_engine(std::string_view s)
{
    if (s == "conv" || s == "convolution") {
        return Engine::Convolution;
    }
    if (s == "prec" || s == "precurrence") {
        return Engine::PRecurrence;
    }
    if (s == "sqrt") {
        return Engine::Sqrt;
    }
    if (s == "closed" || s == "closedform") {
        return Engine::ClosedForm;
    }
    raise(ErrorKind::InvalidArgument, "unknown engine '" + std::string(s) + "' (conv, prec, sqrt, closed)");
}

// kappa_0 .. kappa_{upto-1} of [phi_n]_q.
struct CoeffTable {
    long n = 1;
    long upto = 0;
    std::vector<BigInt> values;
    Engine engine = Engine::Convolution;

    [[nodiscard]] LaurentSeries series() const { return LaurentSeries::from_integers(values).truncated(upto); }

    // 1 + q + ... + q^{n-1} + 0*q^n, as far as the table reaches.
    [[nodiscard]] std::optional<long> prefix_violation() const
    {
        for (long l = 0; l < std::min(upto, n + 1); ++l) {
            const long want = l < n ? 1 : 0;
            if (values[static_cast<std::size_t>(l)] != want) {
                return l;
            }
        }
        return std::nullopt;
    }
};

// From q Phi^2 = R_n Phi + 1:
//   kappa_l = [l = 0] + sum_{j>=1} r_j kappa_{l-j} - sum_{i=0}^{l-1} kappa_i kappa_{l-1-i}.
inline CoeffTable coeffs_convolution(long n, long L)
{
    require_index(n);
    if (L < 0) {
        raise(ErrorKind::InvalidArgument, "negative length");
    }
    const IntPolynomial r = poly_R(n);
    std::vector<BigInt> k(static_cast<std::size_t>(L));
    BigInt half;
    for (long l = 0; l < L; ++l) {
        BigInt acc = (l == 0) ? 1 : 0;
        for (long j = 1; j <= std::min(l, r.degree()); ++j) {
            const BigInt &rj = r.coeffs()[static_cast<std::size_t>(j)];
            if (rj != 0) {
                mpz_addmul(acc.get_mpz_t(), rj.get_mpz_t(), k[static_cast<std::size_t>(l - j)].get_mpz_t());
            }
        }
        // sum_{i=0}^{m} kappa_i kappa_{m-i} with m = l - 1, folded in half.
        const long m = l - 1;
        if (m >= 0) {
            half = 0;
            for (long i = 0; 2 * i < m; ++i) {
                mpz_addmul(half.get_mpz_t(), k[static_cast<std::size_t>(i)].get_mpz_t(),
                           k[static_cast<std::size_t>(m - i)].get_mpz_t());
            }
            mpz_submul_ui(acc.get_mpz_t(), half.get_mpz_t(), 2);
            if (m % 2 == 0) {
                const BigInt &mid = k[static_cast<std::size_t>(m / 2)];
                mpz_submul(acc.get_mpz_t(), mid.get_mpz_t(), mid.get_mpz_t());
            }
        }
        k[static_cast<std::size_t>(l)] = std::move(acc);
    }
    return {n, L, std::move(k), Engine::Convolution};
}

// One lag of the P-recurrence: coefficient (slope*l + intercept) on kappa_{l-lag}.
struct RecurrenceTerm {
    long lag;
    long slope;
    long intercept;

    [[nodiscard]] long at(long l) const { return slope * l + intercept; }
};

struct RecurrenceSpec {
    long n = 1;
    long order = 0;
    std::vector<RecurrenceTerm> terms; // lag 0 first
    long valid_from = 0;
};

inline RecurrenceSpec recurrence_spec(long n)
{
    require_index(n);
    RecurrenceSpec spec;
    spec.n = n;
    std::vector<RecurrenceTerm> &t = spec.terms;
    if (n == 1) {
        t = {{0, 1, 1}, {1, 2, -1}, {2, -1, 2}, {3, 2, -7}, {4, 1, -5}};
        spec.valid_from = 4;
    } else if (n == 2) {
        t = {{0, 1, 1}, {2, 4, -8}, {3, -2, 7}, {4, 4, -20}, {6, 1, -8}};
        spec.valid_from = 6;
    } else {
        // (a*l + b) written from factored forms c*(2l + d).
        auto add = [&t](long lag, long c, long d) {
            if (c != 0) {
                t.push_back({lag, 2 * c, c * d});
            }
        };
        t.push_back({0, 2, 2});
        t.push_back({2, 4, -8});
        for (long j = 3; j <= n - 1; ++j) {
            add(j, j - 1, -3 * j + 2);
        }
        add(n, n + 1, -3 * n + 2);
        add(n + 1, n - 4, -3 * n - 1);
        add(n + 2, n + 1, -3 * n - 4);
        for (long j = n + 3; j <= 2 * n - 1; ++j) {
            add(j, 2 * n - j + 1, -3 * j + 2);
        }
        t.push_back({2 * n, 4, -12 * n + 4});
        t.push_back({2 * n + 2, 2, -6 * n - 4});
        spec.valid_from = 2 * n + 2;
    }
    long max_lag = 0;
    for (const auto &term : t) {
        max_lag = std::max(max_lag, term.lag);
    }
    spec.order = max_lag;
    return spec;
}

// Continue a table to length L with the P-recurrence. The table must
// already reach valid_from.
inline void extend_p_recurrence(CoeffTable &table, long L)
{
    const RecurrenceSpec spec = recurrence_spec(table.n);
    if (table.upto < spec.valid_from) {
        raise(ErrorKind::InsufficientOrder, "P-recurrence resume needs " + std::to_string(spec.valid_from) +
                                                " seed values, have " + std::to_string(table.upto));
    }
    table.values.resize(static_cast<std::size_t>(std::max(L, table.upto)));
    BigInt acc;
    BigInt rem;
    for (long l = table.upto; l < L; ++l) {
        acc = 0;
        for (std::size_t i = 1; i < spec.terms.size(); ++i) {
            const RecurrenceTerm &term = spec.terms[i];
            const long c = term.at(l);
            if (c != 0) {
                const BigInt &prev = table.values[static_cast<std::size_t>(l - term.lag)];
                if (c > 0) {
                    mpz_addmul_ui(acc.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(c));
                } else {
                    mpz_submul_ui(acc.get_mpz_t(), prev.get_mpz_t(), static_cast<unsigned long>(-c));
                }
            }
        }
        const long lead = spec.terms[0].at(l);
        BigInt &out = table.values[static_cast<std::size_t>(l)];
        mpz_tdiv_qr_ui(out.get_mpz_t(), rem.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(lead));
        if (rem != 0) {
            raise(ErrorKind::NonExactDivision,
                  "P-recurrence for n = " + std::to_string(table.n) + " not divisible at l = " + std::to_string(l));
        }
        out = -out;
    }
    table.upto = std::max(L, table.upto);
    table.engine = Engine::PRecurrence;
}

inline CoeffTable coeffs_p_recurrence(long n, long L)
{
    const RecurrenceSpec spec = recurrence_spec(n);
    CoeffTable t = coeffs_convolution(n, std::min(L, spec.valid_from));
    if (L > spec.valid_from) {
        extend_p_recurrence(t, L);
    }
    t.engine = Engine::PRecurrence;
    return t;
}

// Residual of the recurrence at l for the given values (zero when it holds).
inline BigInt recurrence_residual(const RecurrenceSpec &spec, std::span<const BigInt> k, long l)
{
    BigInt acc;
    for (const auto &term : spec.terms) {
        acc += BigInt(term.at(l)) * k[static_cast<std::size_t>(l - term.lag)];
    }
    return acc;
}

// j! / prod(parts!) as a product of binomials; 0 if any part is negative.
inline BigInt multinomial(long j, std::span<const long> parts)
{
    long sum = 0;
    for (long p : parts) {
        if (p < 0) {
            return BigInt(0);
        }
        sum += p;
    }
    if (sum != j) {
        raise(ErrorKind::InvalidArgument, "multinomial parts do not sum to j");
    }
    BigInt r(1);
    long left = j;
    for (long p : parts) {
        r *= binomial(left, p);
        left -= p;
    }
    return r;
}

inline BigInt multinomial(long j, std::initializer_list<long> parts)
{
    return multinomial(j, std::span<const long>(parts.begin(), parts.size()));
}

namespace detail {

inline long floor_div(long a, long b)
{
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline long ceil_div(long a, long b) { return -floor_div(-a, b); }

inline BigInt require_integer(const BigRat &x, const char *what, long l)
{
    if (!is_integral(x)) {
        raise(ErrorKind::NonIntegralResult,
              std::string(what) + " closed form gives " + to_decimal(x) + " at l = " + std::to_string(l));
    }
    return x.get_num();
}

} // namespace detail

// (-1)^l sum_{k=1}^{floor(l/2)} C(l-k,k) C(l-k,k-1) / (l-k)
inline BigInt closed_form_golden(long l)
{
    if (l < 0) {
        raise(ErrorKind::InvalidArgument, "negative index");
    }
    if (l <= 1) {
        return BigInt(l == 0 ? 1 : 0);
    }
    BigRat acc(0);
    for (long k = 1; k <= l / 2; ++k) {
        acc += BigRat(binomial(l - k, k) * binomial(l - k, k - 1), BigInt(l - k));
    }
    acc.canonicalize();
    BigInt r = detail::require_integer(acc, "golden", l);
    return (l % 2 == 0) ? r : BigInt(-r);
}

inline BigInt closed_form_silver(long l)
{
    if (l < 0) {
        raise(ErrorKind::InvalidArgument, "negative index");
    }
    if (l <= 3) {
        return BigInt(l <= 1 ? 1 : 0);
    }
    BigRat acc(0);
    for (long j = detail::ceil_div(l - 1, 3); j <= detail::floor_div(l - 2, 2); ++j) {
        BigInt inner(0);
        for (long k = 0; k <= detail::floor_div(j - 1, 2); ++k) {
            const long e = 3 * j - k - l + 1;
            const BigInt m = multinomial(j, {k, k + 1, l - 2 - 2 * j - k, e});
            if (m == 0) {
                continue;
            }
            inner += m * pow2(static_cast<unsigned long>(e));
        }
        if ((j + l - 1) % 2 != 0) {
            inner = -inner;
        }
        acc += BigRat(inner, BigInt(j));
    }
    acc.canonicalize();
    return detail::require_integer(acc, "silver", l);
}

inline BigInt closed_form_bronze(long l)
{
    if (l < 0) {
        raise(ErrorKind::InvalidArgument, "negative index");
    }
    if (l <= 4) {
        return BigInt(l <= 2 ? 1 : 0);
    }
    BigRat acc(0);
    for (long j = detail::ceil_div(l - 2, 4); j <= detail::floor_div(l - 4, 2); ++j) {
        BigInt inner(0);
        for (long k = 0; k <= detail::floor_div(j - 1, 2); ++k) {
            for (long i = 0; i <= 4 * j - k - l + 2; ++i) {
                const long e = 4 * j - k - 2 * i - l + 2;
                const BigInt m = multinomial(j, {k, k + 1, i, l - 3 - 3 * j - k + i, e});
                if (m == 0) {
                    continue;
                }
                const BigInt term = m * pow2(static_cast<unsigned long>(e));
                if ((l + i) % 2 == 0) {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
        }
        acc += BigRat(inner, BigInt(j));
    }
    acc.canonicalize();
    return detail::require_integer(acc, "bronze", l);
}

inline CoeffTable coeffs_closed_form(long n, long L)
{
    if (n < 1 || n > 3) {
        raise(ErrorKind::InvalidArgument, "closed forms exist only for n <= 3, got n = " + std::to_string(n));
    }
    CoeffTable t{n, L, {}, Engine::ClosedForm};
    t.values.reserve(static_cast<std::size_t>(L));
    for (long l = 0; l < L; ++l) {
        t.values.push_back(n == 1 ? closed_form_golden(l) : n == 2 ? closed_form_silver(l) : closed_form_bronze(l));
    }
    return t;
}

// Phi_n = (R_n + sqrt(P_n)) / (2q) modulo q^L.
inline LaurentSeries phi_series_sqrt(long n, long L)
{
    if (L < 1) {
        raise(ErrorKind::InvalidArgument, "order must be at least 1");
    }
    const LaurentSeries root = sqrt(LaurentSeries::from_polynomial(poly_P(n)), L + 1);
    const LaurentSeries num = LaurentSeries::from_polynomial(poly_R(n)) + root;
    return (BigRat(1, 2) * num).shifted(-1).require_integral("sqrt expansion");
}

inline CoeffTable coeffs_sqrt(long n, long L)
{
    const LaurentSeries s = phi_series_sqrt(n, std::max(L, 1L));
    return {n, L, s.integer_coeffs(0, L), Engine::Sqrt};
}

inline CoeffTable coeffs(long n, long L, Engine engine)
{
    switch (engine) {
    case Engine::Convolution:
        return coeffs_convolution(n, L);
    case Engine::PRecurrence:
        return coeffs_p_recurrence(n, L);
    case Engine::Sqrt:
        return coeffs_sqrt(n, L);
    case Engine::ClosedForm:
        return coeffs_closed_form(n, L);
    }
    raise(ErrorKind::InvalidArgument, "unknown engine");
}

// Outcome of a truncated identity check.
struct SeriesCheck {
    bool holds = false;
    long checked_order = 0;
    std::optional<long> first_failure;
};

inline SeriesCheck zero_check(const LaurentSeries &expr)
{
    SeriesCheck c;
    c.checked_order = expr.order();
    if (!expr.is_zero()) {
        c.first_failure = expr.valuation();
    }
    c.holds = !c.first_failure.has_value();
    return c;
}

// q Phi^2 - R_n Phi - 1 == 0 modulo the order the coefficients support.
inline SeriesCheck verify_functional_equation(long n, std::span<const BigInt> kappa)
{
    const LaurentSeries phi = LaurentSeries::from_integers(kappa);
    const LaurentSeries truncated = phi.truncated(static_cast<long>(kappa.size()));
    const LaurentSeries expr = (truncated * truncated).shifted(1) -
                               LaurentSeries::from_polynomial(poly_R(n)) * truncated - LaurentSeries::constant(1);
    return zero_check(expr);
}

inline SeriesCheck verify_functional_equation(long n, long L)
{
    return verify_functional_equation(n, coeffs_p_recurrence(n, L).values);
}

// 4qP Phi' + (4P - 2qP') Phi + R P' - 2 P R' == 0
inline SeriesCheck verify_ode(long n, std::span<const BigInt> kappa)
{
    const auto R = LaurentSeries::from_polynomial(poly_R(n));
    const auto P = LaurentSeries::from_polynomial(poly_P(n));
    const auto dR = R.derivative();
    const auto dP = P.derivative();
    const LaurentSeries phi = LaurentSeries::from_integers(kappa).truncated(static_cast<long>(kappa.size()));
    const BigRat two(2);
    const BigRat four(4);
    const LaurentSeries expr = four * (P * phi.derivative()).shifted(1) +
                               (four * P - two * (dP.shifted(1))) * phi + R * dP - two * P * dR;
    return zero_check(expr);
}

// q(R^2 + 4q)Phi' + (R^2 - qRR' + 2q)Phi + R - 2qR' == 0, only R_n involved.
inline SeriesCheck verify_ode_r_form(long n, std::span<const BigInt> kappa)
{
    const IntPolynomial r = poly_R(n);
    const IntPolynomial dr = r.derivative();
    const IntPolynomial c1 = (r * r + IntPolynomial{0, 4}).shifted(1);
    const IntPolynomial c0 = r * r - (r * dr).shifted(1) + IntPolynomial{0, 2};
    const IntPolynomial c = r - BigInt(2) * dr.shifted(1);
    const LaurentSeries phi = LaurentSeries::from_integers(kappa).truncated(static_cast<long>(kappa.size()));
    const LaurentSeries expr = LaurentSeries::from_polynomial(c1) * phi.derivative() +
                               LaurentSeries::from_polynomial(c0) * phi + LaurentSeries::from_polynomial(c);
    return zero_check(expr);
}

// a1 * y' + a0 * y == rhs for polynomials a1, a0, rhs.
inline SeriesCheck verify_linear_ode(const IntPolynomial &a1, const IntPolynomial &a0, const IntPolynomial &rhs,
                                     const LaurentSeries &y)
{
    const LaurentSeries expr = LaurentSeries::from_polynomial(a1) * y.derivative() +
                               LaurentSeries::from_polynomial(a0) * y - LaurentSeries::from_polynomial(rhs);
    return zero_check(expr);
}

inline SeriesCheck verify_ode(long n, long L)
{
    return verify_ode(n, coeffs_p_recurrence(n, L).values);
}

// Fraction-free Gaussian elimination with row pivoting.
inline BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m)
{
    const std::size_t size = m.size();
    if (size == 0) {
        return BigInt(1);
    }
    BigInt prev(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < size; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < size && m[p][k] == 0) {
                ++p;
            }
            if (p == size) {
                return BigInt(0);
            }
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < size; ++i) {
            for (std::size_t j = k + 1; j < size; ++j) {
                BigInt v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = m[k][k];
    }
    BigInt det = m[size - 1][size - 1];
    return sign < 0 ? BigInt(-det) : det;
}

// det(kappa_{a+b+s})_{a,b<j}; needs kappa through index 2j-2+s.
inline BigInt hankel(std::span<const BigInt> kappa, long s, long j)
{
    if (s < 0 || j < 0) {
        raise(ErrorKind::InvalidArgument, "Hankel indices must be nonnegative");
    }
    if (j > 0 && static_cast<long>(kappa.size()) < 2 * j - 1 + s) {
        raise(ErrorKind::InsufficientOrder, "Hankel determinant needs coefficients through index " +
                                                std::to_string(2 * j - 2 + s));
    }
    std::vector<std::vector<BigInt>> m(static_cast<std::size_t>(j), std::vector<BigInt>(static_cast<std::size_t>(j)));
    for (long a = 0; a < j; ++a) {
        for (long b = 0; b < j; ++b) {
            m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = kappa[static_cast<std::size_t>(a + b + s)];
        }
    }
    return bareiss_determinant(std::move(m));
}

inline BigInt hankel(long n, long s, long j)
{
    const CoeffTable t = coeffs_p_recurrence(n, std::max(2 * j - 1 + s, 1L));
    return hankel(t.values, s, j);
}

} // namespace qmetallic
