#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "error.hpp"

namespace qmetallic {

using BigInt = mpz_class;
// mpq_class keeps itself canonical (lowest terms, positive denominator)
// after every arithmetic operation; construction from parts needs an
// explicit canonicalize(), which make_rat() does.
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt &num, const BigInt &den)
{
    if (den == 0) {
        raise(ErrorKind::InvalidArgument, "zero denominator");
    }
    BigRat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const BigRat &r) { return r.get_den() == 1; }

// C(n, k), zero outside 0 <= k <= n.
inline BigInt binomial(long n, long k)
{
    BigInt r;
    if (n < 0 || k < 0 || k > n) {
        return r;
    }
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

inline BigInt pow2(unsigned long e)
{
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

inline BigInt pow_int(const BigInt &base, unsigned long e)
{
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline int sign_of(const BigInt &x) { return sgn(x); }
inline int sign_of(const BigRat &x) { return sgn(x); }

inline std::string to_decimal(const BigInt &x) { return x.get_str(10); }

// Integers print without a denominator; other rationals as "p/q".
inline std::string to_decimal(const BigRat &x)
{
    if (is_integral(x)) {
        return x.get_num().get_str(10);
    }
    return x.get_num().get_str(10) + "/" + x.get_den().get_str(10);
}

inline BigInt parse_bigint(std::string_view text)
{
    std::string s(text);
    if (s.empty() || s == "-" || s == "+") {
        raise(ErrorKind::ParseError, "empty integer");
    }
    if (s.front() == '+') {
        s.erase(0, 1);
    }
    BigInt r;
    if (r.set_str(s, 10) != 0) {
        raise(ErrorKind::ParseError, "not a decimal integer: '" + std::string(text) + "'");
    }
    return r;
}

inline BigRat parse_bigrat(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return BigRat(parse_bigint(text));
    }
    return make_rat(parse_bigint(text.substr(0, slash)), parse_bigint(text.substr(slash + 1)));
}

} // namespace qmetallic
