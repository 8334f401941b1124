#pragma once

#include <cmath>
#include <cstdio>
#include <mutex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>
#include <mpfr.h>

#include "bigint.hpp"
#include "polynomial.hpp"

namespace qmetallic {

using MPReal = boost::multiprecision::mpfr_float;

inline unsigned digits10_for_bits(long bits)
{
    return static_cast<unsigned>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 1;
}

// Sets the working precision of newly created MPReal values for the
// lifetime of the scope. The default lives in one process-wide variable,
// so scopes on different threads are serialized.
class PrecisionScope {
public:
    explicit PrecisionScope(long bits) : lock_(mutex()), saved_(MPReal::default_precision())
    {
        MPReal::default_precision(digits10_for_bits(bits));
    }
    ~PrecisionScope() { MPReal::default_precision(saved_); }
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    static std::recursive_mutex &mutex()
    {
        static std::recursive_mutex m;
        return m;
    }
    std::unique_lock<std::recursive_mutex> lock_;
    unsigned saved_;
};

inline MPReal to_mpreal(const BigInt &z)
{
    MPReal r;
    mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

inline MPReal to_mpreal(const BigRat &x)
{
    MPReal r;
    mpfr_set_q(r.backend().data(), x.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline MPReal mp_pi()
{
    MPReal r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

// Significant-digit rendering that keeps trailing zeros, e.g. 1.00230495129970.
inline std::string format_significant(const MPReal &x, int digits)
{
    char *buf = nullptr;
    const std::string fmt = "%#." + std::to_string(digits) + "Rg";
    if (mpfr_asprintf(&buf, fmt.c_str(), x.backend().data()) < 0) {
        raise(ErrorKind::InvalidArgument, "mpfr formatting failed");
    }
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

// Decimal string with the given number of significant digits, exponent
// kept when needed. Used for JSON output of roots and constants.
inline std::string format_scientific(const MPReal &x, int digits)
{
    char *buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "Re";
    if (mpfr_asprintf(&buf, fmt.c_str(), x.backend().data()) < 0) {
        raise(ErrorKind::InvalidArgument, "mpfr formatting failed");
    }
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

struct MPComplex {
    MPReal re;
    MPReal im;

    MPComplex() : re(0), im(0) {}
    MPComplex(MPReal r) : re(std::move(r)), im(0) {}
    MPComplex(MPReal r, MPReal i) : re(std::move(r)), im(std::move(i)) {}

    [[nodiscard]] MPComplex conj() const { return {re, -im}; }
    [[nodiscard]] MPReal norm() const { return re * re + im * im; }
    [[nodiscard]] MPReal abs() const { return boost::multiprecision::hypot(re, im); }

    friend MPComplex operator+(const MPComplex &a, const MPComplex &b) { return {a.re + b.re, a.im + b.im}; }
    friend MPComplex operator-(const MPComplex &a, const MPComplex &b) { return {a.re - b.re, a.im - b.im}; }
    friend MPComplex operator-(const MPComplex &a) { return {-a.re, -a.im}; }
    friend MPComplex operator*(const MPComplex &a, const MPComplex &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend MPComplex operator*(const MPReal &s, const MPComplex &a) { return {s * a.re, s * a.im}; }
    friend MPComplex operator/(const MPComplex &a, const MPComplex &b)
    {
        const MPReal d = b.norm();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    MPComplex &operator+=(const MPComplex &b) { return *this = *this + b; }
    MPComplex &operator-=(const MPComplex &b) { return *this = *this - b; }
    MPComplex &operator*=(const MPComplex &b) { return *this = *this * b; }
};

inline MPComplex reciprocal(const MPComplex &z) { return MPComplex(MPReal(1)) / z; }

// Principal branch: nonnegative real part, cut along the negative axis.
inline MPComplex sqrt(const MPComplex &z)
{
    if (z.re == 0 && z.im == 0) {
        return {};
    }
    const MPReal r = z.abs();
    if (z.re >= 0) {
        const MPReal t = boost::multiprecision::sqrt((r + z.re) / 2);
        return {t, z.im / (2 * t)};
    }
    const MPReal t = boost::multiprecision::sqrt((r - z.re) / 2);
    return {boost::multiprecision::abs(z.im) / (2 * t), z.im < 0 ? MPReal(-t) : t};
}

inline MPComplex pow(const MPComplex &z, long e)
{
    if (e < 0) {
        return pow(reciprocal(z), -e);
    }
    MPComplex result(MPReal(1));
    MPComplex base = z;
    auto k = static_cast<unsigned long>(e);
    while (k != 0) {
        if ((k & 1UL) != 0) {
            result *= base;
        }
        k >>= 1UL;
        if (k != 0) {
            base *= base;
        }
    }
    return result;
}

inline MPComplex poly_eval_complex(const IntPolynomial &p, const MPComplex &z)
{
    MPComplex acc;
    const auto &c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * z;
        acc.re += to_mpreal(*it);
    }
    return acc;
}

} // namespace qmetallic
