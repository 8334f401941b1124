#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"

namespace qmetallic {

// Dense polynomial in q with arbitrary-precision integer coefficients,
// stored by ascending degree with no trailing zeros.
class IntPolynomial {
public:
    static constexpr long kMinusInfinity = std::numeric_limits<long>::min();

    IntPolynomial() = default;

    explicit IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    IntPolynomial(std::initializer_list<long> coeffs)
    {
        coeffs_.reserve(coeffs.size());
        for (long c : coeffs) {
            coeffs_.emplace_back(c);
        }
        trim();
    }

    static IntPolynomial monomial(const BigInt &c, std::size_t degree)
    {
        std::vector<BigInt> v(degree + 1);
        v[degree] = c;
        return IntPolynomial(std::move(v));
    }

    // 1 + q + ... + q^(n-1); zero for n <= 0.
    static IntPolynomial q_integer(long n)
    {
        if (n <= 0) {
            return {};
        }
        return IntPolynomial(std::vector<BigInt>(static_cast<std::size_t>(n), BigInt(1)));
    }

    [[nodiscard]] const std::vector<BigInt> &coeffs() const noexcept { return coeffs_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }

    [[nodiscard]] long degree() const noexcept
    {
        return coeffs_.empty() ? kMinusInfinity : static_cast<long>(coeffs_.size()) - 1;
    }

    // Lowest exponent carrying a nonzero coefficient; 0 for the zero polynomial.
    [[nodiscard]] long valuation() const noexcept
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] != 0) {
                return static_cast<long>(i);
            }
        }
        return 0;
    }

    [[nodiscard]] BigInt coeff(long i) const
    {
        if (i < 0 || i >= static_cast<long>(coeffs_.size())) {
            return BigInt(0);
        }
        return coeffs_[static_cast<std::size_t>(i)];
    }

    [[nodiscard]] const BigInt &leading() const { return coeffs_.back(); }

    [[nodiscard]] bool is_monomial() const
    {
        return !is_zero() && valuation() == degree();
    }

    [[nodiscard]] bool is_palindromic() const
    {
        return std::equal(coeffs_.begin(), coeffs_.end(), coeffs_.rbegin());
    }

    // q^d * p(1/q); requires d >= degree().
    [[nodiscard]] IntPolynomial reflected(long d) const
    {
        if (is_zero()) {
            return {};
        }
        if (d < degree()) {
            raise(ErrorKind::InvalidArgument, "reflection degree below polynomial degree");
        }
        std::vector<BigInt> v(static_cast<std::size_t>(d) + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            v[static_cast<std::size_t>(d) - i] = coeffs_[i];
        }
        return IntPolynomial(std::move(v));
    }

    [[nodiscard]] IntPolynomial derivative() const
    {
        if (coeffs_.size() <= 1) {
            return {};
        }
        std::vector<BigInt> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
        }
        return IntPolynomial(std::move(v));
    }

    // Multiply by q^k, k >= 0.
    [[nodiscard]] IntPolynomial shifted(std::size_t k) const
    {
        if (is_zero()) {
            return {};
        }
        std::vector<BigInt> v(k, BigInt(0));
        v.insert(v.end(), coeffs_.begin(), coeffs_.end());
        return IntPolynomial(std::move(v));
    }

    // Divide by q^k; the low coefficients must vanish.
    [[nodiscard]] IntPolynomial unshifted(std::size_t k) const
    {
        if (is_zero()) {
            return {};
        }
        if (static_cast<long>(k) > valuation()) {
            raise(ErrorKind::NonExactDivision, "polynomial not divisible by q^" + std::to_string(k));
        }
        return IntPolynomial(std::vector<BigInt>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
    }

    template <typename Value>
    [[nodiscard]] Value eval(const Value &x) const
    {
        Value acc(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
            acc = acc * x + Value(*it);
        }
        return acc;
    }

    [[nodiscard]] BigInt content() const
    {
        BigInt g(0);
        for (const auto &c : coeffs_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    }

    [[nodiscard]] IntPolynomial primitive_part() const
    {
        if (is_zero()) {
            return {};
        }
        BigInt g = content();
        if (leading() < 0) {
            g = -g;
        }
        return divided_by(g);
    }

    // Coefficientwise exact division by an integer.
    [[nodiscard]] IntPolynomial divided_by(const BigInt &d) const
    {
        std::vector<BigInt> v(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!mpz_divisible_p(coeffs_[i].get_mpz_t(), d.get_mpz_t())) {
                raise(ErrorKind::NonExactDivision, "coefficient not divisible by " + d.get_str());
            }
            mpz_divexact(v[i].get_mpz_t(), coeffs_[i].get_mpz_t(), d.get_mpz_t());
        }
        return IntPolynomial(std::move(v));
    }

    // Exact quotient over Z[q]; raises NonExactDivision on a remainder.
    [[nodiscard]] IntPolynomial divided_by(const IntPolynomial &d) const
    {
        if (d.is_zero()) {
            raise(ErrorKind::InvalidArgument, "division by the zero polynomial");
        }
        if (is_zero()) {
            return {};
        }
        std::vector<BigInt> rem = coeffs_;
        const long dd = d.degree();
        const long nd = degree();
        if (nd < dd) {
            raise(ErrorKind::NonExactDivision, "polynomial division leaves a remainder");
        }
        std::vector<BigInt> quo(static_cast<std::size_t>(nd - dd) + 1);
        for (long i = nd - dd; i >= 0; --i) {
            BigInt &top = rem[static_cast<std::size_t>(i + dd)];
            if (top == 0) {
                continue;
            }
            if (!mpz_divisible_p(top.get_mpz_t(), d.leading().get_mpz_t())) {
                raise(ErrorKind::NonExactDivision, "polynomial division leaves a remainder");
            }
            BigInt q;
            mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), d.leading().get_mpz_t());
            for (long j = 0; j <= dd; ++j) {
                rem[static_cast<std::size_t>(i + j)] -= q * d.coeffs_[static_cast<std::size_t>(j)];
            }
            quo[static_cast<std::size_t>(i)] = std::move(q);
        }
        for (const auto &r : rem) {
            if (r != 0) {
                raise(ErrorKind::NonExactDivision, "polynomial division leaves a remainder");
            }
        }
        return IntPolynomial(std::move(quo));
    }

    // Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
    [[nodiscard]] static IntPolynomial pseudo_remainder(const IntPolynomial &a, const IntPolynomial &b)
    {
        std::vector<BigInt> rem = a.coeffs_;
        const long db = b.degree();
        const BigInt &lb = b.leading();
        for (long top = static_cast<long>(rem.size()) - 1; top >= db; --top) {
            BigInt lead = rem[static_cast<std::size_t>(top)];
            for (auto &r : rem) {
                r *= lb;
            }
            for (long j = 0; j <= db; ++j) {
                rem[static_cast<std::size_t>(top - db + j)] -= lead * b.coeffs_[static_cast<std::size_t>(j)];
            }
            rem.pop_back();
        }
        return IntPolynomial(std::move(rem));
    }

    // gcd over Z[q] via the primitive remainder sequence; positive leading coefficient.
    [[nodiscard]] static IntPolynomial gcd(const IntPolynomial &a, const IntPolynomial &b)
    {
        if (a.is_zero()) {
            return (!b.is_zero() && b.leading() < 0) ? -b : b;
        }
        if (b.is_zero()) {
            return a.leading() < 0 ? -a : a;
        }
        BigInt c;
        mpz_gcd(c.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
        IntPolynomial x = a.primitive_part();
        IntPolynomial y = b.primitive_part();
        if (x.degree() < y.degree()) {
            std::swap(x, y);
        }
        while (!y.is_zero()) {
            IntPolynomial r = pseudo_remainder(x, y);
            x = std::move(y);
            y = r.primitive_part();
        }
        x = x.primitive_part();
        return x * IntPolynomial(std::vector<BigInt>{c});
    }

    friend IntPolynomial operator+(const IntPolynomial &a, const IntPolynomial &b)
    {
        std::vector<BigInt> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            v[i] += a.coeffs_[i];
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            v[i] += b.coeffs_[i];
        }
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator-(const IntPolynomial &a)
    {
        std::vector<BigInt> v(a.coeffs_.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = -a.coeffs_[i];
        }
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator-(const IntPolynomial &a, const IntPolynomial &b) { return a + (-b); }

    friend IntPolynomial operator*(const IntPolynomial &a, const IntPolynomial &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return {};
        }
        std::vector<BigInt> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
            }
        }
        return IntPolynomial(std::move(v));
    }

    friend IntPolynomial operator*(const BigInt &c, const IntPolynomial &p)
    {
        return IntPolynomial(std::vector<BigInt>{c}) * p;
    }

    IntPolynomial &operator+=(const IntPolynomial &o) { return *this = *this + o; }
    IntPolynomial &operator-=(const IntPolynomial &o) { return *this = *this - o; }
    IntPolynomial &operator*=(const IntPolynomial &o) { return *this = *this * o; }

    friend bool operator==(const IntPolynomial &a, const IntPolynomial &b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPolynomial &a, const IntPolynomial &b) { return !(a == b); }

    [[nodiscard]] IntPolynomial pow(unsigned e) const
    {
        IntPolynomial r({1});
        for (unsigned i = 0; i < e; ++i) {
            r *= *this;
        }
        return r;
    }

    [[nodiscard]] std::string to_string() const
    {
        if (is_zero()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            const BigInt &c = coeffs_[i];
            if (c == 0) {
                continue;
            }
            BigInt mag = abs(c);
            if (first) {
                os << (c < 0 ? "-" : "");
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            if (i == 0 || mag != 1) {
                os << mag.get_str();
                if (i > 0) {
                    os << '*';
                }
            }
            if (i == 1) {
                os << 'q';
            } else if (i > 1) {
                os << "q^" << i;
            }
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const IntPolynomial &p) { return os << p.to_string(); }

private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0) {
            coeffs_.pop_back();
        }
    }

    std::vector<BigInt> coeffs_;
};

} // namespace qmetallic
