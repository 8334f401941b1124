#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "polynomial.hpp"

namespace qmetallic {

// Truncated Laurent series in q with exact rational coefficients.
//
// A truncated series knows its coefficients exactly for every exponent
// below order(); the window holds exponents valuation() .. order()-1 and
// starts with a nonzero coefficient. The zero series has an empty window
// and valuation() == order(). An exact series (order() == kExact) is a
// Laurent polynomial: its window is its finite support.
class LaurentSeries {
public:
    static constexpr long kExact = std::numeric_limits<long>::max();

    LaurentSeries() : valuation_(0), order_(kExact) {}

    // Coefficients for exponents start, start+1, ...; the first
    // (order - start) entries are used, the rest must not be needed.
    LaurentSeries(long start, std::vector<BigRat> coeffs, long order)
        : valuation_(start), order_(order), coeffs_(std::move(coeffs))
    {
        if (order_ != kExact) {
            const long want = std::max(0L, order_ - start);
            if (static_cast<long>(coeffs_.size()) < want) {
                raise(ErrorKind::InsufficientOrder, "coefficient window shorter than the stated order");
            }
            coeffs_.resize(static_cast<std::size_t>(want));
            if (start > order_) {
                valuation_ = order_;
            }
        }
        normalize();
    }

    static LaurentSeries exact(long start, std::vector<BigRat> coeffs)
    {
        return LaurentSeries(start, std::move(coeffs), kExact);
    }

    static LaurentSeries zero(long order = kExact) { return LaurentSeries(order == kExact ? 0 : order, {}, order); }

    static LaurentSeries constant(const BigRat &c) { return exact(0, {c}); }

    static LaurentSeries monomial(const BigRat &c, long exponent) { return exact(exponent, {c}); }

    static LaurentSeries from_polynomial(const IntPolynomial &p, long shift = 0)
    {
        std::vector<BigRat> v(p.coeffs().begin(), p.coeffs().end());
        return exact(shift, std::move(v));
    }

    // Power series sum_{i < values.size()} values[i] q^(start+i), known to
    // order start + values.size().
    static LaurentSeries from_integers(std::span<const BigInt> values, long start = 0)
    {
        std::vector<BigRat> v(values.begin(), values.end());
        const long order = start + static_cast<long>(v.size());
        return LaurentSeries(start, std::move(v), order);
    }

    [[nodiscard]] bool is_exact() const noexcept { return order_ == kExact; }
    [[nodiscard]] long valuation() const noexcept { return valuation_; }
    [[nodiscard]] long order() const noexcept { return order_; }
    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] const std::vector<BigRat> &window() const noexcept { return coeffs_; }

    // Exclusive upper end of the stored window.
    [[nodiscard]] long window_end() const noexcept { return valuation_ + static_cast<long>(coeffs_.size()); }

    [[nodiscard]] BigRat coeff(long exponent) const
    {
        if (!is_exact() && exponent >= order_) {
            raise(ErrorKind::InsufficientOrder,
                  "coefficient of q^" + std::to_string(exponent) + " is beyond order " + std::to_string(order_));
        }
        if (exponent < valuation_ || exponent >= window_end()) {
            return BigRat(0);
        }
        return coeffs_[static_cast<std::size_t>(exponent - valuation_)];
    }

    [[nodiscard]] const BigRat &leading() const
    {
        if (is_zero()) {
            raise(ErrorKind::ZeroSeries, "zero series has no leading coefficient");
        }
        return coeffs_.front();
    }

    [[nodiscard]] LaurentSeries truncated(long order) const
    {
        if (!is_exact() && order >= order_) {
            return *this;
        }
        std::vector<BigRat> v;
        for (long e = valuation_; e < std::min(order, window_end()); ++e) {
            v.push_back(coeffs_[static_cast<std::size_t>(e - valuation_)]);
        }
        v.resize(static_cast<std::size_t>(std::max(0L, order - valuation_)));
        return LaurentSeries(valuation_, std::move(v), order);
    }

    // q^k * this.
    [[nodiscard]] LaurentSeries shifted(long k) const
    {
        LaurentSeries r = *this;
        r.valuation_ += k;
        if (!r.is_exact()) {
            r.order_ += k;
        }
        return r;
    }

    [[nodiscard]] bool is_integral() const
    {
        return std::all_of(coeffs_.begin(), coeffs_.end(), [](const BigRat &c) { return qmetallic::is_integral(c); });
    }

    // Raises NonIntegralCoefficient naming the offending exponent.
    const LaurentSeries &require_integral(const std::string &context = "series") const
    {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (!qmetallic::is_integral(coeffs_[i])) {
                raise(ErrorKind::NonIntegralCoefficient, context + ": coefficient of q^" +
                                                             std::to_string(valuation_ + static_cast<long>(i)) +
                                                             " is " + to_decimal(coeffs_[i]));
            }
        }
        return *this;
    }

    // Integer coefficients for exponents from .. to-1 (integrality asserted).
    [[nodiscard]] std::vector<BigInt> integer_coeffs(long from, long to) const
    {
        std::vector<BigInt> out;
        out.reserve(static_cast<std::size_t>(std::max(0L, to - from)));
        for (long e = from; e < to; ++e) {
            BigRat c = coeff(e);
            if (!qmetallic::is_integral(c)) {
                raise(ErrorKind::NonIntegralCoefficient,
                      "coefficient of q^" + std::to_string(e) + " is " + to_decimal(c));
            }
            out.push_back(c.get_num());
        }
        return out;
    }

    [[nodiscard]] LaurentSeries derivative() const
    {
        std::vector<BigRat> v(coeffs_.size());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            v[i] = coeffs_[i] * BigRat(valuation_ + static_cast<long>(i));
        }
        return LaurentSeries(valuation_ - 1, std::move(v), is_exact() ? kExact : order_ - 1);
    }

    friend LaurentSeries operator+(const LaurentSeries &a, const LaurentSeries &b)
    {
        const long order = std::min(a.order_, b.order_);
        if (a.is_zero() && b.is_zero()) {
            return zero(order);
        }
        long lo = std::min(a.is_zero() ? b.valuation_ : a.valuation_, b.is_zero() ? a.valuation_ : b.valuation_);
        long hi = std::max(a.window_end(), b.window_end());
        if (order != kExact) {
            hi = order;
            lo = std::min(lo, order);
        }
        std::vector<BigRat> v(static_cast<std::size_t>(std::max(0L, hi - lo)));
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            const long e = a.valuation_ + static_cast<long>(i);
            if (e < hi) {
                v[static_cast<std::size_t>(e - lo)] += a.coeffs_[i];
            }
        }
        for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
            const long e = b.valuation_ + static_cast<long>(i);
            if (e < hi) {
                v[static_cast<std::size_t>(e - lo)] += b.coeffs_[i];
            }
        }
        return LaurentSeries(lo, std::move(v), order);
    }

    friend LaurentSeries operator-(const LaurentSeries &a)
    {
        LaurentSeries r = a;
        for (auto &c : r.coeffs_) {
            c = -c;
        }
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries &a, const LaurentSeries &b) { return a + (-b); }

    friend LaurentSeries operator*(const BigRat &c, const LaurentSeries &a)
    {
        if (c == 0) {
            return zero(a.order_);
        }
        LaurentSeries r = a;
        for (auto &x : r.coeffs_) {
            x *= c;
        }
        return r;
    }

    // Cauchy product; only coefficients below the provable order are formed.
    friend LaurentSeries operator*(const LaurentSeries &a, const LaurentSeries &b)
    {
        long order = kExact;
        if (!a.is_exact()) {
            order = std::min(order, a.order_ + (b.is_zero() && b.is_exact() ? 0 : b.valuation_));
        }
        if (!b.is_exact()) {
            order = std::min(order, b.order_ + (a.is_zero() && a.is_exact() ? 0 : a.valuation_));
        }
        if (a.is_zero() || b.is_zero()) {
            return zero(order);
        }
        const long lo = a.valuation_ + b.valuation_;
        long hi = a.window_end() + b.window_end() - 1;
        if (order != kExact) {
            hi = std::min(hi, order);
        }
        const std::size_t len = static_cast<std::size_t>(std::max(0L, hi - lo));
        std::vector<BigRat> out(order == kExact ? len : static_cast<std::size_t>(std::max(0L, order - lo)));
        if (a.is_integral() && b.is_integral()) {
            BigInt acc;
            for (std::size_t k = 0; k < len; ++k) {
                acc = 0;
                const std::size_t i_lo = k >= b.coeffs_.size() ? k - b.coeffs_.size() + 1 : 0;
                const std::size_t i_hi = std::min(k, a.coeffs_.size() - 1);
                for (std::size_t i = i_lo; i <= i_hi; ++i) {
                    mpz_addmul(acc.get_mpz_t(), mpq_numref(a.coeffs_[i].get_mpq_t()),
                               mpq_numref(b.coeffs_[k - i].get_mpq_t()));
                }
                out[k] = BigRat(acc);
            }
        } else {
            for (std::size_t k = 0; k < len; ++k) {
                BigRat acc(0);
                const std::size_t i_lo = k >= b.coeffs_.size() ? k - b.coeffs_.size() + 1 : 0;
                const std::size_t i_hi = std::min(k, a.coeffs_.size() - 1);
                for (std::size_t i = i_lo; i <= i_hi; ++i) {
                    acc += a.coeffs_[i] * b.coeffs_[k - i];
                }
                out[k] = std::move(acc);
            }
        }
        return LaurentSeries(lo, std::move(out), order);
    }

    LaurentSeries &operator+=(const LaurentSeries &o) { return *this = *this + o; }
    LaurentSeries &operator-=(const LaurentSeries &o) { return *this = *this - o; }
    LaurentSeries &operator*=(const LaurentSeries &o) { return *this = *this * o; }

    // Structural equality: same order and same known coefficients.
    friend bool operator==(const LaurentSeries &a, const LaurentSeries &b)
    {
        return a.order_ == b.order_ && a.valuation_ == b.valuation_ && a.coeffs_ == b.coeffs_;
    }

    [[nodiscard]] std::string to_string(long max_terms = 12) const
    {
        if (is_zero()) {
            return is_exact() ? "0" : "O(q^" + std::to_string(order_) + ")";
        }
        std::ostringstream os;
        bool first = true;
        long shown = 0;
        for (std::size_t i = 0; i < coeffs_.size() && shown < max_terms; ++i) {
            const BigRat &c = coeffs_[i];
            if (c == 0) {
                continue;
            }
            ++shown;
            const long e = valuation_ + static_cast<long>(i);
            BigRat mag = abs(c);
            os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
            first = false;
            if (e == 0 || mag != 1) {
                os << to_decimal(mag);
                if (e != 0) {
                    os << '*';
                }
            }
            if (e == 1) {
                os << 'q';
            } else if (e != 0) {
                os << "q^" << e;
            }
        }
        if (!is_exact()) {
            os << " + O(q^" << order_ << ")";
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const LaurentSeries &s) { return os << s.to_string(); }

private:
    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0) {
            ++lead;
        }
        if (lead == coeffs_.size()) {
            coeffs_.clear();
            valuation_ = is_exact() ? 0 : order_;
            return;
        }
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
            valuation_ += static_cast<long>(lead);
        }
        if (is_exact()) {
            while (!coeffs_.empty() && coeffs_.back() == 0) {
                coeffs_.pop_back();
            }
        }
    }

    long valuation_;
    long order_;
    std::vector<BigRat> coeffs_;
};

namespace detail {

// 1/u modulo q^len for a unit power series u given by its first len
// coefficients (u[0] != 0).
inline std::vector<BigRat> unit_inverse(const std::vector<BigRat> &u, std::size_t len)
{
    std::vector<BigRat> w(len);
    if (len == 0) {
        return w;
    }
    const bool integral = std::all_of(u.begin(), u.begin() + static_cast<long>(std::min(len, u.size())),
                                      [](const BigRat &c) { return is_integral(c); }) &&
                          abs(u[0]) == 1;
    if (integral) {
        const int s = sgn(u[0]);
        std::vector<BigInt> wi(len);
        wi[0] = s;
        BigInt acc;
        for (std::size_t k = 1; k < len; ++k) {
            acc = 0;
            for (std::size_t i = 1; i <= std::min(k, u.size() - 1); ++i) {
                mpz_addmul(acc.get_mpz_t(), mpq_numref(u[i].get_mpq_t()), wi[k - i].get_mpz_t());
            }
            wi[k] = s > 0 ? BigInt(-acc) : acc;
        }
        for (std::size_t k = 0; k < len; ++k) {
            w[k] = BigRat(wi[k]);
        }
        return w;
    }
    const BigRat inv0 = 1 / u[0];
    w[0] = inv0;
    for (std::size_t k = 1; k < len; ++k) {
        BigRat acc(0);
        for (std::size_t i = 1; i <= std::min(k, u.size() - 1); ++i) {
            acc += u[i] * w[k - i];
        }
        w[k] = -acc * inv0;
    }
    return w;
}

} // namespace detail

// Multiplicative inverse known modulo q^target_order. Needs
// order(a) >= target_order + 2*val(a).
inline LaurentSeries inverse(const LaurentSeries &a, long target_order)
{
    if (a.is_zero()) {
        raise(ErrorKind::ZeroSeries, "cannot invert a series with no nonzero coefficient");
    }
    const long v = a.valuation();
    if (!a.is_exact() && target_order > a.order() - 2 * v) {
        raise(ErrorKind::InsufficientOrder, "inverse to order " + std::to_string(target_order) + " needs input order " +
                                                std::to_string(target_order + 2 * v) + ", have " +
                                                std::to_string(a.order()));
    }
    const long len = target_order + v;
    if (len <= 0) {
        return LaurentSeries::zero(target_order);
    }
    std::vector<BigRat> u(a.window().begin(),
                          a.window().begin() + std::min(static_cast<long>(a.window().size()), len));
    return LaurentSeries(-v, detail::unit_inverse(u, static_cast<std::size_t>(len)), target_order);
}

// num / den known modulo q^target_order.
inline LaurentSeries divide(const LaurentSeries &num, const LaurentSeries &den, long target_order)
{
    if (den.is_zero()) {
        raise(ErrorKind::ZeroSeries, "division by a zero series");
    }
    if (num.is_zero()) {
        if (num.order() < target_order) {
            raise(ErrorKind::InsufficientOrder, "numerator known only to order " + std::to_string(num.order()));
        }
        return LaurentSeries::zero(target_order);
    }
    LaurentSeries q = num * inverse(den, target_order - num.valuation());
    if (q.order() < target_order) {
        raise(ErrorKind::InsufficientOrder, "quotient known only to order " + std::to_string(q.order()) +
                                                ", requested " + std::to_string(target_order));
    }
    return q.truncated(target_order);
}

// Square root with constant term +1, known modulo q^target_order.
// Newton iteration y <- (y + a/y)/2 with precision doubling.
inline LaurentSeries sqrt(const LaurentSeries &a, long target_order)
{
    if (a.is_zero() || a.valuation() != 0 || a.leading() != 1) {
        raise(ErrorKind::BadConstantTerm, "square root needs valuation 0 and constant term 1");
    }
    if (!a.is_exact() && a.order() < target_order) {
        raise(ErrorKind::InsufficientOrder, "square root to order " + std::to_string(target_order) +
                                                " needs input order " + std::to_string(target_order));
    }
    if (target_order <= 0) {
        return LaurentSeries::zero(target_order);
    }
    LaurentSeries y(0, {BigRat(1)}, 1);
    long prec = 1;
    const BigRat half(1, 2);
    while (prec < target_order) {
        prec = std::min(2 * prec, target_order);
        const LaurentSeries current = LaurentSeries::exact(0, y.window());
        y = (half * (current + a.truncated(prec) * inverse(current, prec))).truncated(prec);
    }
    return y;
}

// First exponent below min(order(a), order(b)) where a and b differ.
inline std::optional<long> first_difference(const LaurentSeries &a, const LaurentSeries &b)
{
    const long bound = std::min(a.order(), b.order());
    long lo = std::min(a.is_zero() ? bound : a.valuation(), b.is_zero() ? bound : b.valuation());
    long hi = std::max(a.window_end(), b.window_end());
    if (bound != LaurentSeries::kExact) {
        hi = std::min(hi, bound);
    }
    for (long e = lo; e < hi; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            return e;
        }
    }
    return std::nullopt;
}

// a == b for every exponent below `order` (both must know that far).
inline bool agree_to_order(const LaurentSeries &a, const LaurentSeries &b, long order)
{
    if (a.order() < order || b.order() < order) {
        raise(ErrorKind::InsufficientOrder, "comparison beyond known order");
    }
    return !first_difference(a.truncated(order), b.truncated(order)).has_value();
}

} // namespace qmetallic
