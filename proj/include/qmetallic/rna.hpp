#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "error.hpp"
#include "metallic.hpp"

// Secondary structures on a backbone 1..l: non-crossing h-bonds, each vertex
// in at most one bond, every bond {a, b} with |b - a| > rank.
namespace qmetallic::rna {

constexpr long kMaxEnumerationSize = 22;
constexpr long kMaxGenerationSize = 16;

struct SecondaryStructure {
    long size = 0;
    std::vector<std::pair<long, long>> hbonds;
};

struct RankedCount {
    long size;
    long rank;
    BigInt count;
};

inline void require_rank(long rank)
{
    if (rank < 0) {
        raise(ErrorKind::InvalidArgument, "rank must be nonnegative");
    }
}

// Memoized over interval length: the leftmost vertex is free or bonded to
// some admissible b, which splits the rest into independent intervals.
inline std::vector<BigInt> structure_counts(long max_size, long rank)
{
    require_rank(rank);
    std::vector<BigInt> f(static_cast<std::size_t>(std::max(max_size, 1L) + 1), BigInt(0));
    f[0] = 1;
    for (long m = 1; m <= max_size; ++m) {
        BigInt total = f[static_cast<std::size_t>(m - 1)];
        for (long b = rank + 2; b <= m; ++b) {
            total += f[static_cast<std::size_t>(b - 2)] * f[static_cast<std::size_t>(m - b)];
        }
        f[static_cast<std::size_t>(m)] = total;
    }
    return f;
}

inline BigInt enumerate_structures(long l, long rank)
{
    if (l < 1) {
        raise(ErrorKind::InvalidArgument, "structure size must be at least 1");
    }
    if (l > kMaxEnumerationSize) {
        raise(ErrorKind::BudgetExceeded, "enumeration stops at size " + std::to_string(kMaxEnumerationSize));
    }
    return structure_counts(l, rank)[static_cast<std::size_t>(l)];
}

namespace detail {

inline bool crosses(const std::pair<long, long> &x, const std::pair<long, long> &y)
{
    return (x.first < y.first && y.first < x.second && x.second < y.second) ||
           (y.first < x.first && x.first < y.second && y.second < x.second);
}

inline void generate(long l, long rank, long v, std::vector<long> &partner, std::vector<std::pair<long, long>> &bonds,
                     std::vector<SecondaryStructure> &out)
{
    if (v > l) {
        out.push_back({l, bonds});
        return;
    }
    if (partner[static_cast<std::size_t>(v)] != 0) {
        generate(l, rank, v + 1, partner, bonds, out);
        return;
    }
    generate(l, rank, v + 1, partner, bonds, out);
    for (long b = v + rank + 1; b <= l; ++b) {
        if (partner[static_cast<std::size_t>(b)] != 0) {
            continue;
        }
        const std::pair<long, long> bond{v, b};
        bool ok = true;
        for (const auto &other : bonds) {
            if (crosses(bond, other)) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            continue;
        }
        partner[static_cast<std::size_t>(v)] = b;
        partner[static_cast<std::size_t>(b)] = v;
        bonds.push_back(bond);
        generate(l, rank, v + 1, partner, bonds, out);
        bonds.pop_back();
        partner[static_cast<std::size_t>(v)] = 0;
        partner[static_cast<std::size_t>(b)] = 0;
    }
}

} // namespace detail

// Every structure listed explicitly; exponential, so small sizes only.
inline std::vector<SecondaryStructure> generate_structures(long l, long rank)
{
    require_rank(rank);
    if (l < 1) {
        raise(ErrorKind::InvalidArgument, "structure size must be at least 1");
    }
    if (l > kMaxGenerationSize) {
        raise(ErrorKind::BudgetExceeded, "explicit generation stops at size " + std::to_string(kMaxGenerationSize));
    }
    std::vector<long> partner(static_cast<std::size_t>(l + 1), 0);
    std::vector<std::pair<long, long>> bonds;
    std::vector<SecondaryStructure> out;
    detail::generate(l, rank, 1, partner, bonds, out);
    return out;
}

inline bool is_valid(const SecondaryStructure &s, long rank)
{
    std::vector<int> used(static_cast<std::size_t>(s.size + 1), 0);
    for (std::size_t i = 0; i < s.hbonds.size(); ++i) {
        auto [a, b] = s.hbonds[i];
        if (a > b) {
            std::swap(a, b);
        }
        if (a < 1 || b > s.size || b - a <= rank) {
            return false;
        }
        if (++used[static_cast<std::size_t>(a)] > 1 || ++used[static_cast<std::size_t>(b)] > 1) {
            return false;
        }
        for (std::size_t j = 0; j < i; ++j) {
            auto o = s.hbonds[j];
            if (o.first > o.second) {
                std::swap(o.first, o.second);
            }
            if (detail::crosses({a, b}, o)) {
                return false;
            }
        }
    }
    return true;
}

// a_0 .. a_{L-1} from the convolution recurrence.
inline std::vector<BigInt> rna_recurrence(long L)
{
    if (L < 2) {
        raise(ErrorKind::InvalidArgument, "need at least two terms");
    }
    std::vector<BigInt> a(static_cast<std::size_t>(L));
    a[0] = 1;
    a[1] = 1;
    for (long l = 1; l + 1 < L; ++l) {
        BigInt next = a[static_cast<std::size_t>(l)];
        for (long j = 0; j <= l - 2; ++j) {
            next += a[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(l - j - 1)];
        }
        a[static_cast<std::size_t>(l + 1)] = next;
    }
    return a;
}

// (l+2)a_l - (2l+1)a_{l-1} - (l-1)a_{l-2} - (2l-5)a_{l-3} + (l-4)a_{l-4}
inline BigInt rna_p_residual(std::span<const BigInt> a, long l)
{
    const auto at = [&](long i) -> const BigInt & { return a[static_cast<std::size_t>(i)]; };
    return BigInt(l + 2) * at(l) - BigInt(2 * l + 1) * at(l - 1) - BigInt(l - 1) * at(l - 2) -
           BigInt(2 * l - 5) * at(l - 3) + BigInt(l - 4) * at(l - 4);
}

// First index in [4, size) where the P-recurrence residual is nonzero.
inline std::optional<long> rna_p_recurrence_failure(std::span<const BigInt> a)
{
    for (long l = 4; l < static_cast<long>(a.size()); ++l) {
        if (rna_p_residual(a, l) != 0) {
            return l;
        }
    }
    return std::nullopt;
}

inline bool rna_p_recurrence_check(long L)
{
    if (L < 5) {
        raise(ErrorKind::InvalidArgument, "need at least five terms");
    }
    return !rna_p_recurrence_failure(rna_recurrence(L)).has_value();
}

// a_l as a sum of Narayana-type terms, evaluated exactly.
inline BigInt rna_closed_form(long l)
{
    if (l < 1) {
        raise(ErrorKind::InvalidArgument, "closed form needs l >= 1");
    }
    const long m = l + 1;
    BigRat total = 0;
    for (long k = 1; k <= m / 2; ++k) {
        total += BigRat(binomial(m - k, k) * binomial(m - k, k - 1), BigInt(m - k));
    }
    total.canonicalize();
    return qmetallic::detail::require_integer(total, "rna closed form", l);
}

struct BridgeReport {
    bool holds = false;
    long checked_to = 0;
    std::optional<long> first_failure;
};

// kappa_l(phi_1) = (-1)^l a_{l-1} for 2 <= l < L, and [phi_1]_q = 1 + q - q A(-q).
inline BridgeReport sign_bridge_check(std::span<const BigInt> kappa, long L)
{
    if (static_cast<long>(kappa.size()) < L) {
        raise(ErrorKind::InsufficientOrder, "coefficient table shorter than requested bridge length");
    }
    const auto a = rna_recurrence(std::max(L, 2L));
    BridgeReport r{true, L, std::nullopt};
    for (long l = 2; l < L; ++l) {
        BigInt want = a[static_cast<std::size_t>(l - 1)];
        if (l % 2 == 1) {
            want = -want;
        }
        if (kappa[static_cast<std::size_t>(l)] != want) {
            r.holds = false;
            r.first_failure = l;
            return r;
        }
    }
    // 1 + q - q A(-q) as a series
    std::vector<BigRat> neg(a.begin(), a.begin() + std::max(L - 1, 1L));
    for (std::size_t j = 1; j < neg.size(); j += 2) {
        neg[j] = -neg[j];
    }
    const LaurentSeries A_neg(0, std::move(neg), std::max(L - 1, 1L));
    const LaurentSeries rhs = LaurentSeries::exact(0, {BigRat(1), BigRat(1)}) - A_neg.shifted(1);
    const LaurentSeries lhs = LaurentSeries::from_integers(kappa.first(static_cast<std::size_t>(L)));
    if (const auto d = first_difference(lhs.truncated(rhs.order()), rhs)) {
        r.holds = false;
        r.first_failure = *d;
    }
    return r;
}

inline BridgeReport sign_bridge_check(long L) { return sign_bridge_check(coeffs_p_recurrence(1, L).values, L); }

// Motzkin numbers M_0 .. M_{L-1} through the Catalan convolution formula.
inline std::vector<BigInt> motzkin_numbers(long L)
{
    std::vector<BigInt> m;
    for (long k = 0; k < L; ++k) {
        BigInt s = 0;
        for (long j = 0; 2 * j <= k; ++j) {
            s += binomial(k, 2 * j) * binomial(2 * j, j) / BigInt(j + 1);
        }
        m.push_back(s);
    }
    return m;
}

// Smallest shift d in [-2, 2] with count(l, 0) = M_{l+d} for 1 <= l <= max_size.
inline std::optional<long> motzkin_offset(long max_size)
{
    const auto counts = structure_counts(max_size, 0);
    const auto motz = motzkin_numbers(max_size + 3);
    for (long d = -2; d <= 2; ++d) {
        bool ok = true;
        for (long l = 1; l <= max_size && ok; ++l) {
            const long idx = l + d;
            ok = idx >= 0 && idx < static_cast<long>(motz.size()) && counts[static_cast<std::size_t>(l)] == motz[static_cast<std::size_t>(idx)];
        }
        if (ok) {
            return d;
        }
    }
    return std::nullopt;
}

// First size l in [1, L) where count(l, rank n) differs from |kappa_{l+1}(phi_n)|.
inline std::optional<long> family_divergence(long n, long L)
{
    require_index(n);
    if (L > kMaxEnumerationSize + 1) {
        raise(ErrorKind::BudgetExceeded, "family comparison limited to sizes <= " + std::to_string(kMaxEnumerationSize));
    }
    const auto counts = structure_counts(std::max(L, 1L), n);
    const auto kappa = coeffs_convolution(n, L + 1).values;
    for (long l = 1; l < L; ++l) {
        if (counts[static_cast<std::size_t>(l)] != abs(kappa[static_cast<std::size_t>(l + 1)])) {
            return l;
        }
    }
    return std::nullopt;
}

inline std::vector<RankedCount> count_grid(long max_size, long max_rank)
{
    if (max_size > kMaxEnumerationSize) {
        raise(ErrorKind::BudgetExceeded, "enumeration stops at size " + std::to_string(kMaxEnumerationSize));
    }
    std::vector<RankedCount> out;
    for (long r = 0; r <= max_rank; ++r) {
        const auto f = structure_counts(max_size, r);
        for (long l = 1; l <= max_size; ++l) {
            out.push_back({l, r, f[static_cast<std::size_t>(l)]});
        }
    }
    return out;
}

} // namespace qmetallic::rna
