#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bigint.hpp"
#include "metallic.hpp"

namespace qmetallic {

enum class LogClass { LogConvex, LogConcave, Mixed, Undetermined };

constexpr std::string_view log_class_name(LogClass c)
{
    switch (c) {
    case LogClass::LogConvex: return "log-convex";
    case LogClass::LogConcave: return "log-concave";
    case LogClass::Mixed: return "mixed";
    case LogClass::Undetermined: return "undetermined";
    }
    return "?";
}

constexpr std::size_t kViolationSample = 32;

struct LogReport {
    long n = 0;
    long l_min = 1;
    long l_max = 0;
    std::optional<long> onset;
    LogClass classification = LogClass::Undetermined;
    // indices before the onset whose sign disagrees with the classification,
    // or for a mixed result the earliest indices of both signs
    std::vector<long> violation_indices;
    std::optional<long> first_positive;
    std::optional<long> first_negative;
    std::optional<long> last_positive;
    std::optional<long> last_negative;
    long positive_count = 0;
    long negative_count = 0;
    // the mixed verdict is a cutoff: no constant-sign suffix of length >= l_max / 4
    bool heuristic = false;
};

// x_{l-1} x_{l+1} - x_l^2
inline BigInt log_discriminant(std::span<const BigInt> x, long l)
{
    const auto at = [&](long i) -> const BigInt & { return x[static_cast<std::size_t>(i)]; };
    return at(l - 1) * at(l + 1) - at(l) * at(l);
}

// Sign pattern of the discriminant for l in [l_min, x.size() - 2]. The onset
// is the start of the longest suffix on which the sign never changes.
inline LogReport classify_sequence(std::span<const BigInt> x, long l_min = 1)
{
    LogReport r;
    r.l_min = std::max(l_min, 1L);
    r.l_max = static_cast<long>(x.size()) - 1;
    const long last = r.l_max - 1;
    if (last < r.l_min) {
        return r;
    }
    std::vector<int> sign(static_cast<std::size_t>(last + 1), 0);
    for (long l = r.l_min; l <= last; ++l) {
        const int s = sgn(log_discriminant(x, l));
        sign[static_cast<std::size_t>(l)] = s;
        if (s > 0) {
            ++r.positive_count;
            if (!r.first_positive) {
                r.first_positive = l;
            }
            r.last_positive = l;
        } else if (s < 0) {
            ++r.negative_count;
            if (!r.first_negative) {
                r.first_negative = l;
            }
            r.last_negative = l;
        }
    }
    bool seen_pos = false;
    bool seen_neg = false;
    long start = last + 1;
    for (long l = last; l >= r.l_min; --l) {
        const int s = sign[static_cast<std::size_t>(l)];
        if ((s > 0 && seen_neg) || (s < 0 && seen_pos)) {
            break;
        }
        seen_pos = seen_pos || s > 0;
        seen_neg = seen_neg || s < 0;
        start = l;
    }
    const long suffix = last - start + 1;
    if (suffix * 4 < r.l_max) {
        r.classification = LogClass::Mixed;
        r.heuristic = true;
        for (long l = r.l_min; l <= last && r.violation_indices.size() < kViolationSample; ++l) {
            if (sign[static_cast<std::size_t>(l)] != 0) {
                r.violation_indices.push_back(l);
            }
        }
        return r;
    }
    r.onset = start;
    if (!seen_pos && !seen_neg) {
        r.classification = LogClass::Undetermined;
        return r;
    }
    r.classification = seen_pos ? LogClass::LogConvex : LogClass::LogConcave;
    const int bad = seen_pos ? -1 : 1;
    for (long l = r.l_min; l < start && r.violation_indices.size() < kViolationSample; ++l) {
        if (sign[static_cast<std::size_t>(l)] == bad) {
            r.violation_indices.push_back(l);
        }
    }
    return r;
}

inline LogReport classify(long n, std::span<const BigInt> kappa, long l_max)
{
    require_index(n);
    if (l_max < 2 * n + 4) {
        raise(ErrorKind::InvalidArgument, "l_max must be at least 2n+4");
    }
    if (static_cast<long>(kappa.size()) < l_max + 1) {
        raise(ErrorKind::InsufficientOrder, "coefficient table must reach l_max");
    }
    auto r = classify_sequence(kappa.first(static_cast<std::size_t>(l_max + 1)));
    r.n = n;
    return r;
}

inline LogReport classify(long n, long l_max)
{
    const auto kappa = coeffs_p_recurrence(n, l_max + 1).values;
    return classify(n, kappa, l_max);
}

// x_l^2 <= x_{l-1} x_{l+1} on [from, to] (indices of the middle term)
inline bool log_convex_on(std::span<const BigInt> x, long from, long to)
{
    for (long l = from; l <= to; ++l) {
        if (sgn(log_discriminant(x, l)) < 0) {
            return false;
        }
    }
    return true;
}

inline bool log_concave_on(std::span<const BigInt> x, long from, long to)
{
    for (long l = from; l <= to; ++l) {
        if (sgn(log_discriminant(x, l)) > 0) {
            return false;
        }
    }
    return true;
}

struct SignFlipReport {
    bool classifications_agree = false;
    bool ratios_reversed = false;
    [[nodiscard]] bool holds() const { return classifications_agree && ratios_reversed; }
};

// Golden data: y_l = (-1)^l a_{l-1} against a_{l-1}. Same log behaviour, and
// the consecutive ratio of y moves opposite to that of a on [6, min(L, 100)].
inline SignFlipReport sign_flip_lemma_check(long L)
{
    if (L < 10) {
        raise(ErrorKind::InvalidArgument, "sign flip check needs L >= 10");
    }
    const auto y = coeffs_p_recurrence(1, L).values;
    std::vector<BigInt> x(y.size());
    for (std::size_t l = 0; l < y.size(); ++l) {
        x[l] = abs(y[l]);
    }
    SignFlipReport r;
    const auto cy = classify_sequence(y, 2);
    const auto cx = classify_sequence(x, 2);
    r.classifications_agree = cy.classification == cx.classification && cy.onset == cx.onset &&
                              cy.violation_indices == cx.violation_indices;
    r.ratios_reversed = true;
    const long hi = std::min(L - 2, 100L);
    for (long l = 6; l < hi; ++l) {
        const auto i = static_cast<std::size_t>(l);
        if (x[i - 1] == 0 || x[i] == 0) {
            continue;
        }
        const int dx = sgn(BigRat(make_rat(x[i + 1], x[i]) - make_rat(x[i], x[i - 1])));
        const int dy = sgn(BigRat(make_rat(y[i + 1], y[i]) - make_rat(y[i], y[i - 1])));
        if (dx != -dy) {
            r.ratios_reversed = false;
        }
    }
    return r;
}

} // namespace qmetallic
