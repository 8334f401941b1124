#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "metallic.hpp"
#include "mpcomplex.hpp"

namespace qmetallic {

constexpr long kDefaultPrecisionBits = 256;
constexpr long kMinPrecisionBits = 128;

inline void require_precision(long bits)
{
    if (bits < kMinPrecisionBits) {
        raise(ErrorKind::InvalidArgument, "precision must be at least 128 bits, got " + std::to_string(bits));
    }
}

// Extra bits carried through root finding on top of the requested precision.
inline long guard_bits(long degree) { return 4 * degree + 64; }

namespace detail {

using LDComplex = std::complex<long double>;

inline void horner_ld(const std::vector<long double> &c, LDComplex z, LDComplex &p, LDComplex &dp)
{
    p = 0;
    dp = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

inline void horner_mp(const std::vector<MPReal> &c, const MPComplex &z, MPComplex &p, MPComplex &dp)
{
    p = MPComplex();
    dp = MPComplex();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z;
        p.re += *it;
    }
}

// Fujiwara bound on root moduli.
inline long double root_bound(const std::vector<long double> &c)
{
    const auto d = static_cast<long>(c.size()) - 1;
    long double b = 0;
    for (long i = 0; i < d; ++i) {
        const long double r = std::fabs(c[static_cast<std::size_t>(i)] / c.back());
        if (r == 0) {
            continue;
        }
        long double t = std::pow(r, 1.0L / static_cast<long double>(d - i));
        if (i == 0) {
            t = std::pow(r / 2, 1.0L / static_cast<long double>(d));
        }
        b = std::max(b, t);
    }
    return 2 * b;
}

inline std::vector<LDComplex> aberth_ld(const std::vector<long double> &c)
{
    const auto d = c.size() - 1;
    const long double radius = std::max(1.0L, root_bound(c));
    std::vector<LDComplex> z(d);
    const long double offset = 0.4L;
    const long double tau = 6.283185307179586476925286766559L;
    for (std::size_t k = 0; k < d; ++k) {
        z[k] = std::polar(radius, tau * static_cast<long double>(k) / static_cast<long double>(d) + offset);
    }
    for (int it = 0; it < 2000; ++it) {
        long double worst = 0;
        for (std::size_t k = 0; k < d; ++k) {
            LDComplex p;
            LDComplex dp;
            horner_ld(c, z[k], p, dp);
            if (p == LDComplex(0)) {
                continue;
            }
            const LDComplex ratio = p / dp;
            LDComplex sum = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if (j != k) {
                    sum += 1.0L / (z[k] - z[j]);
                }
            }
            const LDComplex w = ratio / (1.0L - ratio * sum);
            z[k] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0L, std::abs(z[k])));
        }
        if (worst < 1e-16L) {
            break;
        }
    }
    return z;
}

} // namespace detail

struct SingularityReport {
    long n = 0;
    long precision_bits = kDefaultPrecisionBits;
    std::vector<MPComplex> all_roots;
    std::vector<MPComplex> dominant;
    MPReal radius;
    std::vector<MPComplex> gammas;
    MPReal max_residual;
    std::vector<std::string> notes;
};

// All complex roots of an integer polynomial: long-double Aberth iteration for
// starting points, then Aberth and Newton steps at precision + guard bits.
inline std::vector<MPComplex> polynomial_roots(const IntPolynomial &poly, long precision_bits,
                                               MPReal *max_residual = nullptr)
{
    require_precision(precision_bits);
    const long d = poly.degree();
    if (d < 1) {
        raise(ErrorKind::InvalidArgument, "polynomial has no roots");
    }
    if (poly.coeff(0) == 0) {
        raise(ErrorKind::InvalidArgument, "polynomial vanishes at 0");
    }
    std::vector<long double> cld;
    for (const auto &a : poly.coeffs()) {
        cld.push_back(static_cast<long double>(a.get_d()));
    }
    const auto start = detail::aberth_ld(cld);

    const long work = precision_bits + guard_bits(d);
    PrecisionScope scope(work);
    std::vector<MPReal> c;
    for (const auto &a : poly.coeffs()) {
        c.push_back(to_mpreal(a));
    }
    std::vector<MPComplex> z;
    for (const auto &s : start) {
        z.emplace_back(MPReal(static_cast<double>(s.real())), MPReal(static_cast<double>(s.imag())));
    }
    const MPReal step_tol = boost::multiprecision::ldexp(MPReal(1), static_cast<int>(-(work - 16)));
    bool converged = false;
    for (int it = 0; it < 200 && !converged; ++it) {
        MPReal worst = 0;
        for (std::size_t k = 0; k < z.size(); ++k) {
            MPComplex p;
            MPComplex dp;
            detail::horner_mp(c, z[k], p, dp);
            if (p.re == 0 && p.im == 0) {
                continue;
            }
            const MPComplex ratio = p / dp;
            MPComplex sum;
            for (std::size_t j = 0; j < z.size(); ++j) {
                if (j != k) {
                    sum += reciprocal(z[k] - z[j]);
                }
            }
            const MPComplex w = ratio / (MPComplex(MPReal(1)) - ratio * sum);
            z[k] -= w;
            const MPReal scale = std::max(MPReal(1), z[k].abs());
            worst = std::max(worst, MPReal(w.abs() / scale));
        }
        converged = worst < step_tol;
    }
    // Newton polish.
    for (auto &root : z) {
        for (int it = 0; it < 3; ++it) {
            MPComplex p;
            MPComplex dp;
            detail::horner_mp(c, root, p, dp);
            if ((p.re == 0 && p.im == 0) || (dp.re == 0 && dp.im == 0)) {
                break;
            }
            root -= p / dp;
        }
    }
    MPReal worst_residual = 0;
    for (const auto &root : z) {
        MPComplex p;
        MPComplex dp;
        detail::horner_mp(c, root, p, dp);
        worst_residual = std::max(worst_residual, p.abs());
    }
    const MPReal bound = boost::multiprecision::pow(MPReal(10), MPReal(-precision_bits / 4));
    if (!converged || worst_residual >= bound) {
        raise(ErrorKind::NoConvergence, "root iteration for degree " + std::to_string(d) +
                                            " stopped with residual " + format_scientific(worst_residual, 6));
    }
    if (max_residual != nullptr) {
        *max_residual = worst_residual;
    }
    std::sort(z.begin(), z.end(), [](const MPComplex &a, const MPComplex &b) {
        const MPReal ma = a.norm();
        const MPReal mb = b.norm();
        if (ma != mb) {
            return ma < mb;
        }
        return a.im < b.im;
    });
    return z;
}

inline std::vector<MPComplex> roots_Q(long n, long precision_bits = kDefaultPrecisionBits,
                                      MPReal *max_residual = nullptr)
{
    require_index(n);
    return polynomial_roots(poly_Q(n), precision_bits, max_residual);
}

namespace detail {

inline MPReal relative_tolerance(long precision_bits)
{
    return boost::multiprecision::ldexp(MPReal(1), static_cast<int>(-precision_bits / 2));
}

inline bool close(const MPComplex &a, const MPComplex &b, const MPReal &tol)
{
    return (a - b).abs() <= tol * std::max(MPReal(1), a.abs());
}

} // namespace detail

inline MPReal radius(long n, long precision_bits = kDefaultPrecisionBits)
{
    const auto roots = roots_Q(n, precision_bits);
    PrecisionScope scope(precision_bits + guard_bits(2 * n));
    return roots.front().abs();
}

// Principal-branch value; the sign is fixed later against exact coefficients.
inline MPComplex gamma_coeff(long n, const MPComplex &zeta)
{
    const long bits = static_cast<long>(mpfr_get_prec(zeta.re.backend().data()));
    PrecisionScope scope(bits);
    const MPComplex dq = poly_eval_complex(poly_Q(n).derivative(), zeta);
    if (dq.abs() < boost::multiprecision::pow(MPReal(10), MPReal(-bits / 4))) {
        raise(ErrorKind::MultipleRoot, "Q_" + std::to_string(n) + " has a repeated root");
    }
    const MPComplex one(MPReal(1));
    const MPComplex inner = (one - zeta + zeta * zeta) * zeta * (-dq);
    return reciprocal(MPReal(2) * zeta) * sqrt(inner);
}

// Sum over dominant roots of the square-root singular parts at index l.
inline MPReal leading_term(const SingularityReport &report, long l)
{
    if (l < 1) {
        raise(ErrorKind::InvalidArgument, "leading_term needs l >= 1");
    }
    PrecisionScope scope(report.precision_bits + guard_bits(2 * report.n));
    const MPReal scale = MPReal(1) / (2 * boost::multiprecision::sqrt(mp_pi())) /
                         boost::multiprecision::pow(MPReal(l), MPReal(3) / 2);
    MPComplex total;
    for (std::size_t j = 0; j < report.dominant.size(); ++j) {
        total -= report.gammas[j] * pow(report.dominant[j], -l);
    }
    total = scale * total;
    const MPReal bound = boost::multiprecision::pow(MPReal(10), MPReal(-report.precision_bits / 4));
    if (boost::multiprecision::abs(total.im) > bound * boost::multiprecision::abs(total.re)) {
        raise(ErrorKind::ImaginaryResidual, "leading term at l = " + std::to_string(l) + " is not real");
    }
    return total.re;
}

namespace detail {

// Normalized squared mismatch of the leading term against exact coefficients
// over a short window of indices.
inline MPReal calibration_error(const SingularityReport &report, std::span<const BigInt> kappa, long from,
                                long count)
{
    MPReal err = 0;
    for (long l = from; l < from + count; ++l) {
        const MPReal a = leading_term(report, l);
        const MPReal k = to_mpreal(kappa[static_cast<std::size_t>(l)]);
        const MPReal w = boost::multiprecision::pow(report.radius, MPReal(l)) *
                         boost::multiprecision::pow(MPReal(l), MPReal(3) / 2);
        const MPReal e = (a - k) * w;
        err += e * e;
    }
    return err;
}

} // namespace detail

constexpr long kCalibrationIndex = 400;

inline SingularityReport singularity_report(long n, long precision_bits = kDefaultPrecisionBits)
{
    SingularityReport r;
    r.n = n;
    r.precision_bits = precision_bits;
    r.all_roots = roots_Q(n, precision_bits, &r.max_residual);
    PrecisionScope scope(precision_bits + guard_bits(2 * n));
    const MPReal tol = detail::relative_tolerance(precision_bits);

    // Palindromic pairing.
    for (const auto &z : r.all_roots) {
        const MPComplex inv = reciprocal(z);
        const bool found = std::any_of(r.all_roots.begin(), r.all_roots.end(),
                                       [&](const MPComplex &w) { return detail::close(inv, w, tol); });
        if (!found) {
            raise(ErrorKind::NoConvergence, "roots of Q_" + std::to_string(n) + " are not closed under inversion");
        }
    }

    const MPReal rmin = r.all_roots.front().abs();
    r.radius = rmin;
    for (const auto &z : r.all_roots) {
        if (z.abs() - rmin <= tol * rmin) {
            r.dominant.push_back(z);
        }
    }
    // Conjugate classes: real roots alone, complex roots as (upper, lower).
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> used(r.dominant.size(), false);
    std::vector<MPComplex> ordered;
    for (std::size_t i = 0; i < r.dominant.size(); ++i) {
        if (used[i]) {
            continue;
        }
        auto &z = r.dominant[i];
        used[i] = true;
        if (boost::multiprecision::abs(z.im) <= tol * rmin) {
            z.im = 0;
            classes.push_back({ordered.size()});
            ordered.push_back(z);
            continue;
        }
        std::size_t partner = r.dominant.size();
        for (std::size_t j = 0; j < r.dominant.size(); ++j) {
            if (!used[j] && detail::close(z.conj(), r.dominant[j], tol)) {
                partner = j;
                break;
            }
        }
        if (partner == r.dominant.size()) {
            raise(ErrorKind::NoConvergence, "dominant roots of Q_" + std::to_string(n) +
                                                " are not closed under conjugation");
        }
        used[partner] = true;
        const MPComplex upper = z.im > 0 ? z : z.conj();
        classes.push_back({ordered.size(), ordered.size() + 1});
        ordered.push_back(upper);
        ordered.push_back(upper.conj());
    }
    r.dominant = ordered;
    for (const auto &cls : classes) {
        const MPComplex g = gamma_coeff(n, r.dominant[cls[0]]);
        r.gammas.push_back(g);
        if (cls.size() == 2) {
            r.gammas.push_back(g.conj());
        }
    }
    if (classes.size() > 1) {
        r.notes.push_back(std::to_string(classes.size()) + " conjugate classes of dominant roots");
    }
    if (classes.size() > 12) {
        raise(ErrorKind::BudgetExceeded, "too many dominant root classes to calibrate");
    }

    // Branch calibration against exact coefficients.
    const long probes = 16;
    const auto kappa = coeffs_p_recurrence(n, kCalibrationIndex + probes).values;
    const auto base = r.gammas;
    MPReal best_err = -1;
    std::vector<MPComplex> best;
    for (unsigned long mask = 0; mask < (1UL << classes.size()); ++mask) {
        for (std::size_t c = 0; c < classes.size(); ++c) {
            const bool flip = ((mask >> c) & 1UL) != 0;
            for (const auto idx : classes[c]) {
                r.gammas[idx] = flip ? -base[idx] : base[idx];
            }
        }
        const MPReal err = detail::calibration_error(r, kappa, kCalibrationIndex, probes);
        if (best_err < 0 || err < best_err) {
            best_err = err;
            best = r.gammas;
        }
    }
    r.gammas = best;
    return r;
}

struct RatioEntry {
    long l;
    std::string ratio;
};

constexpr int kRatioDigits = 15;

inline std::vector<RatioEntry> ratio_table(const SingularityReport &report, std::span<const BigInt> kappa,
                                           std::span<const long> l_values, int digits = kRatioDigits)
{
    std::vector<RatioEntry> out;
    for (const long l : l_values) {
        if (l < 1 || static_cast<std::size_t>(l) >= kappa.size()) {
            raise(ErrorKind::InsufficientOrder, "coefficient table does not reach l = " + std::to_string(l));
        }
        const MPReal a = leading_term(report, l);
        PrecisionScope scope(report.precision_bits + guard_bits(2 * report.n));
        const MPReal k = to_mpreal(kappa[static_cast<std::size_t>(l)]);
        out.push_back({l, format_significant(a / k, digits)});
    }
    return out;
}

inline std::vector<RatioEntry> ratio_table(long n, std::span<const long> l_values,
                                           long precision_bits = kDefaultPrecisionBits, int digits = kRatioDigits)
{
    const long top = l_values.empty() ? 1 : *std::max_element(l_values.begin(), l_values.end());
    const auto kappa = coeffs_p_recurrence(n, std::max(top + 1, kCalibrationIndex + 20)).values;
    const auto report = singularity_report(n, precision_bits);
    return ratio_table(report, kappa, l_values, digits);
}

// |a - b| at most half a unit in the last of `digits` significant places of b.
inline bool decimal_agreement(const std::string &a, const std::string &b, int digits)
{
    PrecisionScope scope(256);
    const MPReal x(a);
    const MPReal y(b);
    if (y == 0) {
        return x == 0;
    }
    const auto e = static_cast<long>(boost::multiprecision::floor(boost::multiprecision::log10(abs(y))));
    const MPReal tol = boost::multiprecision::pow(MPReal(10), MPReal(e - digits + 1)) / 2;
    return abs(x - y) <= tol;
}

// l = 100, 200, ..., 2000 as in the printed tables.
inline std::vector<long> standard_table_indices()
{
    std::vector<long> v;
    for (long l = 100; l <= 2000; l += 100) {
        v.push_back(l);
    }
    return v;
}

} // namespace qmetallic
