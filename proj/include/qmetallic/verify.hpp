#pragma once

#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "golden.hpp"
#include "identities.hpp"
#include "io.hpp"
#include "metallic.hpp"
#include "qnum.hpp"
#include "rna.hpp"

namespace qmetallic {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

using CheckList = std::vector<CheckResult>;

inline bool all_passed(const CheckList &checks)
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
}

inline const CheckResult *first_failure(const CheckList &checks)
{
    for (const auto &c : checks) {
        if (!c.passed) {
            return &c;
        }
    }
    return nullptr;
}

inline io::Json checks_to_json(const CheckList &checks)
{
    io::Json arr = io::Json::array();
    for (const auto &c : checks) {
        io::Json j{{"name", c.name}, {"status", c.passed ? "pass" : "fail"}};
        if (!c.detail.empty()) {
            j["detail"] = c.detail;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

namespace detail {

template <class F>
void run_check(CheckList &out, const std::string &name, F &&f)
{
    CheckResult r{name, false, {}};
    try {
        f(r);
    } catch (const Error &e) {
        r.passed = false;
        r.detail = e.what();
    }
    out.push_back(std::move(r));
}

inline void from_series_check(CheckResult &r, const SeriesCheck &c)
{
    r.passed = c.holds;
    r.detail = "to q^" + std::to_string(c.checked_order);
    if (c.first_failure) {
        r.detail += ", first failure at q^" + std::to_string(*c.first_failure);
    }
}

inline void compare_series(CheckResult &r, const LaurentSeries &got, const golden::PrintedSeries &want)
{
    const LaurentSeries printed = want.series();
    const auto d = first_difference(got.truncated(printed.order()), printed);
    r.passed = !d.has_value() && got.order() >= printed.order();
    r.detail = std::string(want.name) + " through q^" + std::to_string(printed.order() - 1);
    if (d) {
        r.detail += ", differs at q^" + std::to_string(*d);
    }
}

} // namespace detail

// Everything checkable for one index with kappa_0 .. kappa_{L-1} in hand.
inline CheckList verify_suite(long n, std::span<const BigInt> kappa)
{
    require_index(n);
    const long L = static_cast<long>(kappa.size());
    CheckList out;
    detail::run_check(out, "prefix", [&](CheckResult &r) {
        const CoeffTable t{n, L, {kappa.begin(), kappa.end()}, Engine::PRecurrence};
        const auto bad = t.prefix_violation();
        r.passed = !bad;
        r.detail = bad ? "violated at q^" + std::to_string(*bad) : "1 + q + ... + q^{n-1} + 0 q^n";
    });
    detail::run_check(out, "engine_agreement", [&](CheckResult &r) {
        std::vector<Engine> engines{Engine::Convolution, Engine::Sqrt};
        if (n <= 3) {
            engines.push_back(Engine::ClosedForm);
        }
        r.passed = true;
        std::string names;
        for (const Engine e : engines) {
            const auto other = coeffs(n, L, e).values;
            names += (names.empty() ? "" : ",") + std::string(engine_name(e));
            for (long l = 0; l < L; ++l) {
                if (other[static_cast<std::size_t>(l)] != kappa[static_cast<std::size_t>(l)]) {
                    r.passed = false;
                    r.detail = std::string(engine_name(e)) + " differs at l = " + std::to_string(l);
                    return;
                }
            }
        }
        r.detail = "prec = " + names + " for l < " + std::to_string(L);
    });
    detail::run_check(out, "recurrence_residual", [&](CheckResult &r) {
        const auto spec = recurrence_spec(n);
        r.passed = true;
        for (long l = spec.valid_from; l < L; ++l) {
            if (recurrence_residual(spec, kappa, l) != 0) {
                r.passed = false;
                r.detail = "nonzero at l = " + std::to_string(l);
                return;
            }
        }
        r.detail = "zero for " + std::to_string(spec.valid_from) + " <= l < " + std::to_string(L);
    });
    detail::run_check(out, "functional_equation",
                      [&](CheckResult &r) { detail::from_series_check(r, verify_functional_equation(n, kappa)); });
    detail::run_check(out, "ode", [&](CheckResult &r) { detail::from_series_check(r, verify_ode(n, kappa)); });
    for (const auto &rep : check_all(n, std::max(L, 2 * n + 3))) {
        detail::run_check(out, "identity:" + std::string(identity_name(rep.id)), [&](CheckResult &r) {
            r.passed = rep.holds;
            r.detail = "to q^" + std::to_string(rep.checked_order);
            if (rep.first_failure) {
                r.detail += ", first failure at q^" + std::to_string(*rep.first_failure);
            }
        });
    }
    detail::run_check(out, "hankel", [&](CheckResult &r) {
        r.passed = true;
        long count = 0;
        for (long s = 0; s <= n + 1; ++s) {
            const long jmax = std::min(25L, (L - s + 1) / 2);
            for (long j = 1; j <= jmax; ++j) {
                const BigInt d = hankel(kappa, s, j);
                ++count;
                if (abs(d) > 1) {
                    r.passed = false;
                    r.detail = "Delta_" + std::to_string(j) + "^(" + std::to_string(s) + ") = " + to_decimal(d);
                    return;
                }
            }
        }
        r.detail = std::to_string(count) + " determinants in {-1, 0, 1}";
    });
    if (n == 1) {
        detail::run_check(out, "sign_bridge", [&](CheckResult &r) {
            const auto b = rna::sign_bridge_check(kappa, L);
            r.passed = b.holds;
            r.detail = b.first_failure ? "fails at l = " + std::to_string(*b.first_failure)
                                       : "kappa_l = (-1)^l a_{l-1} for l < " + std::to_string(L);
        });
    }
    return out;
}

// Every printed series and table entry, compared against fresh computation.
inline CheckList golden_suite(long precision_bits = kDefaultPrecisionBits, int digits = kRatioDigits)
{
    CheckList out;
    const std::pair<long, const golden::PrintedSeries *> metallic[] = {
        {1, &golden::phi1()}, {2, &golden::phi2()}, {3, &golden::phi3()}, {5, &golden::phi5()}};
    for (const auto &[n, printed] : metallic) {
        detail::run_check(out, "series:" + std::string(printed->name), [&](CheckResult &r) {
            detail::compare_series(r, coeffs_p_recurrence(n, printed->order()).series(), *printed);
        });
    }
    detail::run_check(out, "series:rna_counts", [&](CheckResult &r) {
        const auto &want = golden::rna_counts();
        const auto a = rna::rna_recurrence(static_cast<long>(want.size()));
        r.passed = std::equal(want.begin(), want.end(), a.begin(), [](long x, const BigInt &y) { return y == x; });
        r.detail = "a_0 .. a_" + std::to_string(want.size() - 1);
    });
    const auto root7 = quantize_quadratic(PeriodicCF({2}, {1, 1, 1, 4}));
    const auto inv_root7 = quantize_quadratic(PeriodicCF({0, 2}, {1, 1, 1, 4}));
    detail::run_check(out, "series:sqrt7", [&](CheckResult &r) {
        detail::compare_series(r, root7.series(golden::sqrt7().order()), golden::sqrt7());
    });
    detail::run_check(out, "series:-sqrt7", [&](CheckResult &r) {
        detail::compare_series(r, root7.conjugate_series(golden::neg_sqrt7().order()), golden::neg_sqrt7());
    });
    detail::run_check(out, "series:1/sqrt7", [&](CheckResult &r) {
        detail::compare_series(r, inv_root7.series(golden::inv_sqrt7().order()), golden::inv_sqrt7());
    });
    detail::run_check(out, "series:-1/sqrt7", [&](CheckResult &r) {
        detail::compare_series(r, inv_root7.conjugate_series(golden::neg_inv_sqrt7().order()),
                               golden::neg_inv_sqrt7());
    });
    const auto family = laurent_family(1, 40);
    detail::run_check(out, "series:[1/phi_1]",
                      [&](CheckResult &r) { detail::compare_series(r, family.reciprocal, golden::recip_phi1()); });
    detail::run_check(out, "series:[-phi_1]",
                      [&](CheckResult &r) { detail::compare_series(r, family.negative, golden::neg_phi1()); });
    detail::run_check(out, "series:[-1/phi_1]", [&](CheckResult &r) {
        detail::compare_series(r, family.neg_reciprocal, golden::neg_recip_phi1());
    });
    detail::run_check(out, "series:1/[phi_1]", [&](CheckResult &r) {
        detail::compare_series(r, inverse(family.phi, golden::mult_inverse_phi1().order()),
                               golden::mult_inverse_phi1());
    });
    const auto idx = standard_table_indices();
    for (long n = 1; n <= 3; ++n) {
        const auto table = ratio_table(n, idx, precision_bits, kRatioDigits);
        const auto &printed = golden::ratio_table(n);
        for (std::size_t i = 0; i < table.size(); ++i) {
            detail::run_check(out, "table" + std::to_string(n) + ":l=" + std::to_string(table[i].l),
                              [&](CheckResult &r) {
                                  const std::string want(printed[i].ratio);
                                  r.passed = decimal_agreement(table[i].ratio, want, digits);
                                  r.detail = table[i].ratio + " vs printed " + want + " at " +
                                             std::to_string(digits) + " digits";
                              });
        }
    }
    return out;
}

} // namespace qmetallic
