#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "identities.hpp"
#include "logbehaviour.hpp"
#include "metallic.hpp"
#include "rna.hpp"
#include "series.hpp"

// JSON and CSV forms of everything the CLI emits. Numbers that are exact
// travel as decimal strings, never as JSON floats.
namespace qmetallic::io {

using Json = nlohmann::ordered_json;

inline Json series_to_json(const LaurentSeries &s)
{
    if (s.is_exact()) {
        raise(ErrorKind::InvalidArgument, "exchange format needs a truncated series");
    }
    Json coeffs = Json::array();
    for (const auto &c : s.window()) {
        coeffs.push_back(to_decimal(c));
    }
    return Json{{"valuation", s.valuation()}, {"order", s.order()}, {"coeffs", std::move(coeffs)}};
}

inline LaurentSeries series_from_json(const Json &j)
{
    try {
        const long v = j.at("valuation").get<long>();
        const long order = j.at("order").get<long>();
        std::vector<BigRat> c;
        for (const auto &x : j.at("coeffs")) {
            c.push_back(parse_bigrat(x.get<std::string>()));
        }
        if (static_cast<long>(c.size()) != std::max(0L, order - v)) {
            raise(ErrorKind::ParseError, "coefficient count does not match valuation and order");
        }
        return LaurentSeries(v, std::move(c), order);
    } catch (const nlohmann::json::exception &e) {
        raise(ErrorKind::ParseError, std::string("series json: ") + e.what());
    }
}

// Series exchange fields first, then what identifies the table.
inline Json table_to_json(const CoeffTable &t)
{
    Json coeffs = Json::array();
    for (long l = 0; l < t.upto; ++l) {
        coeffs.push_back(to_decimal(t.values[static_cast<std::size_t>(l)]));
    }
    return Json{{"valuation", 0},         {"order", t.upto}, {"coeffs", std::move(coeffs)},
                {"n", t.n},               {"engine", std::string(engine_name(t.engine))}};
}

inline CoeffTable table_from_json(const Json &j)
{
    try {
        CoeffTable t;
        t.n = j.at("n").get<long>();
        t.engine = parse_engine(j.at("engine").get<std::string>());
        if (j.at("valuation").get<long>() != 0) {
            raise(ErrorKind::ParseError, "coefficient table must start at q^0");
        }
        t.upto = j.at("order").get<long>();
        for (const auto &x : j.at("coeffs")) {
            t.values.push_back(parse_bigint(x.get<std::string>()));
        }
        if (static_cast<long>(t.values.size()) != t.upto) {
            raise(ErrorKind::ParseError, "coefficient count does not match order");
        }
        return t;
    } catch (const nlohmann::json::exception &e) {
        raise(ErrorKind::ParseError, std::string("table json: ") + e.what());
    }
}

inline std::string table_to_csv(const CoeffTable &t)
{
    std::string out = "l,kappa\n";
    for (long l = 0; l < t.upto; ++l) {
        out += std::to_string(l) + "," + to_decimal(t.values[static_cast<std::size_t>(l)]) + "\n";
    }
    return out;
}

inline Json complex_to_json(const MPComplex &z, long bits)
{
    const int digits = static_cast<int>(digits10_for_bits(bits));
    return Json{{"re", format_significant(z.re, digits)},
                {"im", format_significant(z.im, digits)},
                {"precision_bits", bits}};
}

inline Json singularity_to_json(const SingularityReport &r)
{
    Json roots = Json::array();
    for (const auto &z : r.all_roots) {
        roots.push_back(complex_to_json(z, r.precision_bits));
    }
    Json dominant = Json::array();
    for (std::size_t i = 0; i < r.dominant.size(); ++i) {
        Json d = complex_to_json(r.dominant[i], r.precision_bits);
        d["gamma"] = complex_to_json(r.gammas[i], r.precision_bits);
        dominant.push_back(std::move(d));
    }
    const int digits = static_cast<int>(digits10_for_bits(r.precision_bits));
    return Json{{"n", r.n},
                {"precision_bits", r.precision_bits},
                {"radius", format_significant(r.radius, digits)},
                {"max_residual", format_scientific(r.max_residual, 6)},
                {"dominant", std::move(dominant)},
                {"roots", std::move(roots)},
                {"notes", r.notes}};
}

inline std::string ratio_table_to_csv(const std::vector<RatioEntry> &rows)
{
    std::string out = "l,ratio\n";
    for (const auto &r : rows) {
        out += std::to_string(r.l) + "," + r.ratio + "\n";
    }
    return out;
}

template <class T>
Json optional_json(const std::optional<T> &v)
{
    return v ? Json(*v) : Json(nullptr);
}

inline Json identity_to_json(const IdentityReport &r)
{
    return Json{{"n", r.n},
                {"identity", std::string(identity_name(r.id))},
                {"holds", r.holds},
                {"checked_order", r.checked_order},
                {"first_failure", optional_json(r.first_failure)}};
}

inline Json conjugate_to_json(const ConjugateReport &r)
{
    return Json{{"holds", r.holds},
                {"checked_order", r.checked_order},
                {"onset", r.onset},
                {"first_failure", optional_json(r.first_failure)}};
}

inline Json log_report_to_json(const LogReport &r)
{
    return Json{{"n", r.n},
                {"l_min", r.l_min},
                {"l_max", r.l_max},
                {"classification", std::string(log_class_name(r.classification))},
                {"onset", optional_json(r.onset)},
                {"heuristic", r.heuristic},
                {"positive_count", r.positive_count},
                {"negative_count", r.negative_count},
                {"first_positive", optional_json(r.first_positive)},
                {"last_positive", optional_json(r.last_positive)},
                {"first_negative", optional_json(r.first_negative)},
                {"last_negative", optional_json(r.last_negative)},
                {"violation_indices", r.violation_indices}};
}

inline std::string log_summary_header()
{
    return "n,l_max,classification,onset,positive_count,negative_count,first_positive,first_negative\n";
}

inline std::string log_summary_row(const LogReport &r)
{
    const auto opt = [](const std::optional<long> &v) { return v ? std::to_string(*v) : std::string(); };
    std::ostringstream os;
    os << r.n << ',' << r.l_max << ',' << log_class_name(r.classification) << ',' << opt(r.onset) << ','
       << r.positive_count << ',' << r.negative_count << ',' << opt(r.first_positive) << ','
       << opt(r.first_negative) << '\n';
    return os.str();
}

inline std::string rna_grid_to_csv(const std::vector<rna::RankedCount> &grid)
{
    std::string out = "l,rank,count\n";
    for (const auto &c : grid) {
        out += std::to_string(c.size) + "," + std::to_string(c.rank) + "," + to_decimal(c.count) + "\n";
    }
    return out;
}

// Rows j = 1..max_j, columns s = 0..max_s.
inline std::string hankel_to_csv(std::span<const BigInt> kappa, long max_s, long max_j)
{
    std::string out = "j";
    for (long s = 0; s <= max_s; ++s) {
        out += ",s" + std::to_string(s);
    }
    out += "\n";
    for (long j = 1; j <= max_j; ++j) {
        out += std::to_string(j);
        for (long s = 0; s <= max_s; ++s) {
            out += "," + to_decimal(hankel(kappa, s, j));
        }
        out += "\n";
    }
    return out;
}

inline Json polynomial_to_json(const IntPolynomial &p)
{
    Json c = Json::array();
    for (const auto &x : p.coeffs()) {
        c.push_back(to_decimal(x));
    }
    return c;
}

inline Json quadratic_to_json(const QuadraticForm &f)
{
    return Json{{"R", polynomial_to_json(f.R)},
                {"P", polynomial_to_json(f.P)},
                {"S", polynomial_to_json(f.S)},
                {"sign", f.sign}};
}

} // namespace qmetallic::io
