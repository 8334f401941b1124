#include <atomic>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <qmetallic/qmetallic.hpp>

using namespace qmetallic;
namespace fs = std::filesystem;

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCache = 3;

struct Globals {
    long precision_bits = kDefaultPrecisionBits;
    std::string format = "auto";
    std::string cache_dir;
    bool no_cache = false;
    int jobs = 1;
    std::string out;
};

Globals g;

bool want_csv(bool csv_by_default)
{
    if (g.format == "auto") {
        return csv_by_default;
    }
    return g.format == "csv";
}

std::optional<CoeffCache> cache()
{
    if (g.no_cache) {
        return std::nullopt;
    }
    return std::optional<CoeffCache>(std::in_place, g.cache_dir.empty() ? default_cache_dir() : fs::path(g.cache_dir));
}

// Coefficient table through the cache when one is configured; a corrupt
// entry is reported on stderr and rebuilt.
CoeffTable table(long n, long L, Engine engine)
{
    if (auto c = cache()) {
        std::string why;
        CoeffTable t = c->get_or_repair(n, L, engine, &why);
        if (!why.empty()) {
            std::cerr << "warning: " << why << "; recomputed\n";
        }
        return t;
    }
    return coeffs(n, L, engine);
}

RunManifest manifest(const std::string &command, std::map<std::string, std::string> params)
{
    RunManifest m;
    m.command = command;
    params["precision_bits"] = std::to_string(g.precision_bits);
    params["format"] = g.format;
    m.parameters = std::move(params);
    return m;
}

void emit_to(const fs::path &path, const std::string &content, RunManifest &m)
{
    write_file_atomic(path, content);
    m.add_output(path.filename().string(), content);
}

void write_manifest(const fs::path &dir, const std::string &stem, const RunManifest &m)
{
    write_file_atomic(dir / (stem + ".manifest.json"), m.to_json().dump(2) + "\n");
}

// stdout, or --out plus a manifest next to it.
void emit(const std::string &content, RunManifest m)
{
    if (g.out.empty()) {
        std::cout << content;
        return;
    }
    const fs::path path(g.out);
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    emit_to(path, content, m);
    write_manifest(dir, path.filename().string(), m);
}

std::string dump(const io::Json &j) { return j.dump(2) + "\n"; }

// Results in index order whatever the scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t count, const std::function<T(std::size_t)> &fn)
{
    std::vector<T> out(count);
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(g.jobs, static_cast<int>(count)));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::pair<long, long> parse_range(const std::string &text)
{
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const long v = parse_bigint(text).get_si();
        return {v, v};
    }
    const long a = parse_bigint(text.substr(0, dots)).get_si();
    const long b = parse_bigint(text.substr(dots + 2)).get_si();
    if (b < a) {
        raise(ErrorKind::InvalidArgument, "empty range " + text);
    }
    return {a, b};
}

int report_checks(const std::string &command, const io::Json &head, const CheckList &checks,
                  std::map<std::string, std::string> params)
{
    io::Json j = head;
    j["passed"] = all_passed(checks);
    j["checks"] = checks_to_json(checks);
    emit(dump(j), manifest(command, std::move(params)));
    if (const auto *bad = first_failure(checks)) {
        std::cerr << command << ": check '" << bad->name << "' failed: " << bad->detail << "\n";
        return kExitFailed;
    }
    return 0;
}

// --- commands ---------------------------------------------------------------

struct CoeffsArgs {
    long n = 1;
    long L = 20;
    std::string engine = "prec";
};

int cmd_coeffs(const CoeffsArgs &a)
{
    const Engine e = parse_engine(a.engine);
    require_index(a.n);
    if (e == Engine::ClosedForm && a.n > 3) {
        raise(ErrorKind::InvalidArgument, "engine 'closed' requires n <= 3 (closed forms exist for n = 1, 2, 3 only)");
    }
    const CoeffTable t = table(a.n, a.L, e);
    const std::string body = want_csv(false) ? io::table_to_csv(t) : dump(io::table_to_json(t));
    emit(body, manifest("coeffs", {{"n", std::to_string(a.n)}, {"L", std::to_string(a.L)}, {"engine", a.engine}}));
    return 0;
}

struct VerifyArgs {
    std::optional<long> n;
    long L = 300;
    bool golden = false;
    int digits = kRatioDigits;
};

int cmd_verify(const VerifyArgs &a)
{
    if (a.golden) {
        const auto checks = golden_suite(g.precision_bits, a.digits);
        return report_checks("verify", io::Json{{"mode", "golden"}, {"digits", a.digits}}, checks,
                             {{"golden", "true"}, {"digits", std::to_string(a.digits)}});
    }
    if (!a.n) {
        raise(ErrorKind::InvalidArgument, "verify needs --n or --golden");
    }
    const long n = *a.n;
    require_index(n);
    if (a.L < 2 * n + 4) {
        raise(ErrorKind::InvalidArgument, "verify needs L >= 2n + 4");
    }
    CheckList checks;
    std::vector<BigInt> kappa;
    if (auto c = cache()) {
        CheckResult integrity{"cache_integrity", true, "no cached table"};
        try {
            if (const auto cached = c->load(n, Engine::PRecurrence)) {
                integrity.detail = "cached table to q^" + std::to_string(cached->upto) + " verified";
            }
            kappa = c->get(n, a.L, Engine::PRecurrence).values;
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::CacheCorrupt) {
                throw;
            }
            integrity = {"cache_integrity", false, e.what()};
        }
        checks.push_back(integrity);
    }
    if (kappa.empty()) {
        kappa = coeffs_p_recurrence(n, a.L).values;
    }
    for (auto &c : verify_suite(n, kappa)) {
        checks.push_back(std::move(c));
    }
    const int rc = report_checks("verify", io::Json{{"n", n}, {"L", a.L}}, checks,
                                 {{"n", std::to_string(n)}, {"L", std::to_string(a.L)}});
    if (rc != 0 && !checks.empty() && checks.front().name == "cache_integrity" && !checks.front().passed) {
        return kExitCache;
    }
    return rc;
}

struct IdentityArgs {
    long n = 1;
    long order = 300;
    std::string id;
    std::string conjugate;
};

int cmd_verify_identities(const IdentityArgs &a)
{
    CheckList checks;
    for (const auto &rep : check_all(a.n, a.order)) {
        CheckResult r{std::string(identity_name(rep.id)), rep.holds, "to q^" + std::to_string(rep.checked_order)};
        if (rep.first_failure) {
            r.detail += ", first failure at q^" + std::to_string(*rep.first_failure);
        }
        checks.push_back(std::move(r));
    }
    return report_checks("verify identities", io::Json{{"n", a.n}, {"order", a.order}}, checks,
                         {{"n", std::to_string(a.n)}, {"order", std::to_string(a.order)}});
}

int cmd_identities(const IdentityArgs &a)
{
    const std::map<std::string, std::string> params{
        {"n", std::to_string(a.n)}, {"order", std::to_string(a.order)}, {"id", a.id}, {"conjugate", a.conjugate}};
    if (!a.conjugate.empty()) {
        const auto cf = PeriodicCF::parse(a.conjugate);
        io::Json j = io::conjugate_to_json(conjugate_pair_check(cf, a.order));
        j["cf"] = cf.to_string();
        emit(dump(j), manifest("identities", params));
        return j["holds"].get<bool>() ? 0 : kExitFailed;
    }
    std::vector<IdentityReport> reps;
    if (a.id.empty()) {
        reps = check_all(a.n, a.order);
    } else {
        const IdentityId id = parse_identity(a.id);
        if (id == IdentityId::MultInv) {
            reps.push_back(mult_inverse_check(a.n, a.order));
        } else if (id == IdentityId::ReflectR || id == IdentityId::ReflectP) {
            reps.push_back(reflection_check(a.n, id));
        } else {
            reps.push_back(check_rel(a.n, id, a.order));
        }
    }
    bool ok = true;
    std::string body;
    if (want_csv(false)) {
        body = "n,identity,holds,checked_order,first_failure\n";
        for (const auto &r : reps) {
            body += std::to_string(r.n) + "," + std::string(identity_name(r.id)) + "," + (r.holds ? "1" : "0") +
                    "," + std::to_string(r.checked_order) + "," +
                    (r.first_failure ? std::to_string(*r.first_failure) : "") + "\n";
            ok = ok && r.holds;
        }
    } else {
        io::Json arr = io::Json::array();
        for (const auto &r : reps) {
            arr.push_back(io::identity_to_json(r));
            ok = ok && r.holds;
        }
        body = dump(arr);
    }
    emit(body, manifest("identities", params));
    return ok ? 0 : kExitFailed;
}

struct TablesArgs {
    std::string which = "all";
    std::string out_dir;
};

int cmd_tables(const TablesArgs &a)
{
    std::vector<long> ns;
    if (a.which == "all") {
        ns = {1, 2, 3};
    } else if (a.which == "table1" || a.which == "table2" || a.which == "table3") {
        ns = {a.which.back() - '0'};
    } else {
        raise(ErrorKind::InvalidArgument, "tables: expected table1, table2, table3 or all");
    }
    const auto idx = standard_table_indices();
    const auto tables = parallel_map<std::vector<RatioEntry>>(
        ns.size(), [&](std::size_t i) { return ratio_table(ns[i], idx, g.precision_bits); });
    auto m = manifest("tables", {{"which", a.which}});
    if (!a.out_dir.empty()) {
        for (std::size_t i = 0; i < ns.size(); ++i) {
            emit_to(fs::path(a.out_dir) / ("table" + std::to_string(ns[i]) + ".csv"), io::ratio_table_to_csv(tables[i]),
                    m);
        }
        write_manifest(a.out_dir, "tables", m);
        return 0;
    }
    std::string body;
    if (want_csv(true)) {
        for (std::size_t i = 0; i < ns.size(); ++i) {
            if (ns.size() > 1) {
                body += "# table" + std::to_string(ns[i]) + "\n";
            }
            body += io::ratio_table_to_csv(tables[i]);
        }
    } else {
        io::Json j = io::Json::object();
        for (std::size_t i = 0; i < ns.size(); ++i) {
            io::Json rows = io::Json::array();
            for (const auto &r : tables[i]) {
                rows.push_back({{"l", r.l}, {"ratio", r.ratio}});
            }
            j["table" + std::to_string(ns[i])] = std::move(rows);
        }
        body = dump(j);
    }
    emit(body, m);
    return 0;
}

struct AsymptoticsArgs {
    long n = 1;
    std::vector<long> l_values;
};

int cmd_asymptotics(const AsymptoticsArgs &a)
{
    const auto report = singularity_report(a.n, g.precision_bits);
    const auto idx = a.l_values.empty() ? standard_table_indices() : a.l_values;
    const long top = *std::max_element(idx.begin(), idx.end());
    const auto kappa = table(a.n, std::max(top + 1, kCalibrationIndex + 20), Engine::PRecurrence).values;
    const auto rows = ratio_table(report, kappa, idx);
    std::string body;
    if (want_csv(false)) {
        body = io::ratio_table_to_csv(rows);
    } else {
        io::Json j = io::singularity_to_json(report);
        io::Json r = io::Json::array();
        for (const auto &row : rows) {
            r.push_back({{"l", row.l}, {"ratio", row.ratio}});
        }
        j["ratios"] = std::move(r);
        body = dump(j);
    }
    std::string ls;
    for (const long l : idx) {
        ls += (ls.empty() ? "" : ",") + std::to_string(l);
    }
    emit(body, manifest("asymptotics", {{"n", std::to_string(a.n)}, {"l", ls}}));
    return 0;
}

struct RadiusArgs {
    std::optional<long> n;
    std::string range;
};

int cmd_radius(const RadiusArgs &a)
{
    long lo = 1;
    long hi = 1;
    if (!a.range.empty()) {
        std::tie(lo, hi) = parse_range(a.range);
    } else if (a.n) {
        lo = hi = *a.n;
    } else {
        raise(ErrorKind::InvalidArgument, "radius needs --n or --n-range");
    }
    const auto count = static_cast<std::size_t>(hi - lo + 1);
    const int digits = static_cast<int>(digits10_for_bits(g.precision_bits));
    const auto values = parallel_map<std::string>(count, [&](std::size_t i) {
        const MPReal r = radius(lo + static_cast<long>(i), g.precision_bits);
        PrecisionScope scope(g.precision_bits);
        return format_significant(r, digits);
    });
    std::string body;
    if (want_csv(!a.range.empty())) {
        body = "n,radius\n";
        for (std::size_t i = 0; i < count; ++i) {
            body += std::to_string(lo + static_cast<long>(i)) + "," + values[i] + "\n";
        }
    } else {
        io::Json arr = io::Json::array();
        for (std::size_t i = 0; i < count; ++i) {
            arr.push_back({{"n", lo + static_cast<long>(i)}, {"radius", values[i]}, {"precision_bits", g.precision_bits}});
        }
        body = dump(count == 1 ? arr[0] : arr);
    }
    emit(body, manifest("radius", {{"range", std::to_string(lo) + ".." + std::to_string(hi)}}));
    return 0;
}

struct RnaArgs {
    long size = 10;
    long rank = 1;
    long max_size = 16;
    long max_rank = 3;
    long L = 1000;
};

int cmd_rna_count(const RnaArgs &a)
{
    const BigInt c = rna::enumerate_structures(a.size, a.rank);
    const std::string body = want_csv(false)
                                 ? "l,rank,count\n" + std::to_string(a.size) + "," + std::to_string(a.rank) + "," +
                                       to_decimal(c) + "\n"
                                 : dump(io::Json{{"size", a.size}, {"rank", a.rank}, {"count", to_decimal(c)}});
    emit(body, manifest("rna count", {{"size", std::to_string(a.size)}, {"rank", std::to_string(a.rank)}}));
    return 0;
}

int cmd_rna_grid(const RnaArgs &a)
{
    emit(io::rna_grid_to_csv(rna::count_grid(a.max_size, a.max_rank)),
         manifest("rna grid", {{"max_size", std::to_string(a.max_size)}, {"max_rank", std::to_string(a.max_rank)}}));
    return 0;
}

int cmd_rna_bridge(const RnaArgs &a)
{
    const auto kappa = table(1, a.L, Engine::PRecurrence).values;
    const auto r = rna::sign_bridge_check(kappa, a.L);
    const auto motzkin = rna::motzkin_offset(14);
    const io::Json j{{"L", a.L},
                     {"holds", r.holds},
                     {"first_failure", io::optional_json(r.first_failure)},
                     {"p_recurrence", rna::rna_p_recurrence_check(std::min(a.L, 500L))},
                     {"motzkin_offset", io::optional_json(motzkin)},
                     {"silver_divergence", io::optional_json(rna::family_divergence(2, 15))}};
    emit(dump(j), manifest("rna bridge", {{"L", std::to_string(a.L)}}));
    return r.holds ? 0 : kExitFailed;
}

struct LogArgs {
    std::optional<long> n;
    std::string range;
    long l_max = 2000;
};

int cmd_logconv(const LogArgs &a)
{
    const std::map<std::string, std::string> params{
        {"n", a.n ? std::to_string(*a.n) : ""}, {"n_range", a.range}, {"lmax", std::to_string(a.l_max)}};
    if (!a.range.empty()) {
        const auto [lo, hi] = parse_range(a.range);
        const auto count = static_cast<std::size_t>(hi - lo + 1);
        const auto reports = parallel_map<LogReport>(
            count, [&](std::size_t i) { return classify(lo + static_cast<long>(i), a.l_max); });
        std::string body;
        if (want_csv(true)) {
            body = io::log_summary_header();
            for (const auto &r : reports) {
                body += io::log_summary_row(r);
            }
        } else {
            io::Json arr = io::Json::array();
            for (const auto &r : reports) {
                arr.push_back(io::log_report_to_json(r));
            }
            body = dump(arr);
        }
        emit(body, manifest("logconv", params));
        return 0;
    }
    if (!a.n) {
        raise(ErrorKind::InvalidArgument, "logconv needs --n or --n-range");
    }
    const auto kappa = table(*a.n, a.l_max + 1, Engine::PRecurrence).values;
    const auto r = classify(*a.n, kappa, a.l_max);
    const std::string body =
        want_csv(false) ? io::log_summary_header() + io::log_summary_row(r) : dump(io::log_report_to_json(r));
    emit(body, manifest("logconv", params));
    return 0;
}

struct QuantizeArgs {
    std::string cf;
    long order = 20;
};

int cmd_quantize(const QuantizeArgs &a)
{
    const auto cf = PeriodicCF::parse(a.cf);
    io::Json j{{"cf", cf.to_string()}};
    if (cf.is_rational()) {
        const auto r = q_rational(cf);
        j["numerator"] = io::polynomial_to_json(r.num);
        j["denominator"] = io::polynomial_to_json(r.den);
        j["series"] = io::series_to_json(r.to_series(a.order));
    } else {
        const auto f = quantize_quadratic(cf);
        j["form"] = io::quadratic_to_json(f);
        j["series"] = io::series_to_json(f.series(a.order));
        j["conjugate"] = io::series_to_json(f.conjugate_series(a.order));
    }
    std::string body = dump(j);
    if (want_csv(false)) {
        const auto series = io::series_from_json(j["series"]);
        body = "exponent,coefficient\n";
        for (long e = series.valuation(); e < series.order(); ++e) {
            body += std::to_string(e) + "," + to_decimal(series.coeff(e)) + "\n";
        }
    }
    emit(body, manifest("quantize", {{"cf", a.cf}, {"order", std::to_string(a.order)}}));
    return 0;
}

struct HankelArgs {
    long n = 1;
    long max_s = 2;
    long max_j = 25;
};

int cmd_hankel(const HankelArgs &a)
{
    const auto kappa = table(a.n, a.max_s + 2 * a.max_j + 1, Engine::PRecurrence).values;
    emit(io::hankel_to_csv(kappa, a.max_s, a.max_j),
         manifest("hankel", {{"n", std::to_string(a.n)}, {"max_s", std::to_string(a.max_s)},
                             {"max_j", std::to_string(a.max_j)}}));
    return 0;
}

int exit_code_for(const Error &e)
{
    switch (e.kind()) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::ParseError:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::InsufficientOrder:
        return kExitUsage;
    case ErrorKind::CacheCorrupt:
        return kExitCache;
    default:
        return kExitFailed;
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact coefficients, identities and asymptotics of q-deformed metallic numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(kArtifactVersion));
    app.add_option("--precision-bits", g.precision_bits, "Working precision for root finding")
        ->check(CLI::Range(kMinPrecisionBits, 1L << 16));
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--cache-dir", g.cache_dir, "Coefficient cache directory (default $QMETALLIC_CACHE_DIR)");
    app.add_flag("--no-cache", g.no_cache, "Do not read or write the coefficient cache");
    app.add_option("--jobs", g.jobs, "Worker threads for multi-index commands")->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "Write output to this file plus a run manifest next to it");

    std::function<int()> run;

    CoeffsArgs ca;
    auto *coeffs_cmd = app.add_subcommand("coeffs", "Coefficient table kappa_0 .. kappa_{L-1} of [phi_n]_q");
    coeffs_cmd->add_option("--n", ca.n, "Metallic index")->required();
    coeffs_cmd->add_option("--L", ca.L, "Number of coefficients")->check(CLI::NonNegativeNumber);
    coeffs_cmd->add_option("--engine", ca.engine, "conv, prec, sqrt or closed");
    coeffs_cmd->callback([&] { run = [&] { return cmd_coeffs(ca); }; });

    VerifyArgs va;
    IdentityArgs via;
    auto *verify_cmd = app.add_subcommand("verify", "Run the check suite for one index, or against printed data");
    verify_cmd->add_option("--n", va.n, "Metallic index");
    verify_cmd->add_option("--L", va.L, "Coefficients to check");
    verify_cmd->add_flag("--golden", va.golden, "Compare against every printed series and table");
    verify_cmd->add_option("--digits", va.digits, "Significant digits for table comparison")
        ->check(CLI::Range(1, 30));
    auto *verify_ids = verify_cmd->add_subcommand("identities", "Full identity suite for one index");
    verify_ids->add_option("--n", via.n)->required();
    verify_ids->add_option("--order", via.order);
    verify_cmd->callback([&] {
        if (verify_ids->parsed()) {
            run = [&] { return cmd_verify_identities(via); };
        } else {
            run = [&] { return cmd_verify(va); };
        }
    });

    TablesArgs ta;
    auto *tables_cmd = app.add_subcommand("tables", "Asymptotic ratio tables for n = 1, 2, 3");
    tables_cmd->add_option("which", ta.which, "table1, table2, table3 or all");
    tables_cmd->add_option("--out-dir", ta.out_dir, "Write tableN.csv files and a manifest here");
    tables_cmd->callback([&] { run = [&] { return cmd_tables(ta); }; });

    AsymptoticsArgs aa;
    auto *asym_cmd = app.add_subcommand("asymptotics", "Dominant singularities, constants and ratios");
    asym_cmd->add_option("--n", aa.n)->required();
    asym_cmd->add_option("--l", aa.l_values, "Indices for the ratio column")->delimiter(',');
    asym_cmd->callback([&] { run = [&] { return cmd_asymptotics(aa); }; });

    RadiusArgs ra;
    auto *radius_cmd = app.add_subcommand("radius", "Radius of convergence of [phi_n]_q");
    radius_cmd->add_option("--n", ra.n);
    radius_cmd->add_option("--n-range", ra.range, "a..b");
    radius_cmd->callback([&] { run = [&] { return cmd_radius(ra); }; });

    IdentityArgs ia;
    auto *id_cmd = app.add_subcommand("identities", "Identity reports as data");
    id_cmd->add_option("--n", ia.n);
    id_cmd->add_option("--order", ia.order);
    id_cmd->add_option("--id", ia.id, "Single identity by name");
    id_cmd->add_option("--conjugate", ia.conjugate, "Conjugate-pair check for a periodic continued fraction");
    id_cmd->callback([&] { run = [&] { return cmd_identities(ia); }; });

    RnaArgs rn;
    auto *rna_cmd = app.add_subcommand("rna", "Secondary-structure counts");
    rna_cmd->require_subcommand(1);
    auto *rna_count = rna_cmd->add_subcommand("count", "Structures of one size and rank");
    rna_count->add_option("--size", rn.size)->required();
    rna_count->add_option("--rank", rn.rank);
    rna_count->callback([&] { run = [&] { return cmd_rna_count(rn); }; });
    auto *rna_grid = rna_cmd->add_subcommand("grid", "CSV of counts by size and rank");
    rna_grid->add_option("--max-size", rn.max_size);
    rna_grid->add_option("--max-rank", rn.max_rank);
    rna_grid->callback([&] { run = [&] { return cmd_rna_grid(rn); }; });
    auto *rna_bridge = rna_cmd->add_subcommand("bridge", "Signed correspondence with the golden coefficients");
    rna_bridge->add_option("--L", rn.L);
    rna_bridge->callback([&] { run = [&] { return cmd_rna_bridge(rn); }; });

    LogArgs la;
    auto *log_cmd = app.add_subcommand("logconv", "Log-convexity / log-concavity classification");
    log_cmd->add_option("--n", la.n);
    log_cmd->add_option("--n-range", la.range, "a..b, summary CSV");
    log_cmd->add_option("--lmax", la.l_max);
    log_cmd->callback([&] { run = [&] { return cmd_logconv(la); }; });

    QuantizeArgs qa;
    auto *q_cmd = app.add_subcommand("quantize", "q-deformation of a rational or periodic continued fraction");
    q_cmd->add_option("--cf", qa.cf, "a0;a1,a2,(p1,p2)*")->required();
    q_cmd->add_option("--order", qa.order);
    q_cmd->callback([&] { run = [&] { return cmd_quantize(qa); }; });

    HankelArgs ha;
    auto *h_cmd = app.add_subcommand("hankel", "Hankel determinants, rows j and columns s");
    h_cmd->add_option("--n", ha.n)->required();
    h_cmd->add_option("--max-s", ha.max_s);
    h_cmd->add_option("--max-j", ha.max_j);
    h_cmd->callback([&] { run = [&] { return cmd_hankel(ha); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        return run();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailed;
    }
}
