#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <thread>

#include <openssl/evp.h>
#include <unistd.h>

#include "io.hpp"
#include "metallic.hpp"

namespace qmetallic {

// Bumping this makes every existing cache file stale.
constexpr int kCacheFormatVersion = 1;

inline std::string sha256_hex(std::string_view data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        raise(ErrorKind::InvalidArgument, "sha256 failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

inline std::string read_file(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        raise(ErrorKind::InvalidArgument, "cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Write to a private temporary next to the target, then rename over it.
inline void write_file_atomic(const std::filesystem::path &target, std::string_view content)
{
    static std::atomic<unsigned long> counter{0};
    std::filesystem::create_directories(target.parent_path().empty() ? "." : target.parent_path());
    std::ostringstream name;
    name << target.filename().string() << ".tmp." << ::getpid() << "."
         << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "." << counter++;
    const auto tmp = target.parent_path() / name.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            raise(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out.flush()) {
            raise(ErrorKind::InvalidArgument, "short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, target);
}

inline std::filesystem::path default_cache_dir()
{
    if (const char *env = std::getenv("QMETALLIC_CACHE_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return ".qmetallic-cache";
}

class CoeffCache {
public:
    explicit CoeffCache(std::filesystem::path dir = default_cache_dir()) : dir_(std::move(dir)) {}

    [[nodiscard]] const std::filesystem::path &dir() const { return dir_; }

    [[nodiscard]] std::filesystem::path file_for(long n, Engine engine) const
    {
        return dir_ / ("phi" + std::to_string(n) + "_" + std::string(engine_name(engine)) + ".json");
    }

    void store(const CoeffTable &t) const
    {
        std::unique_lock lock(mutex_);
        const std::string body = io::table_to_json(t).dump();
        io::Json doc{{"format_version", kCacheFormatVersion},
                     {"n", t.n},
                     {"engine", std::string(engine_name(t.engine))},
                     {"sha256", sha256_hex(body)},
                     {"table", io::Json::parse(body)}};
        write_file_atomic(file_for(t.n, t.engine), doc.dump(1) + "\n");
    }

    // nullopt for a missing or stale-version file; CacheCorrupt when the
    // contents cannot be trusted.
    [[nodiscard]] std::optional<CoeffTable> load(long n, Engine engine) const
    {
        std::shared_lock lock(mutex_);
        const auto path = file_for(n, engine);
        if (!std::filesystem::exists(path)) {
            return std::nullopt;
        }
        const auto fail = [&](const std::string &why) -> CoeffTable {
            raise(ErrorKind::CacheCorrupt, "cache file " + path.string() + ": " + why);
        };
        io::Json doc;
        try {
            doc = io::Json::parse(read_file(path));
        } catch (const nlohmann::json::exception &) {
            return fail("not valid JSON");
        }
        if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_number_integer()) {
            return fail("missing format_version");
        }
        if (doc["format_version"].get<int>() != kCacheFormatVersion) {
            return std::nullopt;
        }
        if (!doc.contains("table") || !doc.contains("sha256") || !doc["sha256"].is_string()) {
            return fail("missing table or hash");
        }
        if (sha256_hex(doc["table"].dump()) != doc["sha256"].get<std::string>()) {
            return fail("hash mismatch");
        }
        CoeffTable t;
        try {
            t = io::table_from_json(doc["table"]);
        } catch (const Error &e) {
            return fail(e.what());
        }
        if (t.n != n || t.engine != engine) {
            return fail("key does not match file contents");
        }
        if (const auto bad = t.prefix_violation()) {
            return fail("prefix invariant broken at q^" + std::to_string(*bad));
        }
        return t;
    }

    // Cached table of length at least L. A longer P-recurrence request resumes
    // from the stored tail; other engines recompute from scratch.
    [[nodiscard]] CoeffTable get(long n, long L, Engine engine) const
    {
        std::optional<CoeffTable> t = load(n, engine);
        if (t && t->upto >= L) {
            t->values.resize(static_cast<std::size_t>(L));
            t->upto = L;
            return *t;
        }
        CoeffTable fresh;
        if (t && engine == Engine::PRecurrence && t->upto >= recurrence_spec(n).valid_from) {
            fresh = std::move(*t);
            extend_p_recurrence(fresh, L);
        } else {
            fresh = coeffs(n, L, engine);
        }
        store(fresh);
        return fresh;
    }

    // Like get, but a corrupt file is replaced instead of reported.
    [[nodiscard]] CoeffTable get_or_repair(long n, long L, Engine engine, std::string *diagnostic = nullptr) const
    {
        try {
            return get(n, L, engine);
        } catch (const Error &e) {
            if (e.kind() != ErrorKind::CacheCorrupt) {
                throw;
            }
            if (diagnostic != nullptr) {
                *diagnostic = e.what();
            }
            CoeffTable fresh = coeffs(n, L, engine);
            store(fresh);
            return fresh;
        }
    }

private:
    std::filesystem::path dir_;
    mutable std::shared_mutex mutex_;
};

} // namespace qmetallic
