#pragma once

#include <chrono>
#include <ctime>
#include <map>
#include <string>
#include <vector>

#include "cache.hpp"
#include "io.hpp"

namespace qmetallic {

#ifndef QMETALLIC_VERSION
#define QMETALLIC_VERSION "0.0.0"
#endif

inline constexpr const char *kArtifactVersion = QMETALLIC_VERSION;

inline std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct ManifestOutput {
    std::string path;
    std::string sha256;
};

// What produced a set of output files. Parameters are kept sorted so two
// runs with the same inputs describe themselves identically, timestamp aside.
struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::string artifact_version = kArtifactVersion;
    std::string timestamp = utc_timestamp();
    std::vector<ManifestOutput> outputs;

    void add_output(const std::string &path, std::string_view content)
    {
        outputs.push_back({path, sha256_hex(content)});
    }

    [[nodiscard]] io::Json to_json() const
    {
        io::Json outs = io::Json::array();
        for (const auto &o : outputs) {
            outs.push_back({{"path", o.path}, {"sha256", o.sha256}});
        }
        io::Json params = io::Json::object();
        for (const auto &[k, v] : parameters) {
            params[k] = v;
        }
        return io::Json{{"command", command},
                        {"parameters", std::move(params)},
                        {"artifact_version", artifact_version},
                        {"timestamp", timestamp},
                        {"outputs", std::move(outs)}};
    }

    static RunManifest from_json(const io::Json &j)
    {
        RunManifest m;
        m.command = j.at("command").get<std::string>();
        for (const auto &[k, v] : j.at("parameters").items()) {
            m.parameters[k] = v.get<std::string>();
        }
        m.artifact_version = j.at("artifact_version").get<std::string>();
        m.timestamp = j.at("timestamp").get<std::string>();
        for (const auto &o : j.at("outputs")) {
            m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>()});
        }
        return m;
    }

    // Paths whose current content no longer matches the recorded hash.
    [[nodiscard]] std::vector<std::string> stale_outputs(const std::filesystem::path &base = ".") const
    {
        std::vector<std::string> bad;
        for (const auto &o : outputs) {
            const auto p = base / o.path;
            if (!std::filesystem::exists(p) || sha256_hex(read_file(p)) != o.sha256) {
                bad.push_back(o.path);
            }
        }
        return bad;
    }
};

} // namespace qmetallic
