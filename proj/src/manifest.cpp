#include "fns/manifest.hpp"

#include <ctime>

#include "fns/csv.hpp"
#include "fns/sha256.hpp"

namespace fns {

std::string iso8601_utc_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest::RunManifest(std::string subcommand, nlohmann::json resolved_config)
    : subcommand_(std::move(subcommand)),
      config_(std::move(resolved_config)),
      started_(iso8601_utc_now()),
      notes_(nlohmann::json::object()) {}

void RunManifest::add_output(const std::string& path) { outputs_.push_back(path); }

void RunManifest::add_note(const std::string& key, const nlohmann::json& value) {
    notes_[key] = value;
}

void RunManifest::write(const std::string& path) {
    nlohmann::json m;
    m["tool"] = "fnslab";
    m["version"] = "0.1.0";
    m["subcommand"] = subcommand_;
    m["config"] = config_;
    m["config_digest"] = sha256_hex(config_.dump());
    m["started"] = started_;
    m["finished"] = iso8601_utc_now();
    nlohmann::json outs = nlohmann::json::array();
    for (const auto& p : outputs_) {
        nlohmann::json o;
        o["path"] = p;
        o["sha256"] = sha256_file_hex(p);
        outs.push_back(o);
    }
    m["outputs"] = outs;
    if (!notes_.empty()) m["notes"] = notes_;
    write_text_file(path, m.dump(2) + "\n");
}

}  // namespace fns
