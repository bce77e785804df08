#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fns {

// Provenance record written next to every tool output.  Captures the tool
// version, the resolved configuration (and its digest, so runs can be
// compared without parsing the full config) and a digest of every file the
// run produced.
class RunManifest {
  public:
    RunManifest(std::string subcommand, nlohmann::json resolved_config);

    void add_output(const std::string& path);
    void add_note(const std::string& key, const nlohmann::json& value);

    void write(const std::string& path);

    const nlohmann::json& config() const { return config_; }

  private:
    std::string subcommand_;
    nlohmann::json config_;
    std::string started_;
    std::vector<std::string> outputs_;
    nlohmann::json notes_;
};

std::string iso8601_utc_now();

}  // namespace fns
