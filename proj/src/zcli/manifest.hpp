#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zcli/config.hpp"

namespace zcli {

struct RunManifest {
    std::string run_id;
    std::vector<std::string> command_line;
    ConfigMap config;
    std::string started;
    std::string finished;
    std::string version;
    nlohmann::json parameters = nlohmann::json::object();
    std::vector<std::string> outputs;

    static RunManifest begin(const std::vector<std::string>& argv, const ConfigMap& cfg);
    void finish();
    nlohmann::json to_json() const;
    void write(const std::string& path) const;
    static RunManifest read(const std::string& path);
};

std::string new_run_id();
std::string utc_now();

}  // namespace zcli
