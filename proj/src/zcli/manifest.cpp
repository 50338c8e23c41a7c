#include "zcli/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <random>
#include <stdexcept>

#ifndef HARDYZ_VERSION
#define HARDYZ_VERSION "0.0.0"
#endif

namespace zcli {

std::string new_run_id() {
    std::random_device rd;
    std::uint64_t v = (std::uint64_t(rd()) << 32) ^ rd();
    v ^= std::uint64_t(std::chrono::system_clock::now().time_since_epoch().count());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string utc_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest RunManifest::begin(const std::vector<std::string>& argv, const ConfigMap& cfg) {
    RunManifest m;
    m.run_id = new_run_id();
    m.command_line = argv;
    m.config = cfg;
    m.started = utc_now();
    m.version = HARDYZ_VERSION;
    return m;
}

void RunManifest::finish() { finished = utc_now(); }

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["run_id"] = run_id;
    j["software_version"] = version;
    j["command_line"] = command_line;
    j["config"] = config;
    j["started"] = started;
    j["finished"] = finished;
    j["parameters"] = parameters;
    j["outputs"] = outputs;
    return j;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write manifest " + path);
    f << to_json().dump(2) << '\n';
}

RunManifest RunManifest::read(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest " + path);
    nlohmann::json j = nlohmann::json::parse(f);
    RunManifest m;
    m.run_id = j.at("run_id").get<std::string>();
    m.command_line = j.at("command_line").get<std::vector<std::string>>();
    m.config = j.value("config", ConfigMap{});
    m.started = j.value("started", "");
    m.finished = j.value("finished", "");
    m.version = j.value("software_version", "");
    m.parameters = j.value("parameters", nlohmann::json::object());
    m.outputs = j.value("outputs", std::vector<std::string>{});
    return m;
}

}  // namespace zcli
