#include "convexdyn/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace convexdyn {

void RunReport::add(const std::string& name, bool pass, const std::string& detail) {
    assertions.push_back({name, pass, detail});
}

bool RunReport::all_pass() const {
    for (const auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

Json RunReport::to_json() const {
    Json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["seed"] = seed;
    j["config"] = config;
    j["config_hash"] = fnv1a_hex(config.dump());
    j["metrics"] = metrics;
    Json arr = Json::array();
    for (const auto& a : assertions) {
        Json e;
        e["name"] = a.name;
        e["pass"] = a.pass;
        e["detail"] = a.detail;
        arr.push_back(std::move(e));
    }
    j["assertions"] = std::move(arr);
    j["pass"] = all_pass();
    return j;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

void write_report(const std::string& path, const RunReport& r) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << r.to_json().dump(2) << '\n';
}

}  // namespace convexdyn
