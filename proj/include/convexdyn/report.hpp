#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace convexdyn {

inline constexpr const char* kToolName = "convexdyn";
inline constexpr const char* kToolVersion = "0.1.0";

/* Insertion-ordered JSON keeps report bytes reproducible across runs. */
using Json = nlohmann::ordered_json;

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

/*
 * Machine-readable run summary. Timing and other wall-clock facts never go
 * in here (they would break byte-for-byte reproducibility); callers print
 * them to stderr instead.
 */
struct RunReport {
    std::string command;
    std::uint64_t seed = 0;
    Json config = Json::object();
    Json metrics = Json::object();
    std::vector<Assertion> assertions;

    void add(const std::string& name, bool pass, const std::string& detail = "");
    bool all_pass() const;
    Json to_json() const;
};

/* FNV-1a 64-bit, lowercase hex. */
std::string fnv1a_hex(const std::string& bytes);

void write_report(const std::string& path, const RunReport& r);

}  // namespace convexdyn
