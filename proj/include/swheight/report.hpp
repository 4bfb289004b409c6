#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace swh {

inline const char* tool_version() { return "1.0.0"; }
inline const char* report_schema() { return "swheight-report/1"; }

// FNV-1a 64 over raw bytes, for input digests in reports.
inline std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct report {
    nlohmann::json doc;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    explicit report(const std::string& command) {
        doc["schema"] = report_schema();
        doc["tool_version"] = tool_version();
        doc["command"] = command;
        doc["args"] = nlohmann::json::array();
        doc["inputs"] = nlohmann::json::array();
        doc["results"] = nlohmann::json::object();
        doc["timings"] = nlohmann::json::object();
    }

    void echo_args(int argc, const char* const* argv) {
        for (int i = 0; i < argc; ++i) doc["args"].push_back(argv[i]);
    }

    void add_input(const std::string& label, const std::string& content) {
        nlohmann::json in;
        in["input"] = label;
        in["fnv1a"] = fnv1a_hex(content);
        doc["inputs"].push_back(in);
    }

    void finish() {
        doc["timings"]["total_ms"] =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
                .count();
    }

    std::string dump() const { return doc.dump(2) + "\n"; }
};

}  // namespace swh
