#include "hydroclose/cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace hydroclose::cli {

void Report::add(std::string name, bool passed, std::string detail) {
    checks.push_back({std::move(name), passed, std::move(detail)});
}

bool Report::passed() const {
    if (!error.empty() || checks.empty()) return false;
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

json Report::to_json(bool include_timing) const {
    json j;
    j["schema"] = kReportSchema;
    j["command"] = command;
    j["inputs"] = inputs;
    j["inputs_digest"] = inputs_digest(inputs);
    j["checks"] = json::array();
    for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["metrics"] = metrics;
    j["warnings"] = warnings;
    if (!error.empty()) j["error"] = error;
    j["passed"] = passed();
    if (include_timing) j["wall_seconds"] = wall_seconds;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << command << " [" << inputs_digest(inputs) << "]\n";
    for (const auto& c : checks) {
        out << (c.passed ? "  PASS  " : "  FAIL  ") << c.name;
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << '\n';
    }
    for (const auto& w : warnings) out << "  warning: " << w << '\n';
    if (!error.empty()) out << "  error: " << error << '\n';
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s: %zu checks, %zu failed, %.3f s\n", passed() ? "PASSED" : "FAILED",
                  checks.size(), failed, wall_seconds);
    out << buf;
    return out.str();
}

std::string fnv1a_hex(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string inputs_digest(const json& inputs) { return fnv1a_hex(inputs.dump()); }

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace hydroclose::cli
