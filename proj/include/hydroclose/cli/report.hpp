#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hydroclose::cli {

using nlohmann::json;

inline constexpr int kReportSchema = 1;

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Outcome of one subcommand. passed() drives the exit code.
struct Report {
    std::string command;
    json inputs = json::object();
    std::vector<Check> checks;
    json metrics = json::object();  // drifts, deviations, measured values
    std::vector<std::string> warnings;
    std::string error;  // set when the command stopped early
    double wall_seconds = 0.0;

    void add(std::string name, bool passed, std::string detail = {});
    bool passed() const;  // no error, at least one check, every check passed
    int exit_code() const { return passed() ? 0 : 1; }

    // Keys come out sorted, so the dump is deterministic apart from wall time.
    json to_json(bool include_timing = true) const;
    std::string to_text() const;
};

// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
// Digest of the canonical dump of the inputs.
std::string inputs_digest(const json& inputs);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// "%.3g" formatting for details.
std::string sci(double x);

}  // namespace hydroclose::cli
