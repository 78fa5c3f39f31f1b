#pragma once

// Suites behind the `residue` executable and their report records.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "residue/jacobian.hpp"

namespace residue {

inline constexpr const char* tool_version = "0.1.0";

/// Bad flags or ranges; exit status 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    std::string command;
    std::optional<int> n;
    std::optional<int> d;
    int k_max = 3;
    std::optional<std::string> poly;
    std::optional<std::string> poly_file;
    int trials = 100;
    std::uint64_t seed = 1;
    std::string out;
    bool override_size_cap = false;

    /// Throws UsageError.
    void validate() const;
};

enum class Verdict { Pass, Fail, Info };
std::string to_string(Verdict v);

struct Expected {
    std::string key;
    nlohmann::json value;
    std::string provenance;
};

struct Check {
    std::string name;
    nlohmann::json inputs = nlohmann::json::object();
    nlohmann::json computed = nlohmann::json::object();
    std::vector<Expected> expected;
    Verdict verdict = Verdict::Info;
    std::string note;
};

struct ReportEnvelope {
    std::string tool_version;
    RunConfig config;
    std::string timestamp;
    std::vector<Check> checks;

    bool all_pass() const;
    /// 0 when no check failed, 1 otherwise.
    int exit_code() const;
};

/// Exact count as a decimal string.
nlohmann::json exact(std::uint64_t v);
nlohmann::json exact(long v);
nlohmann::json exact(const Rational& q);
nlohmann::json exact(const std::vector<std::size_t>& v);

/// Largest coefficient-space dimension a family suite would touch.
std::uint64_t family_size(int n, int d, int k_max);
inline constexpr std::uint64_t family_size_cap = 400000;

/// A smooth degree-d form in n+1 variables with small pseudo-random
/// coefficients; deterministic in the seed.
HomogPoly random_smooth_form(int n, int d, std::uint64_t seed);

std::vector<Check> hodge_suite(const HomogPoly& f, const std::string& label);
std::vector<Check> charmod_suite(const ProblemSpec& spec, int k_max);
std::vector<Check> universal_suite(const ProblemSpec& spec, int k_max, int trials, std::uint64_t seed);
std::vector<Check> strata_suite(const ProblemSpec& spec, int trials, std::uint64_t seed);
/// The default grid: one or more checks per acceptance item, named "NN/...".
std::vector<Check> acceptance_suite(int trials, std::uint64_t seed);

/// Throws UsageError for unknown commands or invalid ranges.
ReportEnvelope run_command(const RunConfig& config);

/// Canonical JSON: sorted keys, counts as decimal strings, no timestamp.
std::string machine_record(const ReportEnvelope& env);
std::string human_report(const ReportEnvelope& env);

/// Writes the machine record to `path` and the human report to `path.txt`.
/// Throws std::runtime_error naming the path on I/O failure.
void emit_report(const ReportEnvelope& env, const std::string& path);

}  // namespace residue
