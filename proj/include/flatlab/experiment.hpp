#pragma once

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace flatlab {

inline constexpr const char* kSoftwareVersion = "flatlab 0.1.0";

// One command line invocation. Fields not used by a command keep their
// defaults and still take part in the digest.
struct ExperimentConfig {
    std::string command;          // "count sv", "lyapunov run", "classify", ...
    std::string stratum;          // "1,1"
    std::string component;        // sampling component tag
    std::uint64_t seed = 1;
    int seeds = 1;                // lyapunov run: independent orbits
    long steps = 1000;            // induction or cocycle steps
    double L = 10;                // counting radius
    int k = 1;                    // cylinders per family
    int samples = 10;
    long N = 100000;              // orbit length
    double log_n_max = 0;         // deviation depth in log N (return times)
    int precision_bits = 30;
    std::string backend = "exact";
    std::string input;            // surface JSON
    std::string output;           // JSON result path
    std::string csv;              // optional table path
    std::string vectors;          // surface build: "x,y;x,y;..."
    std::string perm;             // "0 1 2/2 1 0", or the gluing order for surface build
    std::string lengths;          // "1/3 1/5 2/7"
    std::string x0;
    int jobs = 0;
    std::map<std::string, double> tolerances;   // tie_tol, max_std_error, budget, ...

    // Throws ConfigError on unknown commands or non-positive budgets.
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const nlohmann::json& j);

struct ResultRecord {
    int schema_version = 0;
    std::string experiment_id;
    std::string inputs_digest;
    std::string software_version;
    nlohmann::json config;
    nlohmann::json metrics;       // deterministic given (config, version)
    double wall_time = 0;         // seconds, excluded from the determinism contract
    nlohmann::json artifact;      // surface produced by surface build/sample
};

nlohmann::json record_to_json(const ResultRecord& r);
// Throws ConfigError when a field is missing or has the wrong type.
ResultRecord record_from_json(const nlohmann::json& j);

// Commands accepted by run().
const std::vector<std::string>& experiment_commands();

ResultRecord run(const ExperimentConfig& config);
// Runs the recorded configuration again; a different software version only
// produces a warning in `warning`.
ResultRecord replay(const ResultRecord& record, std::string* warning = nullptr);

// Stable 64-bit FNV-1a digest, hex encoded.
std::string digest(const std::string& text);

}  // namespace flatlab
