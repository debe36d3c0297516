#include "flatlab/errors.hpp"
#include "flatlab/experiment.hpp"
#include "flatlab/serialize.hpp"

#include <algorithm>
#include <cstdio>

namespace flatlab {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorCode::ConfigError, "cli", msg); }

template <class T>
void read(const json& j, const char* key, T& out)
{
    if (!j.contains(key)) config_error(std::string("missing field ") + key);
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        config_error(std::string("field ") + key + " has the wrong type");
    }
}

}  // namespace

std::string digest(const std::string& text)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

const std::vector<std::string>& experiment_commands()
{
    static const std::vector<std::string> list = {
        "surface build", "surface sample",   "surface info",   "iet induce",   "iet orbit",
        "homology cycles", "homology asymptotic", "lyapunov run", "lyapunov deviation", "count sc",
        "count cyl",     "count sv",         "count groups",   "classify",
    };
    return list;
}

void ExperimentConfig::validate() const
{
    const auto& cmds = experiment_commands();
    if (std::find(cmds.begin(), cmds.end(), command) == cmds.end()) config_error("unknown command '" + command + "'");
    if (seeds < 1 || steps < 1 || samples < 1 || N < 1 || k < 1) config_error("numeric budgets must be positive");
    if (!(L > 0)) config_error("radius L must be positive");
    if (jobs < 0) config_error("jobs must be non-negative");
    if (precision_bits < 30) config_error("precision_bits must be at least 30");
    if (backend != "exact" && backend != "float") config_error("backend must be exact or float");
    for (const auto& [key, value] : tolerances)
        if (!(value > 0)) config_error("tolerance " + key + " must be positive");
}

json config_to_json(const ExperimentConfig& c)
{
    return json{{"command", c.command}, {"stratum", c.stratum},       {"component", c.component},
                {"seed", c.seed},       {"seeds", c.seeds},           {"steps", c.steps},
                {"L", c.L},             {"k", c.k},                   {"samples", c.samples},
                {"N", c.N},             {"log_n_max", c.log_n_max},   {"precision_bits", c.precision_bits},
                {"backend", c.backend}, {"input", c.input},           {"output", c.output},
                {"csv", c.csv},         {"vectors", c.vectors},       {"perm", c.perm},
                {"lengths", c.lengths}, {"x0", c.x0},                 {"jobs", c.jobs},
                {"tolerances", c.tolerances}};
}

ExperimentConfig config_from_json(const json& j)
{
    if (!j.is_object()) config_error("configuration must be a JSON object");
    ExperimentConfig c;
    read(j, "command", c.command);
    read(j, "stratum", c.stratum);
    read(j, "component", c.component);
    read(j, "seed", c.seed);
    read(j, "seeds", c.seeds);
    read(j, "steps", c.steps);
    read(j, "L", c.L);
    read(j, "k", c.k);
    read(j, "samples", c.samples);
    read(j, "N", c.N);
    read(j, "log_n_max", c.log_n_max);
    read(j, "precision_bits", c.precision_bits);
    read(j, "backend", c.backend);
    read(j, "input", c.input);
    read(j, "output", c.output);
    read(j, "csv", c.csv);
    read(j, "vectors", c.vectors);
    read(j, "perm", c.perm);
    read(j, "lengths", c.lengths);
    read(j, "x0", c.x0);
    read(j, "jobs", c.jobs);
    read(j, "tolerances", c.tolerances);
    if (j.size() != config_to_json(c).size()) config_error("configuration has unknown fields");
    c.validate();
    return c;
}

json record_to_json(const ResultRecord& r)
{
    json j{{"schema_version", r.schema_version}, {"experiment_id", r.experiment_id},
           {"inputs_digest", r.inputs_digest},   {"software_version", r.software_version},
           {"config", r.config},                 {"metrics", r.metrics},
           {"wall_time", r.wall_time}};
    if (!r.artifact.is_null()) j["artifact"] = r.artifact;
    return j;
}

ResultRecord record_from_json(const json& j)
{
    if (!j.is_object()) config_error("record must be a JSON object");
    ResultRecord r;
    read(j, "schema_version", r.schema_version);
    if (r.schema_version != kSchemaVersion)
        config_error("unsupported schema_version " + std::to_string(r.schema_version));
    read(j, "experiment_id", r.experiment_id);
    read(j, "inputs_digest", r.inputs_digest);
    read(j, "software_version", r.software_version);
    read(j, "wall_time", r.wall_time);
    if (!j.contains("config") || !j.contains("metrics")) config_error("record lacks config or metrics");
    r.config = j.at("config");
    r.metrics = j.at("metrics");
    if (j.contains("artifact")) r.artifact = j.at("artifact");
    config_from_json(r.config);
    return r;
}

}  // namespace flatlab
