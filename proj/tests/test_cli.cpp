#include "doctest.h"

#include "flatlab/errors.hpp"
#include "flatlab/experiment.hpp"
#include "flatlab/sampling.hpp"
#include "flatlab/serialize.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace flatlab;
using nlohmann::json;

namespace {

ExperimentConfig config(const std::string& command)
{
    ExperimentConfig c;
    c.command = command;
    c.stratum = "2";
    return c;
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("flatlab_test_" + name)).string();
}

int shell(const std::string& args)
{
    const std::string cmd = std::string(FLATLAB_BIN) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InvalidSurface;   // marker: nothing thrown
}

}  // namespace

TEST_CASE("configuration round-trips through JSON")
{
    ExperimentConfig c = config("count sv");
    c.k = 2;
    c.L = 12.5;
    c.tolerances["budget"] = 1e7;
    ExperimentConfig back = config_from_json(config_to_json(c));
    CHECK(config_to_json(back) == config_to_json(c));
}

TEST_CASE("invalid configurations are rejected")
{
    ExperimentConfig c = config("count sv");
    c.samples = 0;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
    c = config("no such command");
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::ConfigError);
    c = config("classify");
    c.backend = "fast";
    CHECK(code_of([&] { run(c); }) == ErrorCode::ConfigError);
    json j = config_to_json(config("classify"));
    j["extra"] = 1;
    CHECK(code_of([&] { config_from_json(j); }) == ErrorCode::ConfigError);
}

TEST_CASE("classify the torus")
{
    const std::string path = temp_path("torus.json");
    save_surface(sample_random(Stratum::parse("0"), 3), path);
    ExperimentConfig c = config("classify");
    c.stratum.clear();
    c.input = path;
    json m = run(c).metrics;
    CHECK(m["stratum"] == json::array({0}));
    CHECK(m["component"] == "connected");
    CHECK(m["genus"] == 1);
}

TEST_CASE("records replay to identical metrics")
{
    ExperimentConfig c = config("lyapunov run");
    c.steps = 20000;
    c.seeds = 3;
    ResultRecord r = run(c);
    CHECK(r.schema_version == kSchemaVersion);
    CHECK(r.metrics["nu"].size() == 2);
    CHECK(r.metrics["nu"][0] == 1.0);
    ResultRecord again = replay(record_from_json(record_to_json(r)));
    CHECK(again.metrics.dump() == r.metrics.dump());
    CHECK(again.inputs_digest == r.inputs_digest);

    ResultRecord changed = r;
    changed.config["seed"] = 99;
    ResultRecord other = replay(changed);
    CHECK(other.metrics.dump() != r.metrics.dump());
    CHECK(other.metrics.size() == r.metrics.size());
}

TEST_CASE("version mismatch warns and still runs")
{
    ExperimentConfig c = config("surface sample");
    ResultRecord r = run(c);
    r.software_version = "flatlab 0.0.1";
    std::string warning;
    ResultRecord again = replay(r, &warning);
    CHECK(warning.find("VersionMismatch") != std::string::npos);
    CHECK(again.metrics == r.metrics);
}

TEST_CASE("corrupted records raise ConfigError")
{
    json j = record_to_json(run(config("surface sample")));
    json a = j;
    a.erase("metrics");
    CHECK(code_of([&] { record_from_json(a); }) == ErrorCode::ConfigError);
    json b = j;
    b["config"]["steps"] = "many";
    CHECK(code_of([&] { record_from_json(b); }) == ErrorCode::ConfigError);
    json d = j;
    d["schema_version"] = 42;
    CHECK(code_of([&] { record_from_json(d); }) == ErrorCode::ConfigError);
}

TEST_CASE("surface build matches the torus")
{
    ExperimentConfig c = config("surface build");
    c.vectors = "1,0;0,1";
    c.perm = "1 0";
    ResultRecord r = run(c);
    CHECK(r.metrics["genus"] == 1);
    CHECK(r.metrics["area"] == "1");
    CHECK(surface_from_json(r.artifact).stratum() == Stratum::parse("0"));
}

TEST_CASE("iet induction metrics are deterministic")
{
    ExperimentConfig c = config("iet induce");
    c.perm = "0 1 2 3/3 2 1 0";
    c.lengths = "1/3 1/5 2/7 3/11";
    c.steps = 30;
    json m = run(c).metrics;
    CHECK(m["steps"] == 30);
    CHECK(m["top_steps"].get<int>() + m["bottom_steps"].get<int>() == 30);
    CHECK(run(c).metrics == m);
}

TEST_CASE("command line exit codes")
{
    CHECK(shell("surface sample --stratum 2 --seed 1") == 0);
    CHECK(shell("count sc --stratum 2 --L 0") == 2);
    CHECK(shell("count sc --stratum 2 --L 3 --backend float") == 4);
    CHECK(shell("surface sample --stratum 1") == 2);
    CHECK(shell("no-such-command") == 2);
    const std::string bad = temp_path("bad_record.json");
    std::ofstream(bad) << "{ not json";
    CHECK(shell("replay --record " + bad) == 2);
    CHECK(shell("lyapunov run --stratum 2 --steps 2000 --tol max_std_error=1e-12") == 3);
}
