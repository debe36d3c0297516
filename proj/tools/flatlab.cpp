#include "flatlab/errors.hpp"
#include "flatlab/experiment.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace flatlab;
using nlohmann::json;

namespace {

struct Args {
    ExperimentConfig cfg;
    double steps = 1000, N = 100000;
    std::vector<std::string> tol;
};

void add_options(CLI::App* sub, Args& a)
{
    ExperimentConfig& c = a.cfg;
    sub->add_option("--stratum", c.stratum, "zero degrees, e.g. 1,1");
    sub->add_option("--component", c.component, "hyperelliptic, even, odd or nonhyperelliptic");
    sub->add_option("--seed", c.seed, "root seed");
    sub->add_option("--seeds", c.seeds, "independent runs");
    sub->add_option("--steps", a.steps, "induction or cocycle steps");
    sub->add_option("--L", c.L, "counting radius");
    sub->add_option("--k", c.k, "cylinders per family");
    sub->add_option("--samples", c.samples, "random surfaces");
    sub->add_option("--N", a.N, "orbit length or deviation N_max");
    sub->add_option("--log-n-max", c.log_n_max, "deviation depth in log N");
    sub->add_option("--precision-bits", c.precision_bits, "bits of sampled coordinates");
    sub->add_option("--backend", c.backend, "exact or float");
    sub->add_option("--in", c.input, "surface JSON");
    sub->add_option("--out", c.output, "write the result record here");
    sub->add_option("--csv", c.csv, "write the table here");
    sub->add_option("--vectors", c.vectors, "polygon sides x,y;x,y;...");
    sub->add_option("--perm", c.perm, "permutation 'top/bottom' or gluing order");
    sub->add_option("--lengths", c.lengths, "interval lengths");
    sub->add_option("--x0", c.x0, "orbit start");
    sub->add_option("--jobs", c.jobs, "worker threads (default FLATLAB_JOBS)");
    sub->add_option("--tol", a.tol, "tolerance override key=value");
}

void finish_config(Args& a, const std::string& command)
{
    a.cfg.command = command;
    if (!(a.steps >= 1 && a.steps < 9e18) || !(a.N >= 1 && a.N < 9e18))
        throw Error(ErrorCode::ConfigError, "cli", "steps and N must be positive integers");
    a.cfg.steps = static_cast<long>(a.steps);
    a.cfg.N = static_cast<long>(a.N);
    for (const std::string& t : a.tol) {
        auto eq = t.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::ConfigError, "cli", "tolerance needs key=value: " + t);
        try {
            a.cfg.tolerances[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
            throw Error(ErrorCode::ConfigError, "cli", "bad tolerance value: " + t);
        }
    }
}

int report_error(const std::string& qualified, const std::string& message, int code)
{
    std::cerr << json{{"error", qualified}, {"message", message}, {"exit_code", code}}.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Experiments on translation surfaces"};
    app.require_subcommand(1);
    Args args;
    std::string command;
    std::map<CLI::App*, std::string> leaves;

    const std::vector<std::pair<std::string, std::vector<std::string>>> groups = {
        {"surface", {"build", "sample", "info"}},  {"iet", {"induce", "orbit"}},
        {"homology", {"cycles", "asymptotic"}},    {"lyapunov", {"run", "deviation"}},
        {"count", {"sc", "cyl", "sv", "groups"}},
    };
    for (const auto& [name, subs] : groups) {
        CLI::App* g = app.add_subcommand(name, name + " experiments");
        g->require_subcommand(1);
        for (const std::string& s : subs) {
            CLI::App* leaf = g->add_subcommand(s);
            add_options(leaf, args);
            leaves[leaf] = name + " " + s;
        }
    }
    CLI::App* classify = app.add_subcommand("classify", "stratum, spin, hyperellipticity and component");
    add_options(classify, args);
    leaves[classify] = "classify";

    std::string record_path;
    std::optional<std::uint64_t> new_seed;
    CLI::App* replay_cmd = app.add_subcommand("replay", "run a recorded experiment again");
    replay_cmd->add_option("--record", record_path, "result record JSON")->required();
    replay_cmd->add_option("--seed", new_seed, "override the recorded seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return report_error("cli.ConfigError", e.what(), exit_code(ErrorCode::ConfigError));
    }

    try {
        ResultRecord result;
        if (replay_cmd->parsed()) {
            std::ifstream in(record_path);
            if (!in) throw Error(ErrorCode::ConfigError, "cli", "cannot read " + record_path);
            json j;
            try {
                j = json::parse(in);
            } catch (const json::exception& e) {
                throw Error(ErrorCode::ConfigError, "cli", std::string("record is not JSON: ") + e.what());
            }
            ResultRecord rec = record_from_json(j);
            if (new_seed) rec.config["seed"] = *new_seed;
            std::string warning;
            result = replay(rec, &warning);
            if (!warning.empty()) std::cerr << json{{"warning", warning}}.dump() << "\n";
        } else {
            for (const auto& [leaf, name] : leaves)
                if (leaf->parsed()) command = name;
            finish_config(args, command);
            result = run(args.cfg);
        }
        std::cout << record_to_json(result).dump(2) << "\n";
        return 0;
    } catch (const Error& e) {
        return report_error(e.qualified(), e.what(), exit_code(e.code()));
    } catch (const std::exception& e) {
        return report_error("cli.InternalError", e.what(), 3);
    }
}
