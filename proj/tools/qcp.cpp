// Command-line front end: `qcp sweep|spectrum|montecarlo [options]`.
//
// Settings come from an optional flat key=value config file; command-line
// flags override file entries.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qcp/cli/config.hpp"
#include "qcp/cli/experiments.hpp"

namespace {

struct Overrides {
    std::string config;
    std::string out;
    std::string format;
    std::string seed;
    std::string threads;
    std::string n;
    std::string c2;
    std::string trials;
    std::string strategy;
    std::string dump;
    std::vector<std::string> set;
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "Flat key=value config file");
    cmd->add_option("--out", o.out, "Output path (default: stdout)");
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "jsonl"}));
    cmd->add_option("--seed", o.seed, "Base seed (unsigned 64-bit)");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = OpenMP default)");
    cmd->add_option("--n", o.n, "Sequence length(s), comma separated");
    cmd->add_option("--c2", o.c2, "Squared overlap(s) c^2, comma separated");
    cmd->add_option("--set", o.set, "Extra key=value override (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum change point: collective and online identification probabilities"};
    app.require_subcommand(1);

    Overrides o;
    CLI::App* sweep = app.add_subcommand("sweep", "Bounds, SRM, fixed-point optimum and online strategies over a grid");
    CLI::App* spectrum = app.add_subcommand("spectrum", "Gram spectrum and sqrt(G) diagonal deviations for one (n, c^2)");
    CLI::App* montecarlo = app.add_subcommand("montecarlo", "Monte Carlo estimates for the online strategies");
    for (CLI::App* cmd : {sweep, spectrum, montecarlo}) add_common_flags(cmd, o);
    sweep->add_option("--trials", o.trials, "Greedy Monte Carlo trials per grid point (0 = skip)");
    montecarlo->add_option("--trials", o.trials, "Monte Carlo trials");
    montecarlo->add_option("--strategy", o.strategy, "basic, greedy, or a comma list");
    montecarlo->add_option("--dump", o.dump, "JSON-lines file receiving every trial record");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int status = app.exit(e);
        return status == 0 ? 0 : 2;
    }

    const CLI::App* chosen = app.get_subcommands().front();
    qcp::cli::KeyValues kv;
    try {
        if (!o.config.empty()) kv = qcp::cli::load_config_file(o.config);
        const std::pair<const char*, const std::string*> flags[] = {
            {"out", &o.out},         {"format", &o.format}, {"seed", &o.seed},         {"threads", &o.threads},
            {"n", &o.n},             {"c2", &o.c2},         {"trials", &o.trials},     {"strategy", &o.strategy},
            {"dump", &o.dump}};
        for (const auto& [key, value] : flags) {
            if (value->empty()) continue;
            if (std::string(key) == "c2") {
                kv.erase("c2_start");
                kv.erase("c2_stop");
                kv.erase("c2_count");
            }
            kv[key] = *value;
        }
        for (const std::string& item : o.set) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw qcp::cli::ConfigError("--set expects key=value, got '" + item + "'");
            }
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    } catch (const qcp::cli::ConfigError& e) {
        std::cerr << "error: invalid configuration: " << e.what() << '\n';
        return 2;
    }

    return qcp::cli::run_subcommand(chosen->get_name(), kv, std::cout, std::cerr);
}
