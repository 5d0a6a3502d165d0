#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "focklab/emit.hpp"
#include "focklab/scenario.hpp"

int main(int argc, char** argv) {
    using namespace focklab::cli;
    CLI::App app{"focklab: scenario runner for small Fock space computations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    RunOptions opts;
    std::string out_dir, seed;
    auto* run_cmd = app.add_subcommand("run", "Execute a scenario config and write its report");
    run_cmd->add_option("config", opts.config, "Scenario JSON file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory");
    run_cmd->add_option("--seed", seed, "Random seed (hexadecimal)");
    run_cmd->add_flag("--quiet", opts.quiet, "Suppress the summary line");

    app.add_subcommand("schema", "Print the config schema");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kSchema;
    }

    if (app.got_subcommand("schema")) {
        std::cout << dump_deterministic(config_schema());
        return kOk;
    }
    if (!out_dir.empty()) opts.out_dir = out_dir;
    if (!seed.empty()) {
        try {
            opts.seed = parse_seed(seed);
        } catch (const std::exception& e) {
            std::cerr << "focklab: schema error: " << e.what() << "\n";
            return kSchema;
        }
    }
    RunResult r = run(opts);
    if (r.exit_code == kSchema || r.exit_code == kInternal)
        std::cerr << r.summary << "\n";
    else if (!opts.quiet)
        std::cout << r.summary << "\n";
    return r.exit_code;
}
