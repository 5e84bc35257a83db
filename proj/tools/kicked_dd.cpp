// kicked_dd.cpp — Command-line front end: `kicked_dd run <config> -o <out.tsv>`

#include "kicked/cli.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Floquet-Lindblad dynamics of periodically kicked open systems"};
    app.require_subcommand(1);

    std::string config;
    std::string output = "-";
    CLI::App* run = app.add_subcommand("run", "Run the scenario described by a config file");
    run->add_option("config", config, "Scenario config (key = value sections)")->required();
    run->add_option("-o,--output", output, "Output table path, '-' for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kicked::cli::kConfigError;
    }
    return kicked::cli::run_main(config, output, std::cerr);
}
