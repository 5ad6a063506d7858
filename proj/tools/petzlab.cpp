#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "petzlab/cli.hpp"

namespace {

int with_output(const std::string& out_path, int (*cmd)(const std::string&, std::ostream&,
                                                        std::ostream&),
                const std::string& config) {
    if (out_path.empty()) return cmd(config, std::cout, std::cerr);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return petzlab::cli::exit_construction_error;
    }
    return cmd(config, file, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Thermalization bounds, recovery maps, and bath probes"};
    app.require_subcommand(1);

    std::string config;
    std::string out_path;
    std::uint64_t seed = 1;

    CLI::App* scan = app.add_subcommand("scan", "entropy production scan, CSV output");
    CLI::App* verify = app.add_subcommand("verify", "residual checks on the configured model");
    CLI::App* bathsim = app.add_subcommand("bathsim", "correlation bound sweep, CSV output");
    for (CLI::App* cmd : {scan, verify, bathsim}) {
        cmd->add_option("--config", config, "model description file")->required();
        cmd->add_option("--out", out_path, "write output here instead of stdout");
        cmd->add_option("--seed", seed, "seed for the randomized checks");
    }

    CLI11_PARSE(app, argc, argv);

    if (scan->parsed()) return with_output(out_path, petzlab::cli::cmd_scan, config);
    if (bathsim->parsed()) return with_output(out_path, petzlab::cli::cmd_bathsim, config);

    if (out_path.empty()) return petzlab::cli::cmd_verify(config, seed, std::cout, std::cerr);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open '" << out_path << "' for writing\n";
        return petzlab::cli::exit_construction_error;
    }
    return petzlab::cli::cmd_verify(config, seed, file, std::cerr);
}
