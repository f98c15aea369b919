// Batch front door: `qtel run` executes a named experiment and writes a
// machine-readable report; `qtel list` shows the registry.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qtel/experiments.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_config_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw qtel::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_command(const std::string& config_path, const std::string& experiment,
                const std::string& out_path, const std::string& format, bool seed_given,
                std::uint64_t seed) {
    qtel::ExperimentConfig cfg;
    if (!config_path.empty()) {
        cfg = qtel::config_from_json(read_config_text(config_path));
    }
    if (!experiment.empty()) cfg.experiment = experiment;
    if (cfg.experiment.empty()) {
        throw qtel::ConfigError("no experiment selected (use --experiment or a config file)");
    }
    if (!out_path.empty()) cfg.output.path = out_path;
    if (!format.empty()) {
        if (format == "csv") {
            cfg.output.format = qtel::OutputSpec::Format::csv;
        } else if (format == "json") {
            cfg.output.format = qtel::OutputSpec::Format::json;
        } else {
            throw qtel::ConfigError("--format must be csv or json");
        }
    }
    if (seed_given) cfg.seed = seed;

    const qtel::ExperimentResult result = qtel::run_experiment(cfg);

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.output.path.empty()) {
        file.open(cfg.output.path);
        if (!file) throw qtel::ConfigError("cannot write output file '" + cfg.output.path + "'");
        os = &file;
    }
    if (cfg.output.format == qtel::OutputSpec::Format::csv) {
        qtel::write_csv(*os, result);
    } else {
        qtel::write_json(*os, result);
    }
    os->flush();
    if (!*os) throw std::runtime_error("failed writing report");

    if (!result.all_pass) {
        std::cerr << "qtel: verification failure in experiment '" << result.experiment << "'\n";
        return kExitVerificationFailure;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact simulator for qubit-pair teleportation channels"};
    app.require_subcommand(1);

    std::string config_path, experiment, out_path, format;
    std::uint64_t seed = 1;

    CLI::App* run = app.add_subcommand("run", "run a named experiment and write its report");
    run->add_option("--config", config_path, "JSON config file path ('-' for stdin)");
    run->add_option("--experiment", experiment, "experiment name (see 'list')");
    run->add_option("--out", out_path, "output file path (default stdout)");
    run->add_option("--format", format, "csv or json");
    CLI::Option* seed_opt = run->add_option("--seed", seed, "seed for randomized checks");

    CLI::App* list = app.add_subcommand("list", "list the registered experiments");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (list->parsed()) {
            for (const auto& info : qtel::experiment_registry()) {
                std::cout << info.name << "  " << info.description << '\n';
            }
            return kExitOk;
        }
        return run_command(config_path, experiment, out_path, format, seed_opt->count() > 0,
                           seed);
    } catch (const qtel::ConfigError& e) {
        std::cerr << "qtel: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "qtel: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
