// Named experiments reproducing the protocol results as machine-readable
// reports: configuration parsing, the experiment registry, and CSV/JSON
// writers. Every run is deterministic for a fixed config and seed.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qtel/reversal.hpp"
#include "qtel/rng.hpp"

namespace qtel {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ThetaGrid {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;  // >= 1; steps == 1 evaluates start only

    std::vector<double> points() const;
};

struct OutputSpec {
    enum class Format { csv, json };
    Format format = Format::csv;
    std::string path;  // empty = stdout
};

struct ExperimentConfig {
    std::string experiment;
    std::optional<ResourceSpec> resource;  // phi input is mapped to its spectrum
    std::optional<double> phi;             // set when the resource was given as phi
    std::optional<ThetaGrid> theta;
    OutputSpec output;
    std::uint64_t seed = 1;
};

/// Parses the JSON config document. q and phi are mutually exclusive; all
/// ResourceSpec constraints are enforced here. Throws ConfigError.
ExperimentConfig config_from_json(const std::string& text);

/// One result row. Audit rows record a comparison without gating the run;
/// assert rows decide the exit status.
struct ReportRow {
    std::vector<std::pair<std::string, double>> params;  // ordered tuple
    std::string check;
    bool audit = false;
    double numerical = 0.0;
    double closed_form = 0.0;
    double discrepancy = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ExperimentResult {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;
    bool all_pass = true;  // over assert rows
};

struct ExperimentInfo {
    std::string name;
    std::string description;
};

/// The registered experiments, in listing order.
const std::vector<ExperimentInfo>& experiment_registry();

/// Runs one experiment. The config's experiment name must be registered.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Floats are printed with 17 significant digits; rows keep their order.
void write_csv(std::ostream& os, const ExperimentResult& result);
void write_json(std::ostream& os, const ExperimentResult& result);

}  // namespace qtel
