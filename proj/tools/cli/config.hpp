#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "graphnls/dynamics.hpp"
#include "graphnls/minimizer.hpp"
#include "graphnls/params.hpp"

namespace graphnls::cli {

/// How a starting state is produced: `vertex_gaussian:w`, `edge_bump:e,c,w`,
/// `flat:extent`, `analytic:j` or `file:path`.
struct SeedSpec {
    enum class Kind { vertex_gaussian, edge_bump, flat, analytic, file };
    Kind kind = Kind::vertex_gaussian;
    std::vector<double> args{1.0};
    std::filesystem::path path;
    std::string text = "vertex_gaussian:1";
};

/// Throws UsageError on malformed specs.
SeedSpec parse_seed(const std::string& text);

/// Raised for malformed command lines and configuration files (exit status 1).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Settings = std::map<std::string, std::string>;

/// Flat `key=value` file. Blank lines and lines starting with '#' are
/// skipped; dashes in keys are read as underscores.
Settings read_config_file(const std::filesystem::path& path);

/// Every key the toolkit understands, with its default ("" = no default).
const std::map<std::string, std::string>& default_settings();

/// Fully resolved configuration of one run.
struct RunConfig {
    std::string command;
    ProblemParams params;
    double edge_length = 40.0;
    int cells = 4000;
    FlowConfig flow;
    EvolveConfig evolve;
    SeedSpec seed;
    SeedSpec state;
    double delta = 0.01;
    Perturbation perturbation = Perturbation::edge_bump;
    bool contrast = false;
    std::filesystem::path input;
    std::filesystem::path out;
    unsigned long long rng_seed = 0;
    std::string sweep_command;
    std::string sweep_param;
    std::vector<std::string> sweep_values;
    int workers = 1;

    /// Effective key=value view of the run (what goes into the manifest).
    Settings resolved;

    Grid grid() const { return Grid(edge_length, cells); }
};

/// defaults < file < command line. The output directory falls back to
/// $GRAPHNLS_OUT before the built-in default. Throws UsageError.
RunConfig resolve(const std::string& command, const Settings& file, const Settings& flags);

}  // namespace graphnls::cli
