#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace graphnls::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        parts.push_back(trim(item));
    }
    return parts;
}

double to_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError("'" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

long long to_integer(const std::string& key, const std::string& text) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError("'" + key + "' expects an integer, got '" + text + "'");
    }
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "1" || text == "true" || text == "yes") {
        return true;
    }
    if (text == "0" || text == "false" || text == "no") {
        return false;
    }
    throw UsageError("'" + key + "' expects true or false, got '" + text + "'");
}

}  // namespace

SeedSpec parse_seed(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    SeedSpec spec;
    spec.text = text;
    spec.args.clear();
    auto numbers = [&](std::size_t count) {
        const auto parts = split(rest, ',');
        if (parts.size() != count) {
            throw UsageError("seed '" + text + "' needs " + std::to_string(count) + " argument(s)");
        }
        for (const auto& p : parts) {
            spec.args.push_back(to_real("seed", p));
        }
    };
    if (name == "vertex_gaussian") {
        spec.kind = SeedSpec::Kind::vertex_gaussian;
        numbers(1);
    } else if (name == "edge_bump") {
        spec.kind = SeedSpec::Kind::edge_bump;
        numbers(3);
    } else if (name == "flat") {
        spec.kind = SeedSpec::Kind::flat;
        numbers(1);
    } else if (name == "analytic") {
        spec.kind = SeedSpec::Kind::analytic;
        numbers(1);
        if (spec.args[0] < 0.0 || spec.args[0] != std::floor(spec.args[0])) {
            throw UsageError("analytic seed needs a bump count j >= 0");
        }
    } else if (name == "file") {
        spec.kind = SeedSpec::Kind::file;
        if (rest.empty()) {
            throw UsageError("file seed needs a path");
        }
        spec.path = rest;
    } else {
        throw UsageError("unknown seed kind '" + name + "'");
    }
    return spec;
}

Settings read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read config file " + path.string());
    }
    Settings s;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (!default_settings().count(key)) {
            throw UsageError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
        s[key] = trim(line.substr(eq + 1));
    }
    return s;
}

const std::map<std::string, std::string>& default_settings() {
    static const std::map<std::string, std::string> defaults{
        {"mu", "1"},
        {"alpha", "-1"},
        {"n_edges", "3"},
        {"mass", "1"},
        {"edge_length", "40"},
        {"cells", "4000"},
        {"out", "graphnls_out"},
        {"rng_seed", "0"},
        {"seed", "vertex_gaussian:1"},
        {"state", "analytic:0"},
        {"step", "0.5"},
        {"max_iters", "20000"},
        {"tol_energy", "1e-10"},
        {"tol_residual", "1e-8"},
        {"snapshot_every", "10"},
        {"probe_radius", "0"},
        {"dt", "1e-3"},
        {"t_final", "10"},
        {"diagnostics_every", "100"},
        {"delta", "0.01"},
        {"perturbation", "edge_bump"},
        {"contrast", "false"},
        {"input", ""},
        {"sweep_command", "spectrum"},
        {"sweep_param", ""},
        {"sweep_values", ""},
        {"workers", "2"},
    };
    return defaults;
}

RunConfig resolve(const std::string& command, const Settings& file, const Settings& flags) {
    Settings s = default_settings();
    if (const char* env = std::getenv("GRAPHNLS_OUT"); env && *env) {
        s["out"] = env;
    }
    for (const auto* layer : {&file, &flags}) {
        for (const auto& [k, v] : *layer) {
            if (!s.count(k)) {
                throw UsageError("unknown setting '" + k + "'");
            }
            s[k] = v;
        }
    }

    RunConfig c;
    c.command = command;
    c.params.mu = to_real("mu", s["mu"]);
    c.params.alpha = to_real("alpha", s["alpha"]);
    c.params.n_edges = static_cast<int>(to_integer("n_edges", s["n_edges"]));
    c.params.mass = to_real("mass", s["mass"]);
    c.edge_length = to_real("edge_length", s["edge_length"]);
    c.cells = static_cast<int>(to_integer("cells", s["cells"]));
    c.out = s["out"];
    c.rng_seed = static_cast<unsigned long long>(to_integer("rng_seed", s["rng_seed"]));
    c.seed = parse_seed(s["seed"]);
    c.state = parse_seed(s["state"]);

    c.flow.step = to_real("step", s["step"]);
    c.flow.max_iters = static_cast<int>(to_integer("max_iters", s["max_iters"]));
    c.flow.tol_energy = to_real("tol_energy", s["tol_energy"]);
    c.flow.tol_residual = to_real("tol_residual", s["tol_residual"]);
    c.flow.snapshot_every = static_cast<int>(to_integer("snapshot_every", s["snapshot_every"]));
    c.flow.classify.probe_radius = to_real("probe_radius", s["probe_radius"]);

    c.evolve.dt = to_real("dt", s["dt"]);
    c.evolve.t_final = to_real("t_final", s["t_final"]);
    c.evolve.diagnostics_every = static_cast<int>(to_integer("diagnostics_every", s["diagnostics_every"]));
    c.delta = to_real("delta", s["delta"]);
    const std::string& pert = s["perturbation"];
    if (pert == "edge_bump") {
        c.perturbation = Perturbation::edge_bump;
    } else if (pert == "vertex") {
        c.perturbation = Perturbation::vertex;
    } else if (pert == "random") {
        c.perturbation = Perturbation::random;
    } else {
        throw UsageError("perturbation must be edge_bump, vertex or random");
    }
    c.contrast = to_bool("contrast", s["contrast"]);
    c.input = s["input"];

    c.sweep_command = s["sweep_command"];
    c.sweep_param = s["sweep_param"];
    if (!s["sweep_values"].empty()) {
        c.sweep_values = split(s["sweep_values"], ',');
    }
    c.workers = static_cast<int>(to_integer("workers", s["workers"]));
    if (c.workers < 1) {
        throw UsageError("workers must be at least 1");
    }
    c.resolved = std::move(s);
    return c;
}

}  // namespace graphnls::cli
