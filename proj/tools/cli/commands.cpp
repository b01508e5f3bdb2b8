#include "commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "graphnls/analytic.hpp"
#include "graphnls/functionals.hpp"
#include "graphnls/io.hpp"
#include "graphnls/profiles.hpp"
#include "graphnls/rearrangement.hpp"
#include "json.hpp"

namespace graphnls::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::mutex console;

void say(const std::string& line) {
    std::lock_guard lock(console);
    std::cout << line << '\n';
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path);
    if (!os) {
        throw Error(ErrorCode::io, "cannot write " + path.string());
    }
    return os;
}

void write_json(const fs::path& path, const json& j) { open_output(path) << j.dump(2) << '\n'; }

json params_json(const ProblemParams& p) {
    return {{"n_edges", p.n_edges}, {"mu", p.mu}, {"alpha", p.alpha}, {"mass", p.mass}};
}

void write_manifest(const RunConfig& c) {
    json settings = json::object();
    for (const auto& [k, v] : c.resolved) {
        settings[k] = v;
    }
    write_json(c.out / "manifest.json", {{"tool", "graphnls"},
                                         {"version", version},
                                         {"command", c.command},
                                         {"params", params_json(c.params)},
                                         {"grid", {{"edge_length", c.edge_length}, {"cells", c.cells}}},
                                         {"rng_seed", c.rng_seed},
                                         {"settings", settings}});
}

void write_error(const RunConfig& c, const std::string& tag, const std::string& message, int code, double bound) {
    json j{{"error", tag}, {"message", message}, {"exit_code", code}};
    if (bound != 0.0) {
        j["bound"] = bound;
    }
    try {
        write_json(c.out / "error.json", j);
    } catch (const Error&) {
        // the directory itself is unusable; stderr carries the message
    }
}

/// Starting state from a seed spec. Generated profiles are scaled to the
/// target mass; analytic and file states are used as they are.
GraphFunction make_state(const SeedSpec& spec, const RunConfig& c) {
    const Grid grid = c.grid();
    const int n = c.params.n_edges;
    GraphFunction f(grid, n);
    switch (spec.kind) {
    case SeedSpec::Kind::vertex_gaussian:
        f = profiles::vertex_gaussian(grid, n, spec.args[0]);
        break;
    case SeedSpec::Kind::edge_bump: {
        const int edge = static_cast<int>(spec.args[0]);
        if (edge < 1 || edge > n || edge != spec.args[0]) {
            throw UsageError("edge_bump edge must be an integer in 1.." + std::to_string(n));
        }
        f = profiles::edge_bump(grid, n, edge, spec.args[1], spec.args[2]);
        break;
    }
    case SeedSpec::Kind::flat:
        f = profiles::flat(grid, n, spec.args[0]);
        break;
    case SeedSpec::Kind::analytic:
        return analytic::stationary_state(c.params, static_cast<int>(spec.args[0]), grid);
    case SeedSpec::Kind::file: {
        auto loaded = read_graph_function(spec.path);
        if (loaded.n_edges() != n || !(loaded.grid() == grid)) {
            throw Error(ErrorCode::grid_mismatch, "state in " + spec.path.string() +
                                                      " does not match --n-edges/--edge-length/--cells");
        }
        return loaded;
    }
    }
    const double m = mass(f);
    if (!(m > 0.0)) {
        throw UsageError("seed '" + spec.text + "' is identically zero on this grid");
    }
    f *= std::sqrt(c.params.mass / m);
    return f;
}

std::string edge_header(const char* prefix, int n) {
    std::string h;
    for (int j = 1; j <= n; ++j) {
        h += std::string(",") + prefix + std::to_string(j);
    }
    return h;
}

void cmd_spectrum(const RunConfig& c) {
    const auto& p = c.params;
    if (p.mu == 2.0 && p.alpha < 0.0) {
        const double sup = analytic::min_mass(p, 0).sup;
        if (!(p.mass < sup)) {
            throw Error(ErrorCode::inadmissible_mass, "mass exceeds the supremum of every mass range at mu = 2", sup);
        }
    }
    const auto entries = analytic::spectrum(p);
    const auto verdict = analytic::check_ordering(p, entries);

    auto csv = open_output(c.out / "spectrum.csv");
    csv << "j,omega,energy,min_mass,admissible\n";
    json list = json::array();
    for (const auto& e : entries) {
        csv << e.bumps << ',' << format_real(e.frequency) << ',' << format_real(e.energy) << ','
            << format_real(e.min_mass) << ',' << (e.admissible ? 1 : 0) << '\n';
        list.push_back({{"j", e.bumps},
                        {"omega", number(e.frequency)},
                        {"energy", number(e.energy)},
                        {"min_mass", e.min_mass},
                        {"max_mass", number(e.max_mass)},
                        {"admissible", e.admissible}});
    }
    json m_star = nullptr;
    if (p.alpha < 0.0) {
        m_star = analytic::critical_mass(p);
    }
    write_json(c.out / "spectrum.json",
               {{"params", params_json(p)},
                {"m_star", m_star},
                {"entries", list},
                {"ordering",
                 {{"expected_frequency_order", analytic::expected_frequency_order(p.mu)},
                  {"frequency_order", verdict.frequency_order},
                  {"energy_order", verdict.energy_order},
                  {"admissible_pairs", verdict.admissible_pairs}}}});
    int admissible = 0;
    for (const auto& e : entries) {
        admissible += e.admissible ? 1 : 0;
    }
    say("spectrum: " + std::to_string(admissible) + " admissible of " + std::to_string(entries.size()) +
        " families, output in " + c.out.string());
}

void cmd_groundstate(const RunConfig& c) {
    const auto& p = c.params;
    const Grid grid = c.grid();
    const auto result = minimize(p, grid, c.flow, make_state(c.seed, c));

    auto csv = open_output(c.out / "trail.csv");
    csv << "iter,energy,vertex_abs,rho_probe" << edge_header("edge_mass_", p.n_edges) << ",boundary_frac\n";
    for (const auto& s : result.trail) {
        csv << s.iter << ',' << format_real(s.energy) << ',' << format_real(s.vertex_abs) << ','
            << format_real(s.rho);
        for (double f : s.edge_fraction) {
            csv << ',' << format_real(f * p.mass);
        }
        csv << ',' << format_real(s.boundary_frac) << '\n';
    }
    csv.close();
    write_graph_function(c.out / "state.csv", result.state);

    json gap = nullptr;
    if (result.classification.kind == Classification::Kind::convergent && p.alpha < 0.0 &&
        analytic::admissible(p, 0)) {
        gap = compare_to_ntail(result, p, grid).l2_gap;
    }
    json summary{{"classification", result.classification.to_string()},
                 {"energy", result.energy},
                 {"omega_recovered", result.omega},
                 {"l2_gap_to_ntail", gap},
                 {"iterations", result.iterations},
                 {"status", to_string(result.status)},
                 {"residual", result.residual},
                 {"final_step", result.step}};
    if (p.alpha == 0.0 && p.mu < 2.0) {
        summary["kirchhoff_lower_bound"] = analytic::kirchhoff_lower_bound(p);
    }
    write_json(c.out / "groundstate.json", summary);
    say("groundstate: " + result.classification.to_string() + ", energy " + format_real(result.energy) + " after " +
        std::to_string(result.iterations) + " iterations");
}

void write_diagnostics(const fs::path& path, const EvolveResult& r, int n_edges) {
    auto csv = open_output(path);
    csv << "t,mass,energy,vertex_abs,orbdist" << edge_header("edge_mass_", n_edges) << '\n';
    for (const auto& d : r.diagnostics) {
        csv << format_real(d.t) << ',' << format_real(d.mass) << ',' << format_real(d.energy) << ','
            << format_real(d.vertex_abs) << ',' << format_real(d.orbdist);
        for (double m : d.edge_mass) {
            csv << ',' << format_real(m);
        }
        csv << '\n';
    }
}

json run_summary(const EvolveResult& r) {
    const auto& first = r.diagnostics.front();
    double mass_drift = 0.0, energy_drift = 0.0, orb = 0.0;
    for (const auto& d : r.diagnostics) {
        mass_drift = std::max(mass_drift, std::abs(d.mass - first.mass) / first.mass);
        energy_drift = std::max(energy_drift, std::abs(d.energy - first.energy));
        if (std::isfinite(d.orbdist)) {
            orb = std::max(orb, d.orbdist);
        }
    }
    json j{{"steps", r.steps},
           {"t_end", r.diagnostics.back().t},
           {"mass_drift_rel", mass_drift},
           {"energy_drift", energy_drift},
           {"max_orbdist", orb},
           {"boundary_abort", r.boundary_abort},
           {"critical", r.critical}};
    if (!r.warning.empty()) {
        j["warning"] = r.warning;
    }
    return j;
}

void cmd_evolve(const RunConfig& c) {
    const auto psi0 = make_state(c.state, c);
    write_graph_function(c.out / "initial_state.csv", psi0);
    const auto r = evolve(psi0, c.params, c.evolve, &psi0);
    write_diagnostics(c.out / "diagnostics.csv", r, c.params.n_edges);
    write_graph_function(c.out / "final_state.csv", r.state);
    write_json(c.out / "evolve.json", run_summary(r));
    if (!r.warning.empty()) {
        say("evolve: warning: " + r.warning);
    }
    if (r.critical) {
        say("evolve: mu = 2 is the critical power; global existence is not guaranteed");
    }
    say("evolve: " + std::to_string(r.steps) + " steps, output in " + c.out.string());
}

void cmd_stability(const RunConfig& c) {
    StabilityConfig s;
    s.delta = c.delta;
    s.t_final = c.evolve.t_final;
    s.dt = c.evolve.dt;
    s.diagnostics_every = c.evolve.diagnostics_every;
    s.perturbation = c.perturbation;
    s.rng_seed = c.rng_seed;
    s.contrast = c.contrast;
    const auto report = stability_experiment(c.params, c.grid(), s);
    write_diagnostics(c.out / "diagnostics.csv", report.run, c.params.n_edges);
    write_graph_function(c.out / "final_state.csv", report.run.state);
    json j = run_summary(report.run);
    j["omega"] = report.omega;
    j["delta"] = c.delta;
    j["sup_distance"] = report.sup_distance;
    j["ratio"] = number(report.ratio);
    j["initial_distance"] = report.initial_distance;
    j["first_quarter_mean"] = report.first_quarter_mean;
    j["final_quarter_mean"] = report.final_quarter_mean;
    write_json(c.out / "stability.json", j);
    say("stability: sup orbital distance " + format_real(report.sup_distance) + " for delta " + format_real(c.delta));
}

void cmd_rearrange(const RunConfig& c) {
    GraphFunction psi = c.input.empty() ? make_state(c.seed, c) : read_graph_function(c.input);
    const auto star = rearrange(psi);
    write_graph_function(c.out / "rearranged.csv", star);
    json norms = json::object();
    for (const auto& [name, p] : {std::pair{"2", 2.0}, std::pair{"4", 4.0},
                                  std::pair{"inf", std::numeric_limits<double>::infinity()}}) {
        norms[name] = {{"input", cell_norm(psi, p)}, {"rearranged", cell_norm(star, p)}};
    }
    const double k_in = kinetic_form(psi);
    const double ratio = k_in > 0.0 ? std::sqrt(kinetic_form(star) / k_in) : 0.0;
    write_json(c.out / "rearrange.json", {{"n_edges", psi.n_edges()},
                                          {"cell_norms", norms},
                                          {"derivative_ratio", ratio},
                                          {"polya_szego_constant", 0.5 * psi.n_edges()}});
    say("rearrange: derivative ratio " + format_real(ratio) + " (bound " + format_real(0.5 * psi.n_edges()) + ")");
}

int run_sweep(const RunConfig& c, const Settings& file, const Settings& flags) {
    if (c.sweep_param.empty() || c.sweep_values.empty()) {
        throw UsageError("sweep needs --sweep-param and --sweep-values");
    }
    if (c.sweep_command == "sweep" || !default_settings().count(c.sweep_param)) {
        throw UsageError("bad sweep command or parameter");
    }
    std::vector<RunConfig> points;
    for (const auto& v : c.sweep_values) {
        Settings f = flags;
        f[c.sweep_param] = v;
        f["out"] = (c.out / (c.sweep_param + "=" + v)).string();
        points.push_back(resolve(c.sweep_command, file, f));
    }
    std::vector<int> codes(points.size(), 0);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < points.size(); i = next++) {
            codes[i] = execute(points[i]);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n_workers = std::min<std::size_t>(static_cast<std::size_t>(c.workers), points.size());
    for (std::size_t w = 0; w < n_workers; ++w) {
        pool.emplace_back(worker);
    }
    for (auto& t : pool) {
        t.join();
    }
    json list = json::array();
    int worst = Exit::ok;
    for (std::size_t i = 0; i < points.size(); ++i) {
        list.push_back({{"value", c.sweep_values[i]}, {"dir", points[i].out.string()}, {"exit_code", codes[i]}});
        worst = std::max(worst, codes[i]);
    }
    write_json(c.out / "sweep.json",
               {{"command", c.sweep_command}, {"param", c.sweep_param}, {"points", list}});
    say("sweep: " + std::to_string(points.size()) + " points, worst exit status " + std::to_string(worst));
    return worst;
}

struct Flag {
    const char* key;
    const char* help;
};

const std::vector<Flag> common_flags{
    {"mu", "nonlinearity power, 0 < mu <= 2"},
    {"alpha", "vertex strength, <= 0"},
    {"n_edges", "number of half-lines N >= 2"},
    {"mass", "target mass m > 0"},
    {"edge_length", "truncation length L of every edge"},
    {"cells", "cells per edge K"},
    {"out", "output directory (default $GRAPHNLS_OUT or graphnls_out)"},
    {"rng_seed", "seed for random perturbations"},
};

const std::vector<Flag> flow_flags{
    {"seed", "vertex_gaussian:w | edge_bump:e,c,w | flat:extent | analytic:j | file:path"},
    {"step", "pseudo-time step"},
    {"max_iters", "iteration cap"},
    {"tol_energy", "relative energy-change tolerance"},
    {"tol_residual", "Euler-Lagrange residual tolerance"},
    {"snapshot_every", "iterations between trail snapshots"},
    {"probe_radius", "concentration probe radius (0 = L/4)"},
};

const std::vector<Flag> time_flags{
    {"dt", "time step"},
    {"t_final", "final time"},
    {"diagnostics_every", "steps between diagnostics rows"},
};

}  // namespace

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::domain:
    case ErrorCode::inadmissible_mass:
    case ErrorCode::no_threshold:
    case ErrorCode::critical_mass_degenerate:
        return Exit::inadmissible;
    case ErrorCode::io:
    case ErrorCode::grid_mismatch:
        return Exit::usage;
    default:
        return Exit::numerical;
    }
}

int execute(const RunConfig& c) {
    try {
        fs::create_directories(c.out);
        write_manifest(c);
    } catch (const std::exception& e) {
        std::cerr << "graphnls: cannot prepare " << c.out << ": " << e.what() << '\n';
        return Exit::usage;
    }
    try {
        c.params.validate();
        if (c.command == "spectrum") {
            cmd_spectrum(c);
        } else if (c.command == "groundstate") {
            cmd_groundstate(c);
        } else if (c.command == "evolve") {
            cmd_evolve(c);
        } else if (c.command == "stability") {
            cmd_stability(c);
        } else if (c.command == "rearrange") {
            cmd_rearrange(c);
        } else {
            throw UsageError("unknown command '" + c.command + "'");
        }
        return Exit::ok;
    } catch (const Error& e) {
        const int code = exit_code_for(e.code());
        write_error(c, std::string(to_string(e.code())), e.what(), code, e.bound());
        std::cerr << "graphnls " << c.command << ": " << to_string(e.code()) << ": " << e.what() << '\n';
        return code;
    } catch (const UsageError& e) {
        write_error(c, "usage", e.what(), Exit::usage, 0.0);
        std::cerr << "graphnls " << c.command << ": " << e.what() << '\n';
        return Exit::usage;
    } catch (const std::exception& e) {
        write_error(c, "internal", e.what(), Exit::numerical, 0.0);
        std::cerr << "graphnls " << c.command << ": " << e.what() << '\n';
        return Exit::numerical;
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Ground states and dynamics of the NLS on a star graph with a delta vertex", "graphnls"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    std::map<std::string, std::string> storage;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;

    auto add = [&](CLI::App* sub, const std::vector<Flag>& flags) {
        for (const auto& f : flags) {
            std::string name = f.key;
            std::replace(name.begin(), name.end(), '_', '-');
            const std::string id = sub->get_name() + "." + f.key;
            options[id] = sub->add_option("--" + name, storage[id], f.help);
        }
    };
    const std::vector<std::pair<const char*, const char*>> commands{
        {"spectrum", "frequencies, energies and ordering of the stationary families"},
        {"groundstate", "constrained minimisation by normalised gradient flow"},
        {"evolve", "time evolution with conservation diagnostics"},
        {"stability", "orbital-stability experiment around the ground state"},
        {"rearrange", "symmetric rearrangement of a state"},
        {"sweep", "run a command over a list of values of one parameter"},
    };
    for (const auto& [name, help] : commands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "key=value configuration file");
        add(sub, common_flags);
        const std::string cmd = name;
        if (cmd == "groundstate" || cmd == "sweep") {
            add(sub, flow_flags);
        }
        if (cmd == "evolve" || cmd == "stability" || cmd == "sweep") {
            add(sub, time_flags);
        }
        if (cmd == "evolve" || cmd == "sweep") {
            add(sub, {{"state", "initial state, same forms as --seed (default analytic:0)"}});
        }
        if (cmd == "stability" || cmd == "sweep") {
            add(sub, {{"delta", "perturbation size"},
                      {"perturbation", "edge_bump | vertex | random"},
                      {"contrast", "allow m >= m* and alpha = 0 (contrast runs)"}});
        }
        if (cmd == "rearrange") {
            add(sub, {{"input", "GraphFunction CSV to rearrange"}, {"seed", "profile used without --input"}});
        }
        if (cmd == "sweep") {
            add(sub, {{"sweep_command", "command run at every point"},
                      {"sweep_param", "setting that varies"},
                      {"sweep_values", "comma-separated values"},
                      {"workers", "worker threads"},
                      {"input", "GraphFunction CSV for rearrange points"}});
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? Exit::ok : Exit::usage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    Settings flags;
    for (const auto& [id, opt] : options) {
        const auto dot = id.find('.');
        if (id.substr(0, dot) == command && opt->count() > 0) {
            flags[id.substr(dot + 1)] = storage[id];
        }
    }
    try {
        const Settings file = config_path.empty() ? Settings{} : read_config_file(config_path);
        const RunConfig config = resolve(command, file, flags);
        if (command != "sweep") {
            return execute(config);
        }
        fs::create_directories(config.out);
        write_manifest(config);
        return run_sweep(config, file, flags);
    } catch (const UsageError& e) {
        std::cerr << "graphnls " << command << ": " << e.what() << '\n';
        return Exit::usage;
    } catch (const std::exception& e) {
        std::cerr << "graphnls " << command << ": " << e.what() << '\n';
        return Exit::usage;
    }
}

}  // namespace graphnls::cli
