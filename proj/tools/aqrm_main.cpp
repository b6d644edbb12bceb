// aqrm_main.cpp — Command-line front end.
//
// Subcommands: spectrum (1D sweep in g), landscape (2D sweep in g and
// epsilon), juddian (conical-intersection table), berry (geometric phase
// around a rectangular loop). Payload goes to stdout or, with --output,
// to the named file plus a <output>.meta.json sidecar describing the
// run; warnings go to stderr. Exit codes: 0 success, 2 invalid
// arguments, 3 numerical failure, 1 unexpected error.

#include <algorithm>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aqrm/errors.hpp"
#include "aqrm/sweep.hpp"

namespace {

using aqrm::Method;
using ordered_json = nlohmann::ordered_json;

int run_guarded(const std::function<void()>& fn) {
    try {
        fn();
        return 0;
    } catch (const aqrm::ConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const aqrm::DegeneracyError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const aqrm::ProximityError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

void emit(const std::string& payload, const std::string& output, const ordered_json& meta) {
    if (output.empty()) {
        std::cout << payload;
        return;
    }
    aqrm::write_file_atomic(output, payload);
    aqrm::write_file_atomic(output + ".meta.json", meta.dump(2) + "\n");
}

// common options of the two sweep subcommands
struct SweepCli {
    double delta{1.0};
    double omega{1.0};
    std::vector<std::string> methods{"exact"};
    std::string levels{"16"};
    double tol{1e-9};
    int jobs{1};
    std::string format{"csv"};
    std::string output;

    double g_min{0.0};
    double g_max{0.0};
    int g_steps{1};
    double epsilon{0.0};  // spectrum only
    double epsilon_min{0.0};
    double epsilon_max{0.0};
    int epsilon_steps{1};
};

void add_common_sweep_options(CLI::App* cmd, SweepCli& o) {
    cmd->add_option("--delta", o.delta, "Qubit splitting")->capture_default_str();
    cmd->add_option("--omega", o.omega, "Field frequency")->capture_default_str();
    cmd->add_option("--method", o.methods,
                    "Spectrum method: exact, aa, gaa, gaa-kbar (repeatable)")
        ->capture_default_str()
        ->delimiter(',');
    cmd->add_option("--levels", o.levels, "Level selection: count K or inclusive range lo-hi")
        ->capture_default_str();
    cmd->add_option("--tol", o.tol, "Convergence tolerance for the exact method")
        ->capture_default_str();
    cmd->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--format", o.format, "Output format: csv or json")->capture_default_str();
    cmd->add_option("--output", o.output,
                    "Write payload to this file (plus a .meta.json sidecar)");
    cmd->add_option("--g-min", o.g_min, "Coupling sweep start")->required();
    cmd->add_option("--g-max", o.g_max, "Coupling sweep end")->required();
    cmd->add_option("--g-steps", o.g_steps, "Coupling sweep points")->required();
}

void run_sweep(const SweepCli& o, bool landscape) {
    aqrm::SweepConfig cfg;
    cfg.delta = o.delta;
    cfg.omega = o.omega;
    cfg.methods.clear();
    for (const std::string& name : o.methods) cfg.methods.push_back(aqrm::parse_method(name));
    cfg.g = aqrm::GridAxis{o.g_min, o.g_max, o.g_steps};
    cfg.epsilon = landscape
                      ? aqrm::GridAxis{o.epsilon_min, o.epsilon_max, o.epsilon_steps}
                      : aqrm::GridAxis{o.epsilon, o.epsilon, 1};
    cfg.levels = aqrm::parse_levels(o.levels);
    cfg.tol = o.tol;
    cfg.jobs = o.jobs;
    const aqrm::OutputFormat format = aqrm::parse_format(o.format);

    const auto rows = aqrm::spectrum_rows(cfg);

    // warn once per distinct off-resonance bias when block methods are in play
    const bool has_block_method =
        std::any_of(cfg.methods.begin(), cfg.methods.end(),
                    [](Method m) { return m != Method::exact; });
    if (has_block_method) {
        std::set<std::string> seen;
        for (int i = 0; i < cfg.epsilon.steps; ++i) {
            const aqrm::ModelParams probe{cfg.delta, cfg.omega, 0.0, cfg.epsilon.value(i)};
            if (const auto warning = aqrm::validity_diagnostic(probe)) {
                if (seen.insert(*warning).second) std::cerr << "warning: " << *warning << "\n";
            }
        }
    }

    ordered_json meta;
    meta["schema"] = "aqrm.meta.v1";
    meta["command"] = landscape ? "landscape" : "spectrum";
    meta["version"] = AQRM_VERSION;
    meta["delta"] = cfg.delta;
    meta["omega"] = cfg.omega;
    meta["methods"] = ordered_json::array();
    for (const std::string& name : o.methods) meta["methods"].push_back(name);
    meta["g"] = {{"min", cfg.g.min}, {"max", cfg.g.max}, {"steps", cfg.g.steps}};
    meta["epsilon"] = {{"min", cfg.epsilon.min},
                       {"max", cfg.epsilon.max},
                       {"steps", cfg.epsilon.steps}};
    meta["levels"] = {{"lo", cfg.levels.lo}, {"hi", cfg.levels.hi}};
    meta["tol"] = cfg.tol;
    meta["format"] = o.format;
    meta["rows"] = rows.size();

    emit(format == aqrm::OutputFormat::csv ? aqrm::spectrum_csv(rows)
                                           : aqrm::spectrum_json(rows),
         o.output, meta);
}

struct JuddianCli {
    int pair_n{0};
    int bias_l{0};
    double delta{1.0};
    double omega{1.0};
    double g_max{1.5};
    bool certify{false};
    double tol{1e-9};
    std::string format{"csv"};
    std::string output;
};

void run_juddian(const JuddianCli& o) {
    aqrm::JuddianScanOptions opts;
    opts.g_max = o.g_max;
    opts.certify = o.certify;
    opts.certify_spectrum_tol = o.tol;
    const aqrm::CiSet set = aqrm::locate_cis(o.pair_n, o.bias_l, o.delta, o.omega, opts);
    for (const std::string& d : set.diagnostics) std::cerr << "warning: " << d << "\n";

    ordered_json meta;
    meta["schema"] = "aqrm.meta.v1";
    meta["command"] = "juddian";
    meta["version"] = AQRM_VERSION;
    meta["pair_n"] = o.pair_n;
    meta["bias_l"] = o.bias_l;
    meta["delta"] = o.delta;
    meta["omega"] = o.omega;
    meta["g_max"] = o.g_max;
    meta["certify"] = o.certify;
    meta["tol"] = o.tol;
    meta["format"] = o.format;
    meta["points"] = set.points.size();

    emit(aqrm::parse_format(o.format) == aqrm::OutputFormat::csv ? aqrm::ci_csv(set)
                                                                 : aqrm::ci_json(set),
         o.output, meta);
}

struct BerryCli {
    int pair_n{0};
    int bias_l{0};
    double delta{1.0};
    double omega{1.0};
    double g_min{0.0};
    double g_max{0.0};
    double epsilon_min{0.0};
    double epsilon_max{0.0};
    int loop_steps{2000};
    std::string band{"lower"};
    std::string method{"gaa"};
    double clearance{1e-6};
    std::string format{"csv"};
    std::string output;
};

void run_berry_cmd(const BerryCli& o) {
    aqrm::BerryRun run;
    run.field.delta = o.delta;
    run.field.omega = o.omega;
    run.field.idx = aqrm::BlockIndex{o.pair_n, o.bias_l};
    run.field.kind = aqrm::tunneling_kind(aqrm::parse_method(o.method));
    run.g_min = o.g_min;
    run.g_max = o.g_max;
    run.epsilon_min = o.epsilon_min;
    run.epsilon_max = o.epsilon_max;
    run.loop_steps = o.loop_steps;
    run.band = aqrm::parse_band(o.band);
    run.clearance = o.clearance;
    const aqrm::BerryRunResult result = aqrm::run_berry(run);
    for (const std::string& d : result.diagnostics) std::cerr << "warning: " << d << "\n";

    ordered_json meta;
    meta["schema"] = "aqrm.meta.v1";
    meta["command"] = "berry";
    meta["version"] = AQRM_VERSION;
    meta["pair_n"] = o.pair_n;
    meta["bias_l"] = o.bias_l;
    meta["delta"] = o.delta;
    meta["omega"] = o.omega;
    meta["kind"] = o.method;
    meta["band"] = o.band;
    meta["loop"] = {{"g_min", o.g_min},
                    {"g_max", o.g_max},
                    {"epsilon_min", o.epsilon_min},
                    {"epsilon_max", o.epsilon_max},
                    {"steps", o.loop_steps}};
    meta["clearance"] = o.clearance;
    meta["format"] = o.format;

    emit(aqrm::parse_format(o.format) == aqrm::OutputFormat::csv
             ? aqrm::berry_csv(run, result)
             : aqrm::berry_json(run, result),
         o.output, meta);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral toolkit for the asymmetric quantum Rabi model"};
    app.set_version_flag("--version", std::string(AQRM_VERSION));
    app.require_subcommand(1);

    SweepCli spectrum;
    CLI::App* spectrum_cmd =
        app.add_subcommand("spectrum", "Sweep the coupling g at fixed bias");
    add_common_sweep_options(spectrum_cmd, spectrum);
    spectrum_cmd->add_option("--epsilon", spectrum.epsilon, "Fixed bias")
        ->capture_default_str();

    SweepCli landscape;
    CLI::App* landscape_cmd =
        app.add_subcommand("landscape", "Sweep both the coupling g and the bias epsilon");
    add_common_sweep_options(landscape_cmd, landscape);
    landscape_cmd->add_option("--epsilon-min", landscape.epsilon_min, "Bias sweep start")
        ->required();
    landscape_cmd->add_option("--epsilon-max", landscape.epsilon_max, "Bias sweep end")
        ->required();
    landscape_cmd->add_option("--epsilon-steps", landscape.epsilon_steps, "Bias sweep points")
        ->required();

    JuddianCli juddian;
    CLI::App* juddian_cmd = app.add_subcommand(
        "juddian", "Locate conical intersections of one level pair on its bias resonance");
    juddian_cmd->add_option("--pair-n", juddian.pair_n, "Pair index n")->required();
    juddian_cmd->add_option("--bias-l", juddian.bias_l, "Bias resonance index l")->required();
    juddian_cmd->add_option("--delta", juddian.delta, "Qubit splitting")->capture_default_str();
    juddian_cmd->add_option("--omega", juddian.omega, "Field frequency")->capture_default_str();
    juddian_cmd->add_option("--g-max", juddian.g_max, "Scan limit in g")->capture_default_str();
    juddian_cmd->add_flag("--certify", juddian.certify,
                          "Cross-check each root against the exact spectrum");
    juddian_cmd->add_option("--tol", juddian.tol, "Exact-spectrum tolerance for --certify")
        ->capture_default_str();
    juddian_cmd->add_option("--format", juddian.format, "Output format: csv or json")
        ->capture_default_str();
    juddian_cmd->add_option("--output", juddian.output,
                            "Write payload to this file (plus a .meta.json sidecar)");

    BerryCli berry;
    CLI::App* berry_cmd = app.add_subcommand(
        "berry", "Geometric phase of a pair band around a rectangular loop");
    berry_cmd->add_option("--pair-n", berry.pair_n, "Pair index n")->required();
    berry_cmd->add_option("--bias-l", berry.bias_l, "Bias resonance index l")->required();
    berry_cmd->add_option("--delta", berry.delta, "Qubit splitting")->capture_default_str();
    berry_cmd->add_option("--omega", berry.omega, "Field frequency")->capture_default_str();
    berry_cmd->add_option("--g-min", berry.g_min, "Loop rectangle g lower edge")->required();
    berry_cmd->add_option("--g-max", berry.g_max, "Loop rectangle g upper edge")->required();
    berry_cmd->add_option("--epsilon-min", berry.epsilon_min, "Loop rectangle bias lower edge")
        ->required();
    berry_cmd->add_option("--epsilon-max", berry.epsilon_max, "Loop rectangle bias upper edge")
        ->required();
    berry_cmd->add_option("--loop-steps", berry.loop_steps, "Loop discretization segments")
        ->capture_default_str();
    berry_cmd->add_option("--band", berry.band, "Band: lower or upper")->capture_default_str();
    berry_cmd->add_option("--method", berry.method, "Tunnelling model: aa, gaa, gaa-kbar")
        ->capture_default_str();
    berry_cmd->add_option("--clearance", berry.clearance,
                          "Minimum loop distance to a degeneracy (omega units)")
        ->capture_default_str();
    berry_cmd->add_option("--format", berry.format, "Output format: csv or json")
        ->capture_default_str();
    berry_cmd->add_option("--output", berry.output,
                          "Write payload to this file (plus a .meta.json sidecar)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*spectrum_cmd) return run_guarded([&] { run_sweep(spectrum, false); });
    if (*landscape_cmd) return run_guarded([&] { run_sweep(landscape, true); });
    if (*juddian_cmd) return run_guarded([&] { run_juddian(juddian); });
    if (*berry_cmd) return run_guarded([&] { run_berry_cmd(berry); });
    return 2;
}
