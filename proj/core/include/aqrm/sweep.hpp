// sweep.hpp — Deterministic parameter sweeps and serialization.
//
// The runners here back the command-line tool. Grid points are computed
// independently (optionally across a thread pool) into pre-assigned
// slots, then rows are sorted by a total order on (method, g, epsilon,
// level_index), so the emitted bytes never depend on scheduling. Doubles
// are printed in shortest round-trip form.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "aqrm/berry.hpp"
#include "aqrm/constraints.hpp"
#include "aqrm/gaa.hpp"
#include "aqrm/model.hpp"

namespace aqrm {

// ---- formatting ----

enum class OutputFormat { csv, json };
OutputFormat parse_format(std::string_view name);  // "csv" | "json"

// shortest round-trip decimal form (std::to_chars)
std::string format_double(double v);

// ---- sweep configuration ----

// Inclusive 0-based level window.
struct LevelSelection {
    int lo{0};
    int hi{15};
};

// "K" selects levels 0..K-1; "lo-hi" is inclusive on both ends.
LevelSelection parse_levels(const std::string& text);

// Uniform grid; steps == 1 pins the axis at min.
struct GridAxis {
    double min{0.0};
    double max{0.0};
    int steps{1};

    double value(int i) const;
};

struct SweepConfig {
    double delta{1.0};
    double omega{1.0};
    std::vector<Method> methods{Method::exact};
    GridAxis g{};
    GridAxis epsilon{};
    LevelSelection levels{};
    double tol{1e-9};  // convergence tolerance for the exact method
    int jobs{1};
};

struct SpectrumRow {
    Method method{Method::exact};
    double g{0.0};
    double epsilon{0.0};
    int level_index{0};
    double energy{0.0};
    double energy_rescaled{0.0};
};

// Rows for the full (method x g x epsilon x level) product, sorted by
// method name, then g, epsilon, level_index. Output is independent of
// cfg.jobs.
std::vector<SpectrumRow> spectrum_rows(const SweepConfig& cfg);

// header: method,g,epsilon,level_index,energy,energy_rescaled
std::string spectrum_csv(const std::vector<SpectrumRow>& rows);
std::string spectrum_json(const std::vector<SpectrumRow>& rows);

// ---- conical-intersection tables ----

// header: n,l,g_star,epsilon_star,energy,energy_rescaled,certified,gap
std::string ci_csv(const CiSet& set);
std::string ci_json(const CiSet& set);

// ---- geometric-phase runs ----

struct BerryRun {
    PairField field{};
    double g_min{0.0};
    double g_max{0.0};
    double epsilon_min{0.0};
    double epsilon_max{0.0};
    int loop_steps{2000};
    Band band{Band::lower};
    double clearance{1e-6};     // minimum CI distance, omega units
    double ci_scan_margin{0.25};  // extra g range when locating CIs
};

struct BerryRunResult {
    BerryPhaseResult analytic{};
    BerryPhaseResult wilson{};
    std::vector<ConicalIntersection> enclosed;
    std::vector<std::string> diagnostics;
};

// Locates the CIs of the pair, rejects loops passing within
// run.clearance of any of them, then evaluates the phase both ways.
BerryRunResult run_berry(const BerryRun& run);

// header: n,l,band,winding,phase,wilson_phase
std::string berry_csv(const BerryRun& run, const BerryRunResult& result);
std::string berry_json(const BerryRun& run, const BerryRunResult& result);

std::string_view band_name(Band band);
Band parse_band(std::string_view name);  // "lower" | "upper"

// ---- file output ----

// Writes content to path via a sibling temp file and rename, so readers
// never observe a partial file; the temp file is removed on failure.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace aqrm
