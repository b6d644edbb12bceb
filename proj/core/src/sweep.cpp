#include "aqrm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "aqrm/adiabatic.hpp"
#include "aqrm/errors.hpp"
#include "aqrm/exactdiag.hpp"

namespace aqrm {

using ordered_json = nlohmann::ordered_json;

// ---- formatting ----

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown format '" + std::string(name) +
                                "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// ---- sweep configuration ----

LevelSelection parse_levels(const std::string& text) {
    const auto parse_int = [&text](std::string_view part) {
        int value = 0;
        const auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
            throw std::invalid_argument("bad level selection '" + text +
                                        "' (expected K or lo-hi)");
        }
        return value;
    };
    LevelSelection out;
    const auto dash = text.find('-', 1);  // allow no leading negative numbers anyway
    if (dash == std::string::npos) {
        const int count = parse_int(text);
        if (count < 1) throw std::invalid_argument("level count must be positive");
        out.lo = 0;
        out.hi = count - 1;
        return out;
    }
    out.lo = parse_int(std::string_view(text).substr(0, dash));
    out.hi = parse_int(std::string_view(text).substr(dash + 1));
    if (out.lo < 0 || out.hi < out.lo) {
        throw std::invalid_argument("bad level range '" + text + "' (need 0 <= lo <= hi)");
    }
    return out;
}

double GridAxis::value(int i) const {
    if (i < 0 || i >= steps) throw std::invalid_argument("grid index out of range");
    if (steps == 1) return min;
    if (i == steps - 1) return max;  // endpoint exact regardless of rounding
    return min + (max - min) * (static_cast<double>(i) / (steps - 1));
}

namespace {

void validate_axis(const GridAxis& axis, const char* name, bool non_negative) {
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
        throw std::invalid_argument(std::string(name) + " axis bounds must be finite");
    }
    if (axis.steps < 1) throw std::invalid_argument(std::string(name) + " steps must be >= 1");
    if (axis.steps > 1000000) {
        throw std::invalid_argument(std::string(name) + " steps exceed 1e6");
    }
    if (axis.steps > 1 && !(axis.max > axis.min)) {
        throw std::invalid_argument(std::string(name) + " axis needs max > min when swept");
    }
    if (non_negative && axis.min < 0.0) {
        throw std::invalid_argument(std::string(name) + " axis must be non-negative");
    }
}

std::vector<Method> canonical_methods(const std::vector<Method>& methods) {
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    std::vector<Method> out = methods;
    std::sort(out.begin(), out.end(), [](Method a, Method b) {
        return method_name(a) < method_name(b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Runs fn(0..count-1) on up to `jobs` worker threads; first exception
// wins and is rethrown after all workers drain.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::clamp<std::size_t>(
        std::min<std::size_t>(static_cast<std::size_t>(jobs), count), 1, 256);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    const std::lock_guard<std::mutex> lock(err_mutex);
                    if (!err) err = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace

std::vector<SpectrumRow> spectrum_rows(const SweepConfig& cfg) {
    validate(ModelParams{cfg.delta, cfg.omega, 0.0, 0.0});
    validate_axis(cfg.g, "g", true);
    validate_axis(cfg.epsilon, "epsilon", false);
    if (cfg.levels.lo < 0 || cfg.levels.hi < cfg.levels.lo) {
        throw std::invalid_argument("bad level selection (need 0 <= lo <= hi)");
    }
    if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
    if (cfg.jobs < 1) throw std::invalid_argument("jobs must be >= 1");
    const std::vector<Method> methods = canonical_methods(cfg.methods);

    const std::size_t npts =
        static_cast<std::size_t>(cfg.g.steps) * static_cast<std::size_t>(cfg.epsilon.steps);
    std::vector<std::vector<SpectrumRow>> slots(npts);
    const int k = cfg.levels.hi + 1;

    parallel_for(npts, cfg.jobs, [&](std::size_t t) {
        const int gi = static_cast<int>(t / static_cast<std::size_t>(cfg.epsilon.steps));
        const int ei = static_cast<int>(t % static_cast<std::size_t>(cfg.epsilon.steps));
        const ModelParams p{cfg.delta, cfg.omega, cfg.g.value(gi), cfg.epsilon.value(ei)};
        std::vector<SpectrumRow>& rows = slots[t];
        rows.reserve(methods.size() * static_cast<std::size_t>(k - cfg.levels.lo));
        for (const Method m : methods) {
            std::vector<double> energies;
            if (m == Method::exact) {
                TruncationConfig tc;
                tc.tol = cfg.tol;
                tc.k_levels = k;
                energies = converged_spectrum(p, tc).energies;
            } else {
                energies = approx_spectrum(p, m, k).energies;
            }
            for (int li = cfg.levels.lo; li <= cfg.levels.hi; ++li) {
                const double e = energies[static_cast<std::size_t>(li)];
                rows.push_back(SpectrumRow{m, p.g, p.epsilon, li, e,
                                           rescaled_energy(e, p.g, p.omega)});
            }
        }
    });

    std::vector<SpectrumRow> out;
    std::size_t total = 0;
    for (const auto& s : slots) total += s.size();
    out.reserve(total);
    for (auto& s : slots) out.insert(out.end(), s.begin(), s.end());
    std::sort(out.begin(), out.end(), [](const SpectrumRow& a, const SpectrumRow& b) {
        const auto na = method_name(a.method);
        const auto nb = method_name(b.method);
        if (na != nb) return na < nb;
        if (a.g != b.g) return a.g < b.g;
        if (a.epsilon != b.epsilon) return a.epsilon < b.epsilon;
        return a.level_index < b.level_index;
    });
    return out;
}

std::string spectrum_csv(const std::vector<SpectrumRow>& rows) {
    std::string out = "method,g,epsilon,level_index,energy,energy_rescaled\n";
    for (const SpectrumRow& r : rows) {
        out += method_name(r.method);
        out += ',';
        out += format_double(r.g);
        out += ',';
        out += format_double(r.epsilon);
        out += ',';
        out += std::to_string(r.level_index);
        out += ',';
        out += format_double(r.energy);
        out += ',';
        out += format_double(r.energy_rescaled);
        out += '\n';
    }
    return out;
}

std::string spectrum_json(const std::vector<SpectrumRow>& rows) {
    ordered_json doc;
    doc["schema"] = "aqrm.spectrum.v1";
    doc["rows"] = ordered_json::array();
    for (const SpectrumRow& r : rows) {
        ordered_json jr;
        jr["method"] = std::string(method_name(r.method));
        jr["g"] = r.g;
        jr["epsilon"] = r.epsilon;
        jr["level_index"] = r.level_index;
        jr["energy"] = r.energy;
        jr["energy_rescaled"] = r.energy_rescaled;
        doc["rows"].push_back(std::move(jr));
    }
    return doc.dump(2) + "\n";
}

// ---- conical-intersection tables ----

std::string ci_csv(const CiSet& set) {
    std::string out = "n,l,g_star,epsilon_star,energy,energy_rescaled,certified,gap\n";
    for (const ConicalIntersection& ci : set.points) {
        out += std::to_string(ci.n);
        out += ',';
        out += std::to_string(ci.l);
        out += ',';
        out += format_double(ci.g_star);
        out += ',';
        out += format_double(ci.epsilon_star);
        out += ',';
        out += format_double(ci.energy);
        out += ',';
        out += format_double(ci.rescaled_energy);
        out += ',';
        out += ci.certified ? "true" : "false";
        out += ',';
        out += format_double(ci.gap);
        out += '\n';
    }
    return out;
}

namespace {

ordered_json ci_to_json(const ConicalIntersection& ci) {
    ordered_json j;
    j["n"] = ci.n;
    j["l"] = ci.l;
    j["g_star"] = ci.g_star;
    j["epsilon_star"] = ci.epsilon_star;
    j["energy"] = ci.energy;
    j["energy_rescaled"] = ci.rescaled_energy;
    j["certified"] = ci.certified;
    if (std::isnan(ci.gap)) {
        j["gap"] = nullptr;
    } else {
        j["gap"] = ci.gap;
    }
    return j;
}

}  // namespace

std::string ci_json(const CiSet& set) {
    ordered_json doc;
    doc["schema"] = "aqrm.juddian.v1";
    doc["points"] = ordered_json::array();
    for (const ConicalIntersection& ci : set.points) doc["points"].push_back(ci_to_json(ci));
    doc["diagnostics"] = set.diagnostics;
    return doc.dump(2) + "\n";
}

// ---- geometric-phase runs ----

std::string_view band_name(Band band) {
    return band == Band::lower ? "lower" : "upper";
}

Band parse_band(std::string_view name) {
    if (name == "lower") return Band::lower;
    if (name == "upper") return Band::upper;
    throw std::invalid_argument("unknown band '" + std::string(name) +
                                "' (expected lower or upper)");
}

namespace {

std::string_view kind_name(TunnelingKind kind) {
    switch (kind) {
        case TunnelingKind::aa: return "aa";
        case TunnelingKind::gaa: return "gaa";
        case TunnelingKind::gaa_kbar: return "gaa-kbar";
    }
    throw std::logic_error("unknown tunnelling kind");
}

// Degeneracy points of the field itself. For the GAA kinds these are
// the conical intersections; for the plain adiabatic kind the
// tunnelling vanishes on vertical lines at the Laguerre zeros, and the
// degeneracies sit where those lines meet the resonance bias.
CiSet field_degeneracies(const PairField& field, double g_max) {
    if (field.kind != TunnelingKind::aa) {
        JuddianScanOptions opts;
        opts.g_max = g_max;
        return locate_cis(field.idx.n, field.idx.l, field.delta, field.omega, opts);
    }
    const int n = field.idx.n;
    const int l = field.idx.l;
    const double w2 = field.omega * field.omega;
    const auto laguerre_of_u = [&](double u) {
        return laguerre(n, static_cast<double>(l), 4.0 * u / w2);
    };
    const auto scan =
        detail::scan_sign_changes(laguerre_of_u, g_max * g_max, 512, 1e-14);
    CiSet out;
    out.diagnostics = scan.diagnostics;
    for (const double u : scan.roots) {
        if (u <= 0.0) continue;
        ConicalIntersection ci;
        ci.n = n;
        ci.l = l;
        ci.g_star = std::sqrt(u);
        ci.epsilon_star = l * field.omega;
        ci.rescaled_energy = (n + 0.5 * l) * field.omega;
        ci.energy = ci.rescaled_energy - u / field.omega;
        out.points.push_back(ci);
    }
    return out;
}

}  // namespace

BerryRunResult run_berry(const BerryRun& run) {
    if (!(run.clearance > 0.0)) throw std::invalid_argument("clearance must be positive");
    if (!(run.ci_scan_margin >= 0.0)) {
        throw std::invalid_argument("ci_scan_margin must be non-negative");
    }
    const LoopTrajectory loop = rectangle_loop(run.g_min, run.g_max, run.epsilon_min,
                                               run.epsilon_max, run.loop_steps);
    const CiSet cis = field_degeneracies(run.field, run.g_max + run.ci_scan_margin);
    check_loop_clearance(loop, cis.points, run.field.omega, run.clearance);

    BerryRunResult out;
    out.diagnostics = cis.diagnostics;
    out.analytic = berry_phase(run.field, loop, run.band);
    out.wilson = wilson_berry_phase(run.field, loop, run.band);
    for (const ConicalIntersection& ci : cis.points) {
        if (ci.g_star > run.g_min && ci.g_star < run.g_max &&
            ci.epsilon_star > run.epsilon_min && ci.epsilon_star < run.epsilon_max) {
            out.enclosed.push_back(ci);
        }
    }
    return out;
}

std::string berry_csv(const BerryRun& run, const BerryRunResult& result) {
    std::string out = "n,l,band,winding,phase,wilson_phase\n";
    out += std::to_string(run.field.idx.n);
    out += ',';
    out += std::to_string(run.field.idx.l);
    out += ',';
    out += band_name(run.band);
    out += ',';
    out += std::to_string(result.analytic.winding);
    out += ',';
    out += format_double(result.analytic.phase);
    out += ',';
    out += format_double(result.wilson.phase);
    out += '\n';
    return out;
}

std::string berry_json(const BerryRun& run, const BerryRunResult& result) {
    ordered_json doc;
    doc["schema"] = "aqrm.berry.v1";
    doc["n"] = run.field.idx.n;
    doc["l"] = run.field.idx.l;
    doc["delta"] = run.field.delta;
    doc["omega"] = run.field.omega;
    doc["kind"] = std::string(kind_name(run.field.kind));
    doc["band"] = std::string(band_name(run.band));
    doc["loop"] = {{"g_min", run.g_min},
                   {"g_max", run.g_max},
                   {"epsilon_min", run.epsilon_min},
                   {"epsilon_max", run.epsilon_max},
                   {"steps", run.loop_steps}};
    doc["winding"] = result.analytic.winding;
    doc["phase"] = result.analytic.phase;
    doc["wilson_phase"] = result.wilson.phase;
    doc["enclosed_cis"] = ordered_json::array();
    for (const ConicalIntersection& ci : result.enclosed) {
        doc["enclosed_cis"].push_back(ci_to_json(ci));
    }
    doc["diagnostics"] = result.diagnostics;
    return doc.dump(2) + "\n";
}

// ---- file output ----

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw std::runtime_error("failed moving '" + tmp.string() + "' to '" +
                                 target.string() + "': " + ec.message());
    }
}

}  // namespace aqrm
