#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aqrm/exactdiag.hpp"
#include "aqrm/sweep.hpp"
#include "testutil.hpp"

using namespace aqrm;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

SweepConfig small_sweep() {
    SweepConfig cfg;
    cfg.delta = 0.8;
    cfg.omega = 1.0;
    cfg.methods = {Method::exact, Method::aa};
    cfg.g = GridAxis{0.1, 0.7, 3};
    cfg.epsilon = GridAxis{0.0, 1.0, 2};
    cfg.levels = LevelSelection{0, 3};
    return cfg;
}

}  // namespace

TEST_CASE("level selections parse both spellings") {
    CHECK(parse_levels("14").lo == 0);
    CHECK(parse_levels("14").hi == 13);
    CHECK(parse_levels("2-5").lo == 2);
    CHECK(parse_levels("2-5").hi == 5);
    CHECK(parse_levels("0-0").lo == 0);
    CHECK(parse_levels("0-0").hi == 0);
    for (const char* bad : {"", "abc", "5-2", "-3", "3-", "1.5", "0"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_levels(bad), std::invalid_argument);
    }
}

TEST_CASE("format and band names round-trip") {
    CHECK(parse_format("csv") == OutputFormat::csv);
    CHECK(parse_format("json") == OutputFormat::json);
    CHECK_THROWS_AS(parse_format("yaml"), std::invalid_argument);
    CHECK(parse_band("lower") == Band::lower);
    CHECK(parse_band("upper") == Band::upper);
    CHECK(band_name(Band::lower) == "lower");
    CHECK(band_name(Band::upper) == "upper");
    CHECK_THROWS_AS(parse_band("middle"), std::invalid_argument);
}

TEST_CASE("grid axes hit both endpoints exactly") {
    const GridAxis axis{0.1, 0.9, 5};
    CHECK(axis.value(0) == 0.1);
    CHECK(axis.value(4) == 0.9);
    CHECK(axis.value(2) == doctest::Approx(0.5).epsilon(1e-15));
    const GridAxis pinned{0.3, 0.3, 1};
    CHECK(pinned.value(0) == 0.3);
    CHECK_THROWS_AS(axis.value(5), std::invalid_argument);
    CHECK_THROWS_AS(axis.value(-1), std::invalid_argument);
}

TEST_CASE("shortest round-trip double formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(-0.25) == "-0.25");
    CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
    testutil::Rng rng(20250823);
    for (int i = 0; i < 200; ++i) {
        double v = rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform_int(-12, 12));
        const std::string text = format_double(v);
        CHECK(std::strtod(text.c_str(), nullptr) == v);
    }
}

TEST_CASE("sweep rows cover the grid in canonical order") {
    const auto rows = spectrum_rows(small_sweep());
    REQUIRE(rows.size() == 2u * 3u * 2u * 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& a = rows[i - 1];
        const auto& b = rows[i];
        const auto ka = std::make_tuple(std::string(method_name(a.method)), a.g, a.epsilon,
                                        a.level_index);
        const auto kb = std::make_tuple(std::string(method_name(b.method)), b.g, b.epsilon,
                                        b.level_index);
        CHECK(ka < kb);
    }
    CHECK(rows.front().method == Method::aa);
    CHECK(rows.back().method == Method::exact);
    // grid values land exactly on the axis points
    CHECK(rows.front().g == 0.1);
    CHECK(rows.back().g == 0.7);
}

TEST_CASE("sweep output is independent of the worker count and repeatable") {
    auto cfg = small_sweep();
    cfg.jobs = 1;
    const auto serial = spectrum_rows(cfg);
    cfg.jobs = 4;
    const auto parallel = spectrum_rows(cfg);
    const auto again = spectrum_rows(cfg);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].energy == parallel[i].energy);
        CHECK(serial[i].energy == again[i].energy);
        CHECK(serial[i].level_index == parallel[i].level_index);
    }
}

TEST_CASE("exact sweep rows agree with a direct converged spectrum") {
    auto cfg = small_sweep();
    cfg.methods = {Method::exact};
    const auto rows = spectrum_rows(cfg);
    const ModelParams p{cfg.delta, cfg.omega, cfg.g.value(1), cfg.epsilon.value(1)};
    TruncationConfig tc;
    tc.tol = cfg.tol;
    tc.k_levels = cfg.levels.hi + 1;
    const auto direct = converged_spectrum(p, tc);
    for (const auto& row : rows) {
        if (row.g != p.g || row.epsilon != p.epsilon) continue;
        CHECK(row.energy == direct.energies[static_cast<std::size_t>(row.level_index)]);
        CHECK(row.energy_rescaled == rescaled_energy(row.energy, row.g, cfg.omega));
    }
}

TEST_CASE("duplicate methods collapse to one canonical pass") {
    auto cfg = small_sweep();
    cfg.methods = {Method::gaa, Method::aa, Method::gaa, Method::aa};
    const auto rows = spectrum_rows(cfg);
    CHECK(rows.size() == 2u * 3u * 2u * 4u);
    CHECK(rows.front().method == Method::aa);
    CHECK(rows.back().method == Method::gaa);
}

TEST_CASE("sweep configuration validation") {
    auto cfg = small_sweep();
    cfg.methods.clear();
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.g.steps = 0;
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.g.min = -0.2;
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.g = GridAxis{0.5, 0.1, 3};
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.tol = 0.0;
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.jobs = 0;
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
    cfg = small_sweep();
    cfg.omega = 0.0;
    CHECK_THROWS_AS(spectrum_rows(cfg), std::invalid_argument);
}

TEST_CASE("spectrum csv layout") {
    const auto rows = spectrum_rows(small_sweep());
    const auto text = spectrum_csv(rows);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == rows.size() + 1);
    CHECK(lines[0] == "method,g,epsilon,level_index,energy,energy_rescaled");
    CHECK(lines[1].rfind("aa,0.1,0,0,", 0) == 0);
    CHECK(text.back() == '\n');
}

TEST_CASE("spectrum json round-trips values exactly") {
    const auto rows = spectrum_rows(small_sweep());
    const auto parsed = nlohmann::json::parse(spectrum_json(rows));
    CHECK(parsed.at("schema") == "aqrm.spectrum.v1");
    REQUIRE(parsed.at("rows").size() == rows.size());
    const auto& first = parsed.at("rows").at(0);
    CHECK(first.at("method") == "aa");
    CHECK(first.at("g").get<double>() == rows.front().g);
    CHECK(first.at("energy").get<double>() == rows.front().energy);
    CHECK(first.at("level_index").get<int>() == rows.front().level_index);
}

TEST_CASE("conical-intersection tables serialize certification and gap") {
    const auto uncertified = locate_cis(2, 0, 1.0, 1.0);
    const auto text = ci_csv(uncertified);
    const auto lines = lines_of(text);
    REQUIRE(lines.size() == 3u);
    CHECK(lines[0] == "n,l,g_star,epsilon_star,energy,energy_rescaled,certified,gap");
    CHECK(lines[1].rfind("2,0,", 0) == 0);
    CHECK(lines[1].find(",false,nan") != std::string::npos);

    JuddianScanOptions opts;
    opts.certify = true;
    const auto certified = locate_cis(2, 0, 1.0, 1.0, opts);
    const auto clines = lines_of(ci_csv(certified));
    CHECK(clines[1].find(",true,") != std::string::npos);
    CHECK(clines[1].find("nan") == std::string::npos);

    const auto parsed = nlohmann::json::parse(ci_json(uncertified));
    CHECK(parsed.at("schema") == "aqrm.juddian.v1");
    REQUIRE(parsed.at("points").size() == 2u);
    CHECK(parsed.at("points").at(0).at("gap").is_null());
    CHECK(parsed.at("points").at(0).at("certified") == false);
    const auto cparsed = nlohmann::json::parse(ci_json(certified));
    CHECK(cparsed.at("points").at(0).at("gap").is_number());
}

TEST_CASE("berry tables carry both phases") {
    BerryRun run;
    run.field.delta = 1.0;
    run.field.idx = BlockIndex{2, 0};
    run.g_min = 0.15;
    run.g_max = 0.55;
    run.epsilon_min = -0.3;
    run.epsilon_max = 0.3;
    run.loop_steps = 300;
    const auto result = run_berry(run);

    const auto lines = lines_of(berry_csv(run, result));
    REQUIRE(lines.size() == 2u);
    CHECK(lines[0] == "n,l,band,winding,phase,wilson_phase");
    CHECK(lines[1].rfind("2,0,lower,1,", 0) == 0);

    const auto parsed = nlohmann::json::parse(berry_json(run, result));
    CHECK(parsed.at("schema") == "aqrm.berry.v1");
    CHECK(parsed.at("band") == "lower");
    CHECK(parsed.at("winding").get<int>() == 1);
    CHECK(parsed.at("phase").get<double>() == std::numbers::pi);
    CHECK(parsed.at("enclosed_cis").size() == 1u);
}

TEST_CASE("atomic file writes replace and never leave droppings") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "aqrm_sweep_test";
    fs::create_directories(dir);
    const auto path = (dir / "out.csv").string();
    write_file_atomic(path, "one\n");
    write_file_atomic(path, "two\n");
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == "two\n");
    CHECK(!fs::exists(path + ".tmp"));
    CHECK_THROWS_AS(
        write_file_atomic((dir / "missing" / "out.csv").string(), "x"),
        std::runtime_error);
    fs::remove_all(dir);
}
