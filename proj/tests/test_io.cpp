#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spincorr/cli.hpp"
#include "spincorr/io.hpp"
#include "spincorr/presets.hpp"

using namespace spincorr;

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out = nullptr,
            std::string* err = nullptr) {
    std::vector<const char*> argv;
    argv.push_back("spincorr");
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream os, es;
    const int rc = cli::cli_main(static_cast<int>(argv.size()), argv.data(), os, es);
    if (out) *out = os.str();
    if (err) *err = es.str();
    return rc;
}

analysis::SweepResult small_sweep(int points = 5) {
    analysis::SweepSpec spec;
    spec.base = {0.4, 0.4, -0.5, 0.0, 1.0};
    spec.axis1 = {analysis::SweepAxis::kt, 0.1, 1.0, points};
    return analysis::run_sweep(spec, {}, 2);
}

std::filesystem::path fresh_temp_dir(const std::string& tag) {
    const auto dir = std::filesystem::temp_directory_path() / ("spincorr_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("numbers are printed with 12 significant digits") {
    CHECK(io::format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(io::format_number(2.0) == "2");
    CHECK(io::format_number(1.23456789012345e-7) == "1.23456789012e-07");
}

TEST_CASE("sweep CSV round-trips at 12 significant digits") {
    const auto res = small_sweep(50);
    std::stringstream ss;
    io::write_sweep_csv(ss, res);

    // row-count contract: header + one line per grid point
    int data_lines = 0;
    for (std::string line; std::getline(ss, line);)
        if (!line.empty() && line[0] != '#') ++data_lines;
    CHECK(data_lines == 51);

    ss.clear();
    ss.seekg(0);
    const auto parsed = io::parse_csv(ss);
    REQUIRE(parsed.columns.size() == 8);
    CHECK(parsed.columns[0] == "kT");
    CHECK(parsed.columns[1] == "mutual_info");
    CHECK(parsed.columns[2] == "classical_corr");
    CHECK(parsed.columns[3] == "discord");
    CHECK(parsed.columns[4] == "concurrence");
    CHECK(parsed.columns[5] == "eof");
    CHECK(parsed.columns[6] == "theta_opt");
    CHECK(parsed.columns[7] == "phi_opt");
    REQUIRE(parsed.rows.size() == res.rows.size());

    auto close = [](double a, double b) {
        return std::abs(a - b) <= 1e-11 * std::max({1.0, std::abs(a), std::abs(b)});
    };
    for (std::size_t i = 0; i < parsed.rows.size(); ++i) {
        const auto& row = parsed.rows[i];
        const auto& mem = res.rows[i];
        CHECK(close(row[0], mem.axis1));
        CHECK(close(row[1], mem.report.mutual_info));
        CHECK(close(row[2], mem.report.classical_corr));
        CHECK(close(row[3], mem.report.discord));
        CHECK(close(row[4], mem.report.concurrence));
        CHECK(close(row[5], mem.report.eof));
        CHECK(close(row[6], mem.report.optimal_basis.theta));
        CHECK(close(row[7], mem.report.optimal_basis.phi));
    }
}

TEST_CASE("point JSON carries every report field") {
    const model::ModelParams p{0.4, 0.4, -0.5, 0.0, 0.5};
    const auto j = io::report_json(p, discord::quantum_discord(model::thermal_state(p)));
    for (const char* key : {"jx", "jy", "jz", "b", "kT", "mutual_info", "classical_corr",
                            "discord", "concurrence", "eof", "theta_opt", "phi_opt"})
        CHECK(j.contains(key));
    CHECK(j["eof"].get<double>() == 0.0);
    CHECK(j["discord"].get<double>() > 0.0);
}

TEST_CASE("preset table is frozen") {
    const auto names = presets::preset_names();
    const std::vector<std::string> expected{"xxz-rise",        "xxz-classical",
                                            "xxx-map",         "sudden-change-delta",
                                            "sudden-change-jz", "ising-map",
                                            "xy-regrowth-iso", "xy-regrowth-aniso"};
    CHECK(names == expected);

    const std::filesystem::path golden = std::filesystem::path(SPINCORR_GOLDEN_DIR) / "presets.json";
    std::ifstream in(golden);
    REQUIRE_MESSAGE(in.good(), "golden file missing: ", golden.string());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string want = buf.str();
    while (!want.empty() && (want.back() == '\n' || want.back() == '\r')) want.pop_back();
    CHECK(presets::all_presets_json().dump(2) == want);
}

TEST_CASE("figure files carry the preset's curves and quantities") {
    // shrunk axes keep the naming and layout logic while staying fast
    for (auto preset : presets::all_presets()) {
        preset.axis1.count = 5;
        if (preset.axis2) preset.axis2->count = 3;
        const auto dir = fresh_temp_dir("figs_" + preset.name);
        const auto files = presets::write_figure_files(preset, dir, {}, 2, true);

        const std::size_t expected =
            preset.per_quantity_files ? preset.quantities.size() : preset.curves.size();
        CHECK(files.size() == expected);
        for (const auto& f : files) {
            const auto path = dir / f;
            REQUIRE(std::filesystem::exists(path));
            std::ifstream is(path);
            const auto parsed = io::parse_csv(is);
            const std::size_t axis_cols = preset.axis2 ? 2 : 1;
            const std::size_t quantity_cols = preset.per_quantity_files ? 1 : preset.quantities.size();
            CHECK(parsed.columns.size() == axis_cols + quantity_cols);
            CHECK(parsed.rows.size() == (preset.axis2 ? 15u : 5u));
        }
        CHECK(std::filesystem::exists(dir / (preset.name + ".gp")));
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("cli point") {
    std::string out, err;
    SUBCASE("free spins give a null report") {
        REQUIRE(run_cli({"point", "--j", "0", "--b", "0", "--kt", "1"}, &out, &err) == 0);
        const auto j = nlohmann::json::parse(out);
        CHECK(std::abs(j["discord"].get<double>()) < 1e-9);
        CHECK(std::abs(j["mutual_info"].get<double>()) < 1e-9);
        CHECK(j["eof"].get<double>() == 0.0);
    }
    SUBCASE("strong ferromagnetic XXX discord is 1/3") {
        REQUIRE(run_cli({"point", "--j", "-200", "--b", "0", "--kt", "1"}, &out, &err) == 0);
        const auto j = nlohmann::json::parse(out);
        CHECK(std::abs(j["discord"].get<double>() - 1.0 / 3.0) < 1e-3);
        CHECK(j["eof"].get<double>() == 0.0);
    }
    SUBCASE("XXZ point has discord without entanglement") {
        REQUIRE(run_cli({"point", "--jx", "0.4", "--jy", "0.4", "--jz", "-0.5", "--b", "0", "--kt",
                         "0.5"},
                        &out, &err) == 0);
        const auto j = nlohmann::json::parse(out);
        CHECK(j["eof"].get<double>() == 0.0);
        CHECK(j["discord"].get<double>() > 0.0);
    }
    SUBCASE("usage errors exit with 2") {
        CHECK(run_cli({"point", "--j", "1"}, &out, &err) == 2);                      // no kt
        CHECK(run_cli({"point", "--kt", "1"}, &out, &err) == 2);                     // no couplings
        CHECK(run_cli({"point", "--j", "1", "--kt", "0"}, &out, &err) == 2);         // kt <= 0
        CHECK(run_cli({"point", "--j", "1", "--kt", "-2"}, &out, &err) == 2);        // kt <= 0
        CHECK(run_cli({"point", "--j", "nan", "--kt", "1"}, &out, &err) == 2);       // non-finite
        CHECK(run_cli({"point", "--bogus", "1", "--kt", "1"}, &out, &err) == 2);     // unknown flag
    }
}

TEST_CASE("cli sweep") {
    std::string out, err;
    SUBCASE("csv output with the expected row count") {
        REQUIRE(run_cli({"sweep", "--j", "0.4", "--kt", "1", "--axis", "kT", "--from", "0.1",
                         "--to", "1", "--points", "6"},
                        &out, &err) == 0);
        std::stringstream ss(out);
        const auto parsed = io::parse_csv(ss);
        CHECK(parsed.rows.size() == 6);
        CHECK(parsed.columns.front() == "kT");
    }
    SUBCASE("two-axis csv for heatmaps") {
        REQUIRE(run_cli({"sweep", "--jx", "1", "--kt", "1", "--axis", "b", "--from", "0", "--to",
                         "3", "--points", "3", "--axis2", "kT", "--from2", "0.1", "--to2", "2",
                         "--points2", "3"},
                        &out, &err) == 0);
        std::stringstream ss(out);
        const auto parsed = io::parse_csv(ss);
        CHECK(parsed.rows.size() == 9);
        REQUIRE(parsed.columns.size() == 9);
        CHECK(parsed.columns[0] == "b");
        CHECK(parsed.columns[1] == "kT");
    }
    SUBCASE("json output") {
        REQUIRE(run_cli({"sweep", "--j", "0.4", "--kt", "1", "--axis", "kT", "--from", "0.1",
                         "--to", "1", "--points", "4", "--format", "json"},
                        &out, &err) == 0);
        const auto j = nlohmann::json::parse(out);
        CHECK(j.is_array());
        CHECK(j.size() == 4);
        CHECK(j[0].contains("discord"));
    }
    SUBCASE("detector summary is appended as comments") {
        REQUIRE(run_cli({"sweep", "--jx", "1", "--jy", "1", "--jz", "1", "--kt", "1", "--axis",
                         "delta", "--from", "-0.4", "--to", "0.4", "--points", "161", "--threads",
                         "0", "--detect", "kinks"},
                        &out, &err) == 0);
        CHECK(out.find("# kinks: 1") != std::string::npos);
        CHECK(out.find("# kink at delta=") != std::string::npos);
    }
    SUBCASE("config file mirrors the flags") {
        const auto dir = fresh_temp_dir("config");
        const auto cfg = dir / "sweep.cfg";
        {
            std::ofstream os(cfg);
            os << "j=0.4\nkt=1\naxis=kT\nfrom=0.1\nto=1\npoints=5\n";
        }
        REQUIRE(run_cli({"sweep", "--config", cfg.string()}, &out, &err) == 0);
        std::stringstream ss(out);
        CHECK(io::parse_csv(ss).rows.size() == 5);
        std::filesystem::remove_all(dir);
    }
    SUBCASE("usage errors exit with 2") {
        CHECK(run_cli({"sweep", "--j", "1", "--kt", "1", "--axis", "bogus", "--from", "0", "--to",
                       "1", "--points", "5"},
                      &out, &err) == 2);
        CHECK(run_cli({"sweep", "--j", "1", "--kt", "1", "--axis", "kT", "--from", "1", "--to",
                       "0.1", "--points", "5"},
                      &out, &err) == 2);
        CHECK(run_cli({"sweep", "--j", "1", "--kt", "1", "--axis", "kT", "--from", "0.1", "--to",
                       "1", "--points", "1"},
                      &out, &err) == 2);
    }
    SUBCASE("--out writes a file") {
        const auto dir = fresh_temp_dir("out");
        const auto file = dir / "sweep.csv";
        REQUIRE(run_cli({"sweep", "--j", "0.4", "--kt", "1", "--axis", "kT", "--from", "0.1",
                         "--to", "1", "--points", "4", "--out", file.string()},
                        &out, &err) == 0);
        std::ifstream is(file);
        REQUIRE(is.good());
        CHECK(io::parse_csv(is).rows.size() == 4);
        std::filesystem::remove_all(dir);
    }
}

TEST_CASE("cli figure rejects unknown presets with the valid list") {
    std::string out, err;
    CHECK(run_cli({"figure", "no-such-preset"}, &out, &err) == 2);
    CHECK(err.find("xxz-rise") != std::string::npos);
    CHECK(err.find("xy-regrowth-aniso") != std::string::npos);
}

TEST_CASE("cli selftest passes and reports each check") {
    std::string out, err;
    CHECK(run_cli({"selftest"}, &out, &err) == 0);
    CHECK(out.find("ok:") != std::string::npos);
    CHECK(out.find("FAIL") == std::string::npos);
}
