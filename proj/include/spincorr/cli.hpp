#pragma once

// Command-line front end. Subcommands:
//   point    evaluate one parameter set, print a JSON report
//   sweep    run a 1- or 2-axis sweep, print CSV (or JSON with --format json)
//   figure   write the CSV files of a named figure preset
//   selftest run the built-in consistency checks
// Exit codes: 0 success, 1 runtime evaluation failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spincorr/analysis.hpp"
#include "spincorr/io.hpp"
#include "spincorr/presets.hpp"
#include "spincorr/selftest.hpp"
#include "spincorr/version.hpp"

namespace spincorr::cli {

namespace detail {

struct ModelFlags {
    std::optional<double> jx, jy, jz, j, b, kt;
};

inline void add_model_flags(CLI::App* cmd, ModelFlags& f) {
    cmd->add_option("--jx", f.jx, "coupling Jx");
    cmd->add_option("--jy", f.jy, "coupling Jy");
    cmd->add_option("--jz", f.jz, "coupling Jz");
    cmd->add_option("--j", f.j, "convenience: sets jx = jy = jz");
    cmd->add_option("--b", f.b, "transverse magnetic field (default 0)");
    cmd->add_option("--kt", f.kt, "temperature kT (> 0)");
}

/// Resolve the flag set into model parameters; throws CLI::ValidationError
/// on missing or non-finite input.
inline model::ModelParams resolve_params(const ModelFlags& f, bool require_couplings) {
    model::ModelParams p;
    if (f.j) {
        p.jx = p.jy = p.jz = *f.j;
    } else if (f.jx || f.jy || f.jz) {
        p.jx = f.jx.value_or(0.0);
        p.jy = f.jy.value_or(0.0);
        p.jz = f.jz.value_or(0.0);
    } else if (require_couplings) {
        throw CLI::ValidationError("model", "couplings required: --j or --jx/--jy/--jz");
    }
    p.b = f.b.value_or(0.0);
    if (!f.kt) throw CLI::ValidationError("model", "--kt is required");
    p.kt = *f.kt;
    if (!(std::isfinite(p.jx) && std::isfinite(p.jy) && std::isfinite(p.jz) &&
          std::isfinite(p.b) && std::isfinite(p.kt)))
        throw CLI::ValidationError("model", "parameters must be finite");
    if (!(p.kt > 0.0)) throw CLI::ValidationError("model", "kT must be > 0");
    return p;
}

/// Flat key=value config file mirroring the long flag names ('#' comments).
inline std::map<std::string, std::string> parse_flat_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot read '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "malformed line '" + line + "'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline double config_double(const std::map<std::string, std::string>& kv, const std::string& key) {
    try {
        return std::stod(kv.at(key));
    } catch (const std::exception&) {
        throw CLI::ValidationError("--config", "bad numeric value for '" + key + "'");
    }
}

/// Fill every setting the command line left unset from the config map.
inline void merge_config(const std::map<std::string, std::string>& kv, ModelFlags& f) {
    auto fill = [&](const char* key, std::optional<double>& slot) {
        if (!slot && kv.count(key)) slot = config_double(kv, key);
    };
    fill("jx", f.jx);
    fill("jy", f.jy);
    fill("jz", f.jz);
    fill("j", f.j);
    fill("b", f.b);
    fill("kt", f.kt);
}

inline std::ostream& open_output(std::ofstream& file, const std::string& path, std::ostream& fallback) {
    if (path.empty()) return fallback;
    file.open(path);
    if (!file) throw CLI::ValidationError("--out", "cannot open '" + path + "' for writing");
    return file;
}

} // namespace detail

inline int cli_main(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"thermal quantum correlations of a two-qubit XYZ Heisenberg chain"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // point
    auto* point = app.add_subcommand("point", "evaluate a single parameter set");
    detail::ModelFlags point_flags;
    detail::add_model_flags(point, point_flags);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep");
    detail::ModelFlags sweep_flags;
    detail::add_model_flags(sweep, sweep_flags);
    std::string axis1_name, axis2_name;
    std::optional<double> from1, to1, from2, to2;
    std::optional<int> points1, points2;
    std::string out_path, format = "csv", detect, config_path;
    int threads = 0;
    sweep->add_option("--axis", axis1_name, "sweep axis: jx|jy|jz|j|delta|b|kT");
    sweep->add_option("--from", from1, "axis start");
    sweep->add_option("--to", to1, "axis stop");
    sweep->add_option("--points", points1, "axis point count (>= 2)");
    sweep->add_option("--axis2", axis2_name, "optional second axis");
    sweep->add_option("--from2", from2, "second axis start");
    sweep->add_option("--to2", to2, "second axis stop");
    sweep->add_option("--points2", points2, "second axis point count");
    sweep->add_option("--out", out_path, "output file (default: stdout)");
    sweep->add_option("--format", format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--detect", detect, "append detector summary: kinks|regrowth|qpt")
        ->check(CLI::IsMember({"kinks", "regrowth", "qpt"}));
    sweep->add_option("--threads", threads, "worker threads (default: available parallelism)");
    sweep->add_option("--config", config_path, "flat key=value file mirroring the flags");

    // figure
    auto* figure = app.add_subcommand("figure", "write the CSV files of a figure preset");
    std::string preset_name, out_dir = ".";
    bool gnuplot = false;
    int fig_threads = 0;
    figure->add_option("name", preset_name, "preset name")->required();
    figure->add_option("--out-dir", out_dir, "output directory (default: .)");
    figure->add_flag("--gnuplot", gnuplot, "also write a gnuplot script");
    figure->add_option("--threads", fig_threads, "worker threads");

    // selftest
    auto* selftest_cmd = app.add_subcommand("selftest", "run built-in consistency checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help / --version
            app.exit(e, out, err);
            return 0;
        }
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (point->parsed()) {
            const auto p = detail::resolve_params(point_flags, true);
            out << io::report_json(p, discord::quantum_discord(model::thermal_state(p))).dump(2)
                << "\n";
            return 0;
        }

        if (sweep->parsed()) {
            if (!config_path.empty()) {
                const auto kv = detail::parse_flat_config(config_path);
                detail::merge_config(kv, sweep_flags);
                auto fill_str = [&](const char* key, std::string& slot) {
                    if (slot.empty() && kv.count(key)) slot = kv.at(key);
                };
                auto fill_num = [&](const char* key, std::optional<double>& slot) {
                    if (!slot && kv.count(key)) slot = detail::config_double(kv, key);
                };
                auto fill_int = [&](const char* key, std::optional<int>& slot) {
                    if (!slot && kv.count(key))
                        slot = static_cast<int>(detail::config_double(kv, key));
                };
                fill_str("axis", axis1_name);
                fill_num("from", from1);
                fill_num("to", to1);
                fill_int("points", points1);
                fill_str("axis2", axis2_name);
                fill_num("from2", from2);
                fill_num("to2", to2);
                fill_int("points2", points2);
                fill_str("out", out_path);
                fill_str("detect", detect);
                if (sweep->count("--format") == 0 && kv.count("format")) format = kv.at("format");
                if (sweep->count("--threads") == 0 && kv.count("threads"))
                    threads = static_cast<int>(detail::config_double(kv, "threads"));
                if (format != "csv" && format != "json")
                    throw CLI::ValidationError("--config", "format must be csv or json");
            }
            if (axis1_name.empty() || !from1 || !to1 || !points1)
                throw CLI::ValidationError("sweep", "--axis, --from, --to and --points are required");

            analysis::SweepSpec spec;
            spec.base = detail::resolve_params(sweep_flags, false);
            spec.axis1 = {analysis::parse_axis(axis1_name), *from1, *to1, *points1};
            analysis::validate(spec.axis1);
            if (!axis2_name.empty()) {
                if (!from2 || !to2 || !points2)
                    throw CLI::ValidationError("sweep", "--axis2 needs --from2, --to2, --points2");
                spec.axis2 =
                    analysis::AxisSpec{analysis::parse_axis(axis2_name), *from2, *to2, *points2};
                analysis::validate(*spec.axis2);
            }
            const auto result = analysis::run_sweep(spec, {}, threads);

            // run detectors before any output so their errors leave stdout clean
            std::ostringstream detector_block;
            if (detect == "kinks")
                io::append_kink_block(detector_block,
                                      analysis::detect_kinks(result, analysis::Quantity::discord),
                                      result);
            else if (detect == "regrowth")
                io::append_regrowth_block(detector_block, analysis::detect_regrowth(result));
            else if (detect == "qpt")
                io::append_qpt_block(detector_block, result);

            std::ofstream file;
            std::ostream& os = detail::open_output(file, out_path, out);
            if (format == "json") {
                os << io::sweep_json(result).dump(2) << "\n";
            } else {
                io::write_sweep_csv(os, result);
                os << detector_block.str();
            }
            return 0;
        }

        if (figure->parsed()) {
            const auto* preset = presets::find_preset(preset_name);
            if (preset == nullptr) {
                err << "error: unknown preset '" << preset_name << "'. Valid presets:";
                for (const auto& n : presets::preset_names()) err << " " << n;
                err << "\n";
                return 2;
            }
            const auto files = presets::write_figure_files(*preset, out_dir, {}, fig_threads, gnuplot);
            for (const auto& f : files) out << f << "\n";
            return 0;
        }

        if (selftest_cmd->parsed()) return selftest::run(out) ? 0 : 1;
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace spincorr::cli
