#pragma once

// Figure presets: frozen sweep specifications for the CLI `figure` command.
// Each preset fixes the model, the axes and the curve family; `figure` writes
// one CSV per curve (or per quantity for the heatmaps) and optionally a
// gnuplot script that plots them.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincorr/analysis.hpp"
#include "spincorr/io.hpp"

namespace spincorr::presets {

struct FigureCurve {
    std::string label;
    model::ModelParams base;
};

struct FigurePreset {
    std::string name;
    analysis::AxisSpec axis1;
    std::optional<analysis::AxisSpec> axis2;
    std::vector<FigureCurve> curves;
    std::vector<analysis::Quantity> quantities;
    bool per_quantity_files = false; // heatmaps: one file per quantity
};

inline const std::vector<FigurePreset>& all_presets() {
    using analysis::AxisSpec;
    using analysis::Quantity;
    using analysis::SweepAxis;
    static const std::vector<FigurePreset> presets = [] {
        std::vector<FigurePreset> v;

        // XXZ, B = 0: discord vs kT for J = 0.1 .. 0.4 at Jz = -0.5
        {
            FigurePreset f;
            f.name = "xxz-rise";
            f.axis1 = AxisSpec{SweepAxis::kt, 0.01, 2.0, 200};
            for (const double j : {0.1, 0.2, 0.3, 0.4})
                f.curves.push_back({"J" + io::format_number(j), {j, j, -0.5, 0.0, 1.0}});
            f.quantities = {Quantity::discord};
            v.push_back(f);
        }

        // XXZ, J = 0.4, Jz = -0.5: discord and classical correlation vs kT
        {
            FigurePreset f;
            f.name = "xxz-classical";
            f.axis1 = AxisSpec{SweepAxis::kt, 0.01, 2.0, 200};
            f.curves.push_back({"J0.4", {0.4, 0.4, -0.5, 0.0, 1.0}});
            f.quantities = {Quantity::discord, Quantity::classical};
            v.push_back(f);
        }

        // XXX, B = 0: discord and EoF heatmaps over (kT, J)
        {
            FigurePreset f;
            f.name = "xxx-map";
            f.axis1 = AxisSpec{SweepAxis::kt, 0.01, 2.0, 101};
            f.axis2 = AxisSpec{SweepAxis::j, -2.0, 2.0, 101};
            f.curves.push_back({"map", {0.0, 0.0, 0.0, 0.0, 1.0}});
            f.quantities = {Quantity::discord, Quantity::eof};
            f.per_quantity_files = true;
            v.push_back(f);
        }

        // Sudden change vs Delta = Jx - Jy at Jx + Jy = 2, Jz = 1
        {
            FigurePreset f;
            f.name = "sudden-change-delta";
            f.axis1 = AxisSpec{SweepAxis::delta, -4.0, 4.0, 161};
            for (const double kt : {0.01, 0.1, 0.6, 1.0})
                f.curves.push_back({"kT" + io::format_number(kt), {1.0, 1.0, 1.0, 0.0, kt}});
            f.quantities = {Quantity::discord, Quantity::eof};
            v.push_back(f);
        }

        // Sudden change vs Jz at Jx + Jy = 1, Delta = 7
        {
            FigurePreset f;
            f.name = "sudden-change-jz";
            f.axis1 = AxisSpec{SweepAxis::jz, -4.0, 4.0, 161};
            for (const double kt : {0.01, 0.1, 0.6, 1.0})
                f.curves.push_back({"kT" + io::format_number(kt), {4.0, -3.0, 0.0, 0.0, kt}});
            f.quantities = {Quantity::discord, Quantity::eof};
            v.push_back(f);
        }

        // Ising J = 1: EoF and discord heatmaps over (B, kT)
        {
            FigurePreset f;
            f.name = "ising-map";
            f.axis1 = AxisSpec{SweepAxis::b, 0.0, 3.0, 101};
            f.axis2 = AxisSpec{SweepAxis::kt, 0.01, 2.0, 101};
            f.curves.push_back({"map", {1.0, 0.0, 0.0, 0.0, 1.0}});
            f.quantities = {Quantity::eof, Quantity::discord};
            f.per_quantity_files = true;
            v.push_back(f);
        }

        // XY regrowth, isotropic Jx = Jy = 1: discord and EoF vs kT
        {
            FigurePreset f;
            f.name = "xy-regrowth-iso";
            f.axis1 = AxisSpec{SweepAxis::kt, 0.01, 3.0, 200};
            for (const double b : {1.1, 2.0, 2.5})
                f.curves.push_back({"B" + io::format_number(b), {1.0, 1.0, 0.0, b, 1.0}});
            f.quantities = {Quantity::discord, Quantity::eof};
            v.push_back(f);
        }

        // XY regrowth, anisotropic Jx = 1.3, Jy = 0.7
        {
            FigurePreset f;
            f.name = "xy-regrowth-aniso";
            f.axis1 = AxisSpec{SweepAxis::kt, 0.01, 3.0, 200};
            for (const double b : {1.1, 2.0, 2.5})
                f.curves.push_back({"B" + io::format_number(b), {1.3, 0.7, 0.0, b, 1.0}});
            f.quantities = {Quantity::discord, Quantity::eof};
            v.push_back(f);
        }
        return v;
    }();
    return presets;
}

inline const FigurePreset* find_preset(const std::string& name) {
    for (const auto& p : all_presets())
        if (p.name == name) return &p;
    return nullptr;
}

inline std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& p : all_presets()) names.push_back(p.name);
    return names;
}

/// Serialization of a preset's full sweep specification; pinned by tests.
inline nlohmann::json preset_json(const FigurePreset& f) {
    auto axis_json = [](const analysis::AxisSpec& a) {
        return nlohmann::json{{"axis", analysis::axis_name(a.axis)},
                              {"from", a.start},
                              {"to", a.stop},
                              {"points", a.count}};
    };
    nlohmann::json j;
    j["name"] = f.name;
    j["axis1"] = axis_json(f.axis1);
    if (f.axis2) j["axis2"] = axis_json(*f.axis2);
    j["per_quantity_files"] = f.per_quantity_files;
    j["quantities"] = nlohmann::json::array();
    for (const auto q : f.quantities) j["quantities"].push_back(analysis::quantity_name(q));
    j["curves"] = nlohmann::json::array();
    for (const auto& c : f.curves)
        j["curves"].push_back({{"label", c.label},
                               {"jx", c.base.jx},
                               {"jy", c.base.jy},
                               {"jz", c.base.jz},
                               {"b", c.base.b},
                               {"kT", c.base.kt}});
    return j;
}

inline nlohmann::json all_presets_json() {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : all_presets()) j.push_back(preset_json(p));
    return j;
}

namespace detail {

inline void write_gnuplot_script(const std::filesystem::path& dir, const FigurePreset& f,
                                 const std::vector<std::string>& files) {
    std::ofstream gp(dir / (f.name + ".gp"));
    gp << "# gnuplot script for preset " << f.name << "\n";
    gp << "set datafile separator ','\n";
    if (f.axis2) {
        gp << "set view map\n";
        for (const auto& file : files) {
            gp << "set title '" << file << "'\n";
            gp << "splot '" << file << "' using 1:2:3 with points palette pt 5 ps 0.6\n";
            gp << "pause -1\n";
        }
        return;
    }
    gp << "set xlabel '" << analysis::axis_name(f.axis1.axis) << "'\n";
    gp << "plot ";
    bool first = true;
    for (const auto& file : files) {
        for (std::size_t qi = 0; qi < f.quantities.size(); ++qi) {
            if (!first) gp << ", \\\n     ";
            first = false;
            gp << "'" << file << "' using 1:" << (qi + 2) << " with lines title '" << file << " "
               << analysis::quantity_name(f.quantities[qi]) << "'";
        }
    }
    gp << "\n";
}

} // namespace detail

/// Run a preset and write its CSV files (plus optional gnuplot script) into
/// out_dir. Returns the list of CSV file names written, in deterministic
/// order.
inline std::vector<std::string> write_figure_files(const FigurePreset& f,
                                                   const std::filesystem::path& out_dir,
                                                   const discord::OptimizerConfig& cfg = {},
                                                   int threads = 1, bool gnuplot = false) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> files;
    for (const auto& curve : f.curves) {
        analysis::SweepSpec spec;
        spec.base = curve.base;
        spec.axis1 = f.axis1;
        spec.axis2 = f.axis2;
        spec.quantities = f.quantities;
        const auto result = analysis::run_sweep(spec, cfg, threads);
        if (f.per_quantity_files) {
            for (const auto q : f.quantities) {
                const std::string file = f.name + "_" + analysis::quantity_name(q) + ".csv";
                std::ofstream os(out_dir / file);
                io::write_quantity_csv(os, result, {q});
                files.push_back(file);
            }
        } else {
            const std::string file = f.name + "_" + curve.label + ".csv";
            std::ofstream os(out_dir / file);
            io::write_quantity_csv(os, result, f.quantities);
            files.push_back(file);
        }
    }
    if (gnuplot) detail::write_gnuplot_script(out_dir, f, files);
    return files;
}

} // namespace spincorr::presets
