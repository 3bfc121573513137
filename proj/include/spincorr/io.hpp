#pragma once

// CSV and JSON serialization of sweep results and single-point reports.
// CSV: UTF-8, comma separator, '.' decimal, '#'-prefixed comment lines with
// metadata before the header, numbers printed with 12 significant digits.

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spincorr/analysis.hpp"
#include "spincorr/version.hpp"

namespace spincorr::io {

inline std::string format_number(double v, int digits = 12) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline void write_params_comment(std::ostream& os, const model::ModelParams& p) {
    os << "# params: jx=" << format_number(p.jx) << " jy=" << format_number(p.jy)
       << " jz=" << format_number(p.jz) << " b=" << format_number(p.b)
       << " kT=" << format_number(p.kt) << "\n";
}

inline void write_axis_comment(std::ostream& os, const char* tag, const analysis::AxisSpec& a) {
    os << "# " << tag << ": " << analysis::axis_name(a.axis) << " from " << format_number(a.start)
       << " to " << format_number(a.stop) << " points " << a.count << "\n";
}

/// Full sweep CSV: axis column(s) followed by every report field.
inline void write_sweep_csv(std::ostream& os, const analysis::SweepResult& r) {
    os << "# spincorr " << kVersion << "\n";
    write_params_comment(os, r.spec.base);
    write_axis_comment(os, "axis1", r.spec.axis1);
    if (r.spec.axis2) write_axis_comment(os, "axis2", *r.spec.axis2);

    os << analysis::axis_name(r.spec.axis1.axis);
    if (r.spec.axis2) os << ',' << analysis::axis_name(r.spec.axis2->axis);
    os << ",mutual_info,classical_corr,discord,concurrence,eof,theta_opt,phi_opt\n";
    for (const auto& row : r.rows) {
        os << format_number(row.axis1);
        if (r.spec.axis2) os << ',' << format_number(row.axis2);
        const auto& rep = row.report;
        os << ',' << format_number(rep.mutual_info) << ',' << format_number(rep.classical_corr)
           << ',' << format_number(rep.discord) << ',' << format_number(rep.concurrence) << ','
           << format_number(rep.eof) << ',' << format_number(rep.optimal_basis.theta) << ','
           << format_number(rep.optimal_basis.phi) << "\n";
    }
}

/// Curve CSV for figure output: axis column plus the selected quantities.
inline void write_quantity_csv(std::ostream& os, const analysis::SweepResult& r,
                               const std::vector<analysis::Quantity>& quantities) {
    os << "# spincorr " << kVersion << "\n";
    write_params_comment(os, r.spec.base);
    write_axis_comment(os, "axis1", r.spec.axis1);
    if (r.spec.axis2) write_axis_comment(os, "axis2", *r.spec.axis2);

    os << analysis::axis_name(r.spec.axis1.axis);
    if (r.spec.axis2) os << ',' << analysis::axis_name(r.spec.axis2->axis);
    for (const auto q : quantities) os << ',' << analysis::quantity_name(q);
    os << "\n";
    for (const auto& row : r.rows) {
        os << format_number(row.axis1);
        if (r.spec.axis2) os << ',' << format_number(row.axis2);
        for (const auto q : quantities) os << ',' << format_number(value_of(row.report, q));
        os << "\n";
    }
}

inline void append_kink_block(std::ostream& os, const std::vector<analysis::KinkReport>& kinks,
                              const analysis::SweepResult& r) {
    os << "# kinks: " << kinks.size() << "\n";
    for (const auto& k : kinks)
        os << "# kink at " << analysis::axis_name(r.spec.axis1.axis) << "="
           << format_number(k.location) << " left_slope=" << format_number(k.left_slope)
           << " right_slope=" << format_number(k.right_slope)
           << " strength=" << format_number(k.strength) << "\n";
}

inline void append_regrowth_block(std::ostream& os,
                                  const std::optional<analysis::RegrowthReport>& rep) {
    if (!rep) {
        os << "# regrowth: none\n";
        return;
    }
    os << "# regrowth: at kT=" << format_number(rep->t_min) << " d_min=" << format_number(rep->d_min)
       << " rebound=" << format_number(rep->rebound) << "\n";
}

inline void append_qpt_block(std::ostream& os, const analysis::SweepResult& r) {
    try {
        const double at = analysis::qpt_signature(r, analysis::Quantity::discord);
        os << "# qpt: at " << analysis::axis_name(r.spec.axis1.axis) << "=" << format_number(at)
           << "\n";
    } catch (const analysis::SignatureNotFound& e) {
        os << "# qpt: none (" << e.what() << ")\n";
    }
}

inline nlohmann::json report_json(const model::ModelParams& p,
                                  const discord::CorrelationReport& r) {
    return nlohmann::json{{"jx", p.jx},
                          {"jy", p.jy},
                          {"jz", p.jz},
                          {"b", p.b},
                          {"kT", p.kt},
                          {"mutual_info", r.mutual_info},
                          {"classical_corr", r.classical_corr},
                          {"discord", r.discord},
                          {"concurrence", r.concurrence},
                          {"eof", r.eof},
                          {"theta_opt", r.optimal_basis.theta},
                          {"phi_opt", r.optimal_basis.phi}};
}

inline nlohmann::json sweep_json(const analysis::SweepResult& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows) {
        nlohmann::json jr;
        jr[analysis::axis_name(r.spec.axis1.axis)] = row.axis1;
        if (r.spec.axis2) jr[analysis::axis_name(r.spec.axis2->axis)] = row.axis2;
        jr["mutual_info"] = row.report.mutual_info;
        jr["classical_corr"] = row.report.classical_corr;
        jr["discord"] = row.report.discord;
        jr["concurrence"] = row.report.concurrence;
        jr["eof"] = row.report.eof;
        jr["theta_opt"] = row.report.optimal_basis.theta;
        jr["phi_opt"] = row.report.optimal_basis.phi;
        rows.push_back(std::move(jr));
    }
    return rows;
}

struct ParsedCsv {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> comments;
};

inline ParsedCsv parse_csv(std::istream& is) {
    ParsedCsv out;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            out.comments.push_back(line);
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!have_header) {
            out.columns = fields;
            have_header = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (const auto& f : fields) row.push_back(std::stod(f));
        out.rows.push_back(std::move(row));
    }
    return out;
}

} // namespace spincorr::io
