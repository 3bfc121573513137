#pragma once

// Parameter sweeps over the model and detectors for the reported phenomena:
// derivative discontinuities (sudden change), discord regrowth in
// temperature, and the discord zero at the J = 0 critical point.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "spincorr/discord.hpp"
#include "spincorr/model.hpp"

namespace spincorr::analysis {

enum class SweepAxis { jx, jy, jz, j, delta, b, kt };

inline const char* axis_name(SweepAxis a) {
    switch (a) {
    case SweepAxis::jx: return "jx";
    case SweepAxis::jy: return "jy";
    case SweepAxis::jz: return "jz";
    case SweepAxis::j: return "j";
    case SweepAxis::delta: return "delta";
    case SweepAxis::b: return "b";
    case SweepAxis::kt: return "kT";
    }
    return "?";
}

inline SweepAxis parse_axis(const std::string& s) {
    if (s == "jx") return SweepAxis::jx;
    if (s == "jy") return SweepAxis::jy;
    if (s == "jz") return SweepAxis::jz;
    if (s == "j") return SweepAxis::j;
    if (s == "delta") return SweepAxis::delta;
    if (s == "b") return SweepAxis::b;
    if (s == "kT" || s == "kt") return SweepAxis::kt;
    throw std::invalid_argument("unknown sweep axis '" + s + "'");
}

enum class Quantity { discord, classical, mutual, concurrence, eof };

inline const char* quantity_name(Quantity q) {
    switch (q) {
    case Quantity::discord: return "discord";
    case Quantity::classical: return "classical_corr";
    case Quantity::mutual: return "mutual_info";
    case Quantity::concurrence: return "concurrence";
    case Quantity::eof: return "eof";
    }
    return "?";
}

inline double value_of(const discord::CorrelationReport& r, Quantity q) {
    switch (q) {
    case Quantity::discord: return r.discord;
    case Quantity::classical: return r.classical_corr;
    case Quantity::mutual: return r.mutual_info;
    case Quantity::concurrence: return r.concurrence;
    case Quantity::eof: return r.eof;
    }
    return 0.0;
}

struct AxisSpec {
    SweepAxis axis = SweepAxis::kt;
    double start = 0.0;
    double stop = 1.0;
    int count = 2;
};

inline void validate(const AxisSpec& a) {
    if (a.count < 2) throw std::invalid_argument("axis: count must be >= 2");
    if (!(a.start < a.stop)) throw std::invalid_argument("axis: start must be < stop");
}

/// Inclusive uniform grid; endpoints are exact and interior points are
/// start + span * i/(count-1), so symmetric ranges hit 0 exactly.
inline std::vector<double> axis_values(const AxisSpec& a) {
    validate(a);
    std::vector<double> v(static_cast<std::size_t>(a.count));
    const double span = a.stop - a.start;
    for (int i = 0; i < a.count; ++i)
        v[static_cast<std::size_t>(i)] =
            a.start + span * static_cast<double>(i) / static_cast<double>(a.count - 1);
    return v;
}

struct SweepSpec {
    model::ModelParams base;
    AxisSpec axis1;
    std::optional<AxisSpec> axis2;
    std::vector<Quantity> quantities{Quantity::discord, Quantity::classical, Quantity::mutual,
                                     Quantity::concurrence, Quantity::eof};
};

/// Apply one axis value to the parameter set. "j" sets jx = jy = jz; "delta"
/// sets jx = (Sigma + delta)/2, jy = (Sigma - delta)/2 at the Sigma of the
/// incoming parameters.
inline model::ModelParams apply_axis(model::ModelParams p, SweepAxis axis, double v) {
    switch (axis) {
    case SweepAxis::jx: p.jx = v; break;
    case SweepAxis::jy: p.jy = v; break;
    case SweepAxis::jz: p.jz = v; break;
    case SweepAxis::j: p.jx = p.jy = p.jz = v; break;
    case SweepAxis::delta: {
        const double sigma = p.jx + p.jy;
        p.jx = 0.5 * (sigma + v);
        p.jy = 0.5 * (sigma - v);
        break;
    }
    case SweepAxis::b: p.b = v; break;
    case SweepAxis::kt: p.kt = v; break;
    }
    return p;
}

struct SweepRow {
    double axis1 = 0.0;
    double axis2 = 0.0; // unused for single-axis sweeps
    discord::CorrelationReport report;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepRow> rows; // lexicographic: axis1 outer, axis2 inner
};

/// Evaluate quantum_discord over the grid. Rows come out in lexicographic
/// axis order regardless of the number of worker threads.
inline SweepResult run_sweep(const SweepSpec& spec, const discord::OptimizerConfig& cfg = {},
                             int threads = 1) {
    model::validate(spec.base);
    const auto v1 = axis_values(spec.axis1);
    std::vector<double> v2;
    if (spec.axis2) v2 = axis_values(*spec.axis2);
    const std::size_t n2 = spec.axis2 ? v2.size() : 1;
    const std::size_t total = v1.size() * n2;

    SweepResult result;
    result.spec = spec;
    result.rows.resize(total);

    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), total));

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    std::atomic<bool> failed{false};

    auto eval_point = [&](std::size_t flat) {
        const std::size_t i1 = flat / n2;
        const std::size_t i2 = flat % n2;
        SweepRow& row = result.rows[flat];
        row.axis1 = v1[i1];
        model::ModelParams p = apply_axis(spec.base, spec.axis1.axis, row.axis1);
        if (spec.axis2) {
            row.axis2 = v2[i2];
            p = apply_axis(p, spec.axis2->axis, row.axis2);
        }
        try {
            row.report = discord::quantum_discord(model::thermal_state(p), cfg);
        } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!failed.exchange(true)) {
                first_error = "sweep evaluation failed at " +
                              std::string(axis_name(spec.axis1.axis)) + "=" + std::to_string(row.axis1);
                if (spec.axis2)
                    first_error += std::string(", ") + axis_name(spec.axis2->axis) + "=" +
                                   std::to_string(row.axis2);
                first_error += ": " + std::string(e.what());
            }
        }
    };

    if (threads <= 1) {
        for (std::size_t flat = 0; flat < total && !failed.load(); ++flat) eval_point(flat);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t flat = next.fetch_add(1);
                    if (flat >= total || failed.load()) return;
                    eval_point(flat);
                }
            });
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw std::runtime_error(first_error);
    return result;
}

struct KinkReport {
    double location = 0.0;
    double left_slope = 0.0;
    double right_slope = 0.0;
    double strength = 0.0; // |right_slope - left_slope|
};

namespace detail {

inline std::vector<double> series_of(const SweepResult& r, Quantity q) {
    std::vector<double> y;
    y.reserve(r.rows.size());
    for (const auto& row : r.rows) y.push_back(value_of(row.report, q));
    return y;
}

inline void require_single_axis(const SweepResult& r, const char* who) {
    if (r.spec.axis2)
        throw std::invalid_argument(std::string(who) + ": requires a single-axis sweep");
    if (r.rows.size() != static_cast<std::size_t>(r.spec.axis1.count))
        throw std::invalid_argument(std::string(who) + ": malformed sweep result");
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n == 0) return 0.0;
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace detail

/// One-sided slope comparison at every interior point of a uniform series.
/// A point is a kink when |right - left| exceeds 10 max(h, median jump).
/// Returned reports are sorted by decreasing strength.
inline std::vector<KinkReport> detect_kinks(const SweepResult& r, Quantity q) {
    detail::require_single_axis(r, "detect_kinks");
    const std::size_t n = r.rows.size();
    if (n < 5) throw std::invalid_argument("detect_kinks: need at least 5 points");
    const auto y = detail::series_of(r, q);
    const double h = (r.spec.axis1.stop - r.spec.axis1.start) / static_cast<double>(r.spec.axis1.count - 1);

    std::vector<double> jumps(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double left = (y[i] - y[i - 1]) / h;
        const double right = (y[i + 1] - y[i]) / h;
        jumps[i - 1] = std::abs(right - left);
    }
    const double threshold = 10.0 * std::max(h, detail::median(jumps));

    std::vector<KinkReport> kinks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (jumps[i - 1] > threshold) {
            KinkReport k;
            k.location = r.rows[i].axis1;
            k.left_slope = (y[i] - y[i - 1]) / h;
            k.right_slope = (y[i + 1] - y[i]) / h;
            k.strength = jumps[i - 1];
            kinks.push_back(k);
        }
    }
    std::sort(kinks.begin(), kinks.end(),
              [](const KinkReport& a, const KinkReport& b) { return a.strength > b.strength; });
    return kinks;
}

struct RegrowthReport {
    double t_min = 0.0;   // temperature of the interior minimum
    double d_min = 0.0;   // discord there, strictly positive
    double rebound = 0.0; // max subsequent value minus d_min
};

/// Regrowth: an interior local minimum that stays strictly positive (> 1e-4,
/// which separates it from sudden-death-and-revival) followed by a rise
/// > 1e-3. The value eventually decays toward zero at high temperature, so
/// the minimum is a local one; when several qualify, the most prominent
/// (largest rebound) is reported.
inline std::optional<RegrowthReport> detect_regrowth(const SweepResult& r,
                                                     Quantity q = Quantity::discord) {
    detail::require_single_axis(r, "detect_regrowth");
    if (r.spec.axis1.axis != SweepAxis::kt)
        throw std::invalid_argument("detect_regrowth: requires a kT sweep");
    const std::size_t n = r.rows.size();
    if (n < 20) throw std::invalid_argument("detect_regrowth: need at least 20 points");
    const auto y = detail::series_of(r, q);

    std::optional<RegrowthReport> best;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] <= y[i - 1] && y[i] <= y[i + 1])) continue;
        if (!(y[i] > 1e-4)) continue;
        double after = y[i];
        for (std::size_t j = i + 1; j < n; ++j) after = std::max(after, y[j]);
        const double rebound = after - y[i];
        if (!(rebound > 1e-3)) continue;
        if (!best || rebound > best->rebound)
            best = RegrowthReport{r.rows[i].axis1, y[i], rebound};
    }
    return best;
}

struct SignatureNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The coupling value where the series vanishes (< 1e-9) at an isolated
/// point whose neighbors both exceed 1e-4. Errors when the zero set is not a
/// single interior point.
inline double qpt_signature(const SweepResult& r, Quantity q) {
    detail::require_single_axis(r, "qpt_signature");
    if (!(r.spec.axis1.start < 0.0 && r.spec.axis1.stop > 0.0))
        throw std::invalid_argument("qpt_signature: sweep must cross 0");
    const auto y = detail::series_of(r, q);
    const std::size_t n = y.size();

    std::vector<std::size_t> zeros;
    for (std::size_t i = 0; i < n; ++i)
        if (y[i] < 1e-9) zeros.push_back(i);
    if (zeros.empty()) throw SignatureNotFound("qpt signature not found: no zero on the sweep");
    if (zeros.size() > 1)
        throw SignatureNotFound("qpt signature not found: " + std::to_string(zeros.size()) +
                                " zeros, expected an isolated point");
    const std::size_t i = zeros[0];
    if (i == 0 || i + 1 == n || !(y[i - 1] > 1e-4) || !(y[i + 1] > 1e-4))
        throw SignatureNotFound("qpt signature not found: zero is not isolated above 1e-4");
    return r.rows[i].axis1;
}

} // namespace spincorr::analysis
