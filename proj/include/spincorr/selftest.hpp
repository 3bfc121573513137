#pragma once

// Built-in consistency checks exposed through the CLI `selftest` command:
// closed-form vs spectral Gibbs-state agreement, state sanity, concurrence
// route equivalence, optimizer dominance over the Pauli-axis candidates and
// the symmetry properties of the thermal states.

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "spincorr/analysis.hpp"
#include "spincorr/discord.hpp"
#include "spincorr/entanglement.hpp"
#include "spincorr/model.hpp"

namespace spincorr::selftest {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

inline model::ModelParams random_params(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coupling(-3.0, 3.0);
    std::uniform_real_distribution<double> field(0.0, 3.0);
    std::uniform_real_distribution<double> temperature(0.05, 5.0);
    model::ModelParams p;
    p.jx = coupling(rng);
    p.jy = coupling(rng);
    p.jz = coupling(rng);
    p.b = field(rng);
    p.kt = temperature(rng);
    return p;
}

inline std::vector<CheckResult> run_checks() {
    std::vector<CheckResult> out;

    { // closed form vs spectral Gibbs state, plus trace/positivity
        std::mt19937_64 rng(20100601);
        double max_diff = 0.0;
        double worst_trace = 0.0;
        double min_eig = 0.0;
        for (int i = 0; i < 1000; ++i) {
            const auto p = random_params(rng);
            const auto closed = model::thermal_state(p);
            const auto spectral = model::thermal_state_spectral(p);
            max_diff = std::max(max_diff, qmat::max_abs_diff(closed, spectral));
            worst_trace = std::max(worst_trace, std::abs(std::real(closed.trace()) - 1.0));
            const auto es = qmat::hermitian_eigen(closed);
            min_eig = std::min(min_eig, es.eigenvalues[0]);
        }
        out.push_back({"oracle agreement (1000 draws, max-entry)", max_diff < 1e-10,
                       "max diff " + std::to_string(max_diff)});
        out.push_back({"trace and positivity of thermal states",
                       worst_trace < 1e-10 && min_eig > -1e-10,
                       "trace err " + std::to_string(worst_trace) + ", min eig " +
                           std::to_string(min_eig)});
    }

    { // X-form concurrence vs general spin-flip route
        std::mt19937_64 rng(4257);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const auto p = random_params(rng);
            const auto x = model::thermal_state_closed_form(p);
            const double cx = entanglement::concurrence_x(x).concurrence;
            const double cg = entanglement::concurrence_general(model::to_density_matrix(x));
            worst = std::max(worst, std::abs(cx - cg));
        }
        out.push_back({"concurrence X-form vs general (200 draws)", worst < 1e-9,
                       "max diff " + std::to_string(worst)});
    }

    { // optimizer never loses to the Pauli-axis candidates
        std::mt19937_64 rng(991);
        constexpr double half_pi = 0.5 * std::numbers::pi;
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto p = random_params(rng);
            const auto rho = model::thermal_state(p);
            const double sa =
                qmat::von_neumann_entropy(qmat::partial_trace(rho, qmat::Subsystem::a));
            double pauli_best = -1.0;
            for (const auto& m : {discord::MeasurementBasis{0.0, 0.0},
                                  discord::MeasurementBasis{half_pi, 0.0},
                                  discord::MeasurementBasis{half_pi, half_pi}})
                pauli_best = std::max(pauli_best, sa - discord::conditional_entropy(rho, m));
            const auto cc = discord::classical_correlation(rho);
            worst = std::max(worst, pauli_best - cc.value);
        }
        out.push_back({"optimizer dominates Pauli candidates (50 draws)", worst < 1e-9,
                       "max shortfall " + std::to_string(worst)});
    }

    { // jx <-> jy swap and qubit swap leave discord unchanged
        std::mt19937_64 rng(771177);
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            auto p = random_params(rng);
            const double d1 = discord::quantum_discord(model::thermal_state(p)).discord;
            std::swap(p.jx, p.jy);
            const double d2 = discord::quantum_discord(model::thermal_state(p)).discord;
            worst = std::max(worst, std::abs(d1 - d2));
        }
        out.push_back({"jx <-> jy symmetry of discord (20 draws)", worst < 1e-7,
                       "max diff " + std::to_string(worst)});
    }

    return out;
}

/// Prints one line per check; returns true when everything passed.
inline bool run(std::ostream& os) {
    bool ok = true;
    for (const auto& c : run_checks()) {
        os << (c.passed ? "ok:   " : "FAIL: ") << c.name << " (" << c.detail << ")\n";
        ok = ok && c.passed;
    }
    return ok;
}

} // namespace spincorr::selftest
