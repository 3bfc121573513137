#pragma once

// Quantum mutual information, classical correlation maximized over von
// Neumann measurements on qubit B, and quantum discord D = I - Q.
//
// The measurement is parametrized by Bloch angles: the projectors are
// P1 = |v><v| and P2 = I - P1 with |v> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
// The maximization runs a coarse uniform grid over (theta, phi), always
// includes the three Pauli-axis candidates, and then refines locally around
// the incumbent with a shrinking window.

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "spincorr/entanglement.hpp"
#include "spincorr/qmat.hpp"

namespace spincorr::discord {

struct MeasurementBasis {
    double theta = 0.0; // polar angle in [0, pi]
    double phi = 0.0;   // azimuthal angle in [0, 2 pi)
};

/// Rank-1 projector |v><v| for the basis direction.
inline qmat::ComplexMatrix projector(const MeasurementBasis& m) {
    const double c = std::cos(0.5 * m.theta);
    const double s = std::sin(0.5 * m.theta);
    const qmat::cxd e = std::polar(1.0, m.phi);
    qmat::ComplexMatrix p(2);
    p(0, 0) = c * c;
    p(0, 1) = c * s * std::conj(e);
    p(1, 0) = c * s * e;
    p(1, 1) = s * s;
    return p;
}

/// The complete orthogonal pair {P1, I - P1}.
inline std::array<qmat::ComplexMatrix, 2> projectors(const MeasurementBasis& m) {
    const auto p1 = projector(m);
    return {p1, qmat::ComplexMatrix::identity(2) - p1};
}

struct OptimizerConfig {
    int coarse_theta_points = 64;
    int coarse_phi_points = 128;
    int refine_rounds = 6;
    int refine_window = 9; // points per axis in the refinement grid
    double refine_shrink = 4.0;
};

struct CorrelationReport {
    double mutual_info = 0.0;    // bits
    double classical_corr = 0.0; // bits
    double discord = 0.0;        // bits
    MeasurementBasis optimal_basis;
    double concurrence = 0.0;
    double eof = 0.0; // bits
};

/// I(rho) = S(rho_A) + S(rho_B) - S(rho), in bits.
inline double mutual_information(const qmat::ComplexMatrix& rho) {
    const double sa = qmat::von_neumann_entropy(qmat::partial_trace(rho, qmat::Subsystem::a));
    const double sb = qmat::von_neumann_entropy(qmat::partial_trace(rho, qmat::Subsystem::b));
    return sa + sb - qmat::von_neumann_entropy(rho);
}

/// S(rho | {P_j}) = sum_j p_j S(rho_j) with p_j = Tr[(I(x)P_j) rho (I(x)P_j)]
/// and rho_j the conditional state of qubit A. Outcomes with p_j < 1e-14
/// contribute zero.
///
/// The conditional state is evaluated as the quadratic form
/// (rho_j)_{a,a'} = <v_j| rho^{(a,a')} |v_j> over the 2x2 B-blocks of rho,
/// which is the partial trace of the projected state written without the
/// O(1)-magnitude intermediates of the literal operator sandwich; for nearly
/// pure states those intermediates cancel to O(p_j) and their absolute
/// rounding noise, divided by p_j, would show up as spurious negative
/// eigenvalues of rho_j.
inline double conditional_entropy(const qmat::ComplexMatrix& rho, const MeasurementBasis& m) {
    if (rho.dim() != 4)
        throw std::invalid_argument("conditional_entropy: input must be 4x4");
    const double c = std::cos(0.5 * m.theta);
    const double s = std::sin(0.5 * m.theta);
    const qmat::cxd e = std::polar(1.0, m.phi);
    const std::array<std::array<qmat::cxd, 2>, 2> directions{
        {{qmat::cxd(c), s * e}, {qmat::cxd(-s), c * e}}};

    double total = 0.0;
    for (const auto& v : directions) {
        qmat::ComplexMatrix cond(2);
        for (int a = 0; a < 2; ++a)
            for (int a2 = 0; a2 < 2; ++a2) {
                qmat::cxd acc = 0.0;
                for (int b = 0; b < 2; ++b)
                    for (int b2 = 0; b2 < 2; ++b2)
                        acc += std::conj(v[static_cast<std::size_t>(b)]) *
                               rho(2 * a + b, 2 * a2 + b2) * v[static_cast<std::size_t>(b2)];
                cond(a, a2) = acc;
            }
        const double pj = std::real(cond.trace());
        if (pj < 1e-14) continue;
        total += pj * qmat::von_neumann_entropy(qmat::cxd(1.0 / pj) * cond);
    }
    return total;
}

struct ClassicalCorrelation {
    double value = 0.0; // bits
    MeasurementBasis basis;
};

namespace detail {

inline double wrap_phi(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    return phi;
}

} // namespace detail

/// Q(rho) = max over von Neumann measurements on B of S(rho_A) - S(rho|{P_j}),
/// together with the maximizing basis. The returned value is never below the
/// best of the three Pauli-axis candidates.
inline ClassicalCorrelation classical_correlation(const qmat::ComplexMatrix& rho,
                                                  const OptimizerConfig& cfg = {}) {
    constexpr double pi = std::numbers::pi;
    const double sa = qmat::von_neumann_entropy(qmat::partial_trace(rho, qmat::Subsystem::a));

    ClassicalCorrelation best;
    best.value = -std::numeric_limits<double>::infinity();
    auto consider = [&](double theta, double phi) {
        const MeasurementBasis m{theta, phi};
        const double v = sa - conditional_entropy(rho, m);
        if (v > best.value) {
            best.value = v;
            best.basis = m;
        }
    };

    const int nt = cfg.coarse_theta_points;
    const int np = cfg.coarse_phi_points;
    for (int i = 0; i < nt; ++i) {
        const double theta = pi * static_cast<double>(i) / static_cast<double>(nt - 1);
        for (int j = 0; j < np; ++j)
            consider(theta, 2.0 * pi * static_cast<double>(j) / static_cast<double>(np));
    }
    // Pauli-axis candidates: z, x, y
    consider(0.0, 0.0);
    consider(0.5 * pi, 0.0);
    consider(0.5 * pi, 0.5 * pi);

    double half_t = pi / static_cast<double>(nt - 1);
    double half_p = 2.0 * pi / static_cast<double>(np);
    const int w = cfg.refine_window;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        const MeasurementBasis center = best.basis;
        for (int i = 0; i < w; ++i) {
            const double theta = std::clamp(
                center.theta - half_t + 2.0 * half_t * static_cast<double>(i) / static_cast<double>(w - 1), 0.0, pi);
            for (int j = 0; j < w; ++j) {
                const double phi = detail::wrap_phi(
                    center.phi - half_p + 2.0 * half_p * static_cast<double>(j) / static_cast<double>(w - 1));
                consider(theta, phi);
            }
        }
        half_t /= cfg.refine_shrink;
        half_p /= cfg.refine_shrink;
    }
    return best;
}

/// Full correlation report: D = I - Q plus the entanglement measures.
/// Discord in [-1e-7, 0) is optimizer slack and clamps to 0; anything more
/// negative is an error.
inline CorrelationReport quantum_discord(const qmat::ComplexMatrix& rho,
                                         const OptimizerConfig& cfg = {}) {
    CorrelationReport r;
    r.mutual_info = mutual_information(rho);
    const auto cc = classical_correlation(rho, cfg);
    r.classical_corr = cc.value;
    r.optimal_basis = cc.basis;
    double d = r.mutual_info - r.classical_corr;
    if (d < 0.0) {
        if (d < -1e-7)
            throw std::runtime_error("quantum_discord: negative discord beyond tolerance");
        d = 0.0;
    }
    r.discord = d;
    r.concurrence = entanglement::concurrence_general(rho);
    r.eof = entanglement::eof_from_concurrence(r.concurrence);
    return r;
}

} // namespace spincorr::discord
