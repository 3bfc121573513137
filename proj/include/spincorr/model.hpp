#pragma once

// Two-qubit XYZ Heisenberg chain in a transverse field, in units with
// hbar = k = 1:
//
//   H = B (Sz(x)I + I(x)Sz) + Jx Sx(x)Sx + Jy Sy(x)Sy + Jz Sz(x)Sz,
//
// with S = sigma/2. The Gibbs state exp(-H/kT)/Z is an X-form matrix in the
// standard basis; it is produced both from the closed-form matrix elements
//
//   A11 = e^-a (cosh b - 4B sinh(b)/eta),  A12 = -Delta e^-a sinh(b)/eta,
//   A22 = e^-a (cosh b + 4B sinh(b)/eta),  B11 = e^a cosh g,  B12 = -e^a sinh g,
//   Z   = 2 (e^-a cosh b + e^a cosh g),
//
// where Delta = Jx - Jy, Sigma = Jx + Jy, eta = sqrt(Delta^2 + 16 B^2),
// a = Jz/(4kT), b = eta/(4kT), g = Sigma/(4kT), and independently from the
// eigendecomposition of H. The two routes cross-check each other.

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spincorr/qmat.hpp"

namespace spincorr::model {

struct ModelParams {
    double jx = 0.0;
    double jy = 0.0;
    double jz = 0.0;
    double b = 0.0;  // transverse field
    double kt = 1.0; // temperature times Boltzmann constant, > 0
};

inline void validate(const ModelParams& p) {
    if (!(std::isfinite(p.jx) && std::isfinite(p.jy) && std::isfinite(p.jz) &&
          std::isfinite(p.b) && std::isfinite(p.kt)))
        throw std::invalid_argument("ModelParams: all parameters must be finite");
    if (!(p.kt > 0.0))
        throw std::invalid_argument("ModelParams: kT must be strictly positive");
}

struct DerivedCouplings {
    double delta; // Jx - Jy
    double sigma; // Jx + Jy
    double eta;   // sqrt(delta^2 + 16 B^2)
    double alpha; // Jz / (4 kT)
    double beta;  // eta / (4 kT)
    double gamma; // sigma / (4 kT)
};

inline DerivedCouplings derived_couplings(const ModelParams& p) {
    validate(p);
    DerivedCouplings d;
    d.delta = p.jx - p.jy;
    d.sigma = p.jx + p.jy;
    d.eta = std::hypot(d.delta, 4.0 * p.b);
    d.alpha = p.jz / (4.0 * p.kt);
    d.beta = d.eta / (4.0 * p.kt);
    d.gamma = d.sigma / (4.0 * p.kt);
    return d;
}

/// Unnormalized X-form thermal matrix entries and the partition function.
struct XStateElements {
    double a11;
    double a12;
    double a22;
    double b11;
    double b12;
    double z;
};

inline qmat::ComplexMatrix build_hamiltonian(const ModelParams& p) {
    validate(p);
    using qmat::ComplexMatrix;
    const ComplexMatrix sx = qmat::cxd(0.5) * qmat::pauli_x();
    const ComplexMatrix sy = qmat::cxd(0.5) * qmat::pauli_y();
    const ComplexMatrix sz = qmat::cxd(0.5) * qmat::pauli_z();
    const ComplexMatrix eye = ComplexMatrix::identity(2);
    return qmat::cxd(p.b) * (qmat::tensor(sz, eye) + qmat::tensor(eye, sz)) +
           qmat::cxd(p.jx) * qmat::tensor(sx, sx) +
           qmat::cxd(p.jy) * qmat::tensor(sy, sy) +
           qmat::cxd(p.jz) * qmat::tensor(sz, sz);
}

namespace detail {

// Exponent arguments beyond this are evaluated in log-scaled form.
inline constexpr double kLogScaleCutoff = 700.0 * std::numbers::ln2;

// sinh(x)/x, accurate through x = 0.
inline double sinhc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 + x * x / 6.0;
    return std::sinh(x) / x;
}

} // namespace detail

/// Closed-form unnormalized thermal matrix elements. The eta = 0 point
/// (Delta = B = 0) uses the analytic limit sinh(beta)/eta -> 1/(4kT); when an
/// exponent argument exceeds 700 ln 2, the largest exponential is factored out
/// of every element and of Z, which leaves the normalized state unchanged.
///
/// A11 and A22 are evaluated as e^-a [(1 -+ w) e^b + (1 +- w) e^-b]/2 with
/// w = 4B/eta, and 1 - |w| as Delta^2/(eta (eta + 4|B|)); cosh(b) - w sinh(b)
/// cancels catastrophically when |w| -> 1 (field-dominated eta) and can even
/// round to a negative A11.
inline XStateElements thermal_state_closed_form(const ModelParams& p) {
    const DerivedCouplings d = derived_couplings(p);

    const double e1 = -d.alpha + d.beta;
    const double e2 = -d.alpha - d.beta;
    const double e3 = d.alpha + d.gamma;
    const double e4 = d.alpha - d.gamma;
    const double emax = std::max(std::max(std::abs(e1), std::abs(e2)),
                                 std::max(std::abs(e3), std::abs(e4)));

    // 1 - w and 1 + w, each without cancellation for its dangerous sign of B
    double one_minus_w = 1.0;
    double one_plus_w = 1.0;
    if (d.eta != 0.0) {
        const double fourb = 4.0 * p.b;
        if (p.b > 0.0) {
            one_minus_w = d.delta * d.delta / (d.eta * (d.eta + fourb));
            one_plus_w = 1.0 + fourb / d.eta;
        } else if (p.b < 0.0) {
            one_minus_w = 1.0 - fourb / d.eta;
            one_plus_w = d.delta * d.delta / (d.eta * (d.eta - fourb));
        }
    }
    const double delta_ratio = d.eta == 0.0 ? 0.0 : d.delta / d.eta;

    XStateElements x;
    if (emax <= detail::kLogScaleCutoff) {
        // sinh(beta)/eta = sinhc(beta)/(4kT) since beta = eta/(4kT)
        const double sinh_over_eta = detail::sinhc(d.beta) / (4.0 * p.kt);
        const double em = std::exp(-d.alpha);
        const double ep = std::exp(d.alpha);
        const double eb = std::exp(d.beta);
        const double ebm = std::exp(-d.beta);
        x.a11 = 0.5 * em * (one_minus_w * eb + one_plus_w * ebm);
        x.a12 = -d.delta * em * sinh_over_eta;
        x.a22 = 0.5 * em * (one_plus_w * eb + one_minus_w * ebm);
        x.b11 = ep * std::cosh(d.gamma);
        x.b12 = -ep * std::sinh(d.gamma);
        x.z = x.a11 + x.a22 + 2.0 * x.b11;
        return x;
    }

    const double m = std::max(std::max(e1, e2), std::max(e3, e4));
    const double f1 = std::exp(e1 - m);
    const double f2 = std::exp(e2 - m);
    const double f3 = std::exp(e3 - m);
    const double f4 = std::exp(e4 - m);
    x.a11 = 0.5 * (f1 * one_minus_w + f2 * one_plus_w);
    x.a12 = -0.5 * delta_ratio * (f1 - f2);
    x.a22 = 0.5 * (f1 * one_plus_w + f2 * one_minus_w);
    x.b11 = 0.5 * (f3 + f4);
    x.b12 = -0.5 * (f3 - f4);
    x.z = x.a11 + x.a22 + 2.0 * x.b11;
    return x;
}

/// Normalized 4x4 density matrix from X-form elements.
inline qmat::ComplexMatrix to_density_matrix(const XStateElements& x) {
    qmat::ComplexMatrix rho(4);
    rho(0, 0) = x.a11 / x.z;
    rho(1, 1) = x.b11 / x.z;
    rho(2, 2) = x.b11 / x.z;
    rho(3, 3) = x.a22 / x.z;
    rho(0, 3) = x.a12 / x.z;
    rho(3, 0) = x.a12 / x.z;
    rho(1, 2) = x.b12 / x.z;
    rho(2, 1) = x.b12 / x.z;
    return rho;
}

/// Gibbs state from the eigendecomposition of H, with the ground-state
/// energy factored out of the Boltzmann weights. Serves as the independent
/// cross-check of the closed form.
inline qmat::ComplexMatrix thermal_state_spectral(const ModelParams& p) {
    validate(p);
    const auto es = qmat::hermitian_eigen(build_hamiltonian(p));
    const int n = es.dim;
    const double e0 = es.eigenvalues[0]; // ascending order
    std::array<double, 4> w{};
    double z = 0.0;
    for (int k = 0; k < n; ++k) {
        w[static_cast<std::size_t>(k)] = std::exp(-(es.eigenvalues[static_cast<std::size_t>(k)] - e0) / p.kt);
        z += w[static_cast<std::size_t>(k)];
    }
    qmat::ComplexMatrix rho(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            qmat::cxd s = 0.0;
            for (int k = 0; k < n; ++k)
                s += es.eigenvectors(i, k) * (w[static_cast<std::size_t>(k)] / z) *
                     std::conj(es.eigenvectors(j, k));
            rho(i, j) = s;
        }
    return rho;
}

/// Convenience: normalized closed-form thermal state.
inline qmat::ComplexMatrix thermal_state(const ModelParams& p) {
    return to_density_matrix(thermal_state_closed_form(p));
}

} // namespace spincorr::model
