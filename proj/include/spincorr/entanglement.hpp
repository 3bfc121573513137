#pragma once

// Concurrence and entanglement of formation for two qubits, through the
// general spin-flip procedure and through the X-form shortcut
// C = 2 max{0, L1, L2}/Z with L1 = |B12| - sqrt(A11 A22), L2 = |A12| - B11.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spincorr/model.hpp"
#include "spincorr/qmat.hpp"

namespace spincorr::entanglement {

enum class ConcurrenceBranch { none, lambda1, lambda2 };

struct ConcurrenceBreakdown {
    double lambda1;     // |B12| - sqrt(A11 A22), unnormalized
    double lambda2;     // |A12| - B11, unnormalized
    double concurrence; // 2 max{0, lambda1, lambda2} / Z
    ConcurrenceBranch branch;
};

inline ConcurrenceBreakdown concurrence_x(const model::XStateElements& x) {
    ConcurrenceBreakdown r{};
    r.lambda1 = std::abs(x.b12) - std::sqrt(x.a11 * x.a22);
    r.lambda2 = std::abs(x.a12) - x.b11;
    const double lmax = std::max(r.lambda1, r.lambda2);
    r.concurrence = std::max(0.0, 2.0 * lmax / x.z);
    if (r.concurrence == 0.0)
        r.branch = ConcurrenceBranch::none;
    else
        r.branch = r.lambda1 >= r.lambda2 ? ConcurrenceBranch::lambda1 : ConcurrenceBranch::lambda2;
    return r;
}

namespace detail {

// Extended-precision 4x4 Hermitian helpers for the spin-flip spectrum. The
// concurrence takes square roots of the eigenvalues of sqrt(rho) rho~
// sqrt(rho); eigenvalues near zero carry the rounding noise of the matrix
// products, and sqrt turns double-precision noise of ~1e-16 into ~1e-8 -- too
// coarse for the 1e-9 agreement with the X-form shortcut.
using cxl = std::complex<long double>;
using Mat4L = std::array<cxl, 16>;

inline Mat4L multiply(const Mat4L& x, const Mat4L& y) {
    Mat4L r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cxl s = 0.0L;
            for (int k = 0; k < 4; ++k)
                s += x[static_cast<std::size_t>(4 * i + k)] * y[static_cast<std::size_t>(4 * k + j)];
            r[static_cast<std::size_t>(4 * i + j)] = s;
        }
    return r;
}

// cyclic Jacobi; eigenvectors are accumulated into v when it is non-null
inline void jacobi4(Mat4L& a, std::array<long double, 4>& eig, Mat4L* v) {
    if (v != nullptr) {
        v->fill(0.0L);
        for (int i = 0; i < 4; ++i) (*v)[static_cast<std::size_t>(5 * i)] = 1.0L;
    }
    auto at = [](Mat4L& m, int i, int j) -> cxl& { return m[static_cast<std::size_t>(4 * i + j)]; };
    for (int sweep = 0; sweep < 100; ++sweep) {
        long double off = 0.0L;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) off += std::norm(at(a, i, j));
        if (std::sqrt(2.0L * off) < 1e-17L) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const cxl apq = at(a, p, q);
                const long double r = std::abs(apq);
                if (r == 0.0L) continue;
                const cxl phase = apq / r;
                const long double app = std::real(at(a, p, p));
                const long double aqq = std::real(at(a, q, q));
                const long double tau = (aqq - app) / (2.0L * r);
                const long double t =
                    (tau >= 0.0L ? 1.0L : -1.0L) / (std::abs(tau) + std::sqrt(1.0L + tau * tau));
                const long double c = 1.0L / std::sqrt(1.0L + t * t);
                const long double s = t * c;
                at(a, p, p) = app - t * r;
                at(a, q, q) = aqq + t * r;
                at(a, p, q) = 0.0L;
                at(a, q, p) = 0.0L;
                for (int k = 0; k < 4; ++k) {
                    if (k == p || k == q) continue;
                    const cxl akp = at(a, k, p);
                    const cxl akq = at(a, k, q);
                    at(a, k, p) = akp * c - akq * s * std::conj(phase);
                    at(a, k, q) = akp * s + akq * c * std::conj(phase);
                    at(a, p, k) = std::conj(at(a, k, p));
                    at(a, q, k) = std::conj(at(a, k, q));
                }
                if (v != nullptr)
                    for (int k = 0; k < 4; ++k) {
                        const cxl vkp = (*v)[static_cast<std::size_t>(4 * k + p)];
                        const cxl vkq = (*v)[static_cast<std::size_t>(4 * k + q)];
                        (*v)[static_cast<std::size_t>(4 * k + p)] = vkp * c - vkq * s * std::conj(phase);
                        (*v)[static_cast<std::size_t>(4 * k + q)] = vkp * s + vkq * c * std::conj(phase);
                    }
            }
    }
    for (int i = 0; i < 4; ++i) eig[static_cast<std::size_t>(i)] = std::real(a[static_cast<std::size_t>(5 * i)]);
}

} // namespace detail

/// Wootters concurrence C = max(0, l1 - l2 - l3 - l4), the l_i being the
/// decreasingly ordered square roots of the eigenvalues of rho rho~ with
/// rho~ = (sy (x) sy) rho* (sy (x) sy). Evaluated through the Hermitian
/// product sqrt(rho) rho~ sqrt(rho), which shares its spectrum with rho rho~;
/// the product chain runs in extended precision (see detail above).
inline double concurrence_general(const qmat::ComplexMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("concurrence_general: input must be 4x4");
    if (rho.hermiticity_error() > 1e-10)
        throw std::invalid_argument("concurrence_general: input is not Hermitian");

    detail::Mat4L r{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto e = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            r[static_cast<std::size_t>(4 * i + j)] = detail::cxl(e.real(), e.imag());
        }

    // sqrt(rho) from the clamped eigendecomposition
    detail::Mat4L work = r;
    std::array<long double, 4> eig{};
    detail::Mat4L vec{};
    detail::jacobi4(work, eig, &vec);
    detail::Mat4L sqrt_rho{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            detail::cxl s = 0.0L;
            for (int k = 0; k < 4; ++k)
                s += vec[static_cast<std::size_t>(4 * i + k)] *
                     std::sqrt(std::max(0.0L, eig[static_cast<std::size_t>(k)])) *
                     std::conj(vec[static_cast<std::size_t>(4 * j + k)]);
            sqrt_rho[static_cast<std::size_t>(4 * i + j)] = s;
        }

    // rho~ = (sy (x) sy) rho* (sy (x) sy): entrywise (y_i y_j) conj(rho[3-i][3-j])
    constexpr long double y[4] = {-1.0L, 1.0L, 1.0L, -1.0L};
    detail::Mat4L rho_tilde{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            rho_tilde[static_cast<std::size_t>(4 * i + j)] =
                y[i] * y[j] * std::conj(r[static_cast<std::size_t>(4 * (3 - i) + (3 - j))]);

    detail::Mat4L prod = detail::multiply(detail::multiply(sqrt_rho, rho_tilde), sqrt_rho);
    std::array<long double, 4> lambda{};
    detail::jacobi4(prod, lambda, nullptr);
    std::array<long double, 4> l{};
    for (int k = 0; k < 4; ++k)
        l[static_cast<std::size_t>(k)] = std::sqrt(std::max(0.0L, lambda[static_cast<std::size_t>(k)]));
    std::sort(l.begin(), l.end(), std::greater<>());
    return static_cast<double>(std::max(0.0L, l[0] - l[1] - l[2] - l[3]));
}

/// EoF(C) = h((1 + sqrt(1 - C^2))/2) in bits, strictly increasing on [0,1].
inline double eof_from_concurrence(double c) {
    if (c < -1e-12 || c > 1.0 + 1e-12)
        throw std::domain_error("eof_from_concurrence: concurrence outside [0,1]");
    c = std::clamp(c, 0.0, 1.0);
    const double f = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    return qmat::binary_entropy(f);
}

} // namespace spincorr::entanglement
