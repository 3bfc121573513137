#pragma once

// Dense complex linear algebra for one- and two-qubit operators (2x2 and
// 4x4 Hermitian matrices): tensor products, partial traces, a cyclic-Jacobi
// Hermitian eigensolver, spectral matrix functions and von Neumann entropy.
// Standard basis ordering is {|00>, |01>, |10>, |11>} with qubit 1 as the
// left tensor factor.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace spincorr::qmat {

using cxd = std::complex<double>;

/// Square complex matrix of dimension 2 or 4, row-major inline storage.
class ComplexMatrix {
public:
    ComplexMatrix() : dim_(2) {}

    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim != 2 && dim != 4)
            throw std::invalid_argument("ComplexMatrix: dim must be 2 or 4");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    cxd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * dim_ + j)]; }
    cxd operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * dim_ + j)]; }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
        return r;
    }

    /// Entrywise complex conjugate (no transpose).
    ComplexMatrix conjugate() const {
        ComplexMatrix r(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(i, j));
        return r;
    }

    cxd trace() const {
        cxd t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < dim_ * dim_; ++i) m = std::max(m, std::abs(a_[static_cast<std::size_t>(i)]));
        return m;
    }

    /// max_ij |m(i,j) - conj(m(j,i))|
    double hermiticity_error() const {
        double e = 0.0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j)
                e = std::max(e, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        return e;
    }

    friend ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
        check_same_dim(x, y);
        ComplexMatrix r(x.dim_);
        for (int i = 0; i < x.dim_ * x.dim_; ++i)
            r.a_[static_cast<std::size_t>(i)] = x.a_[static_cast<std::size_t>(i)] + y.a_[static_cast<std::size_t>(i)];
        return r;
    }

    friend ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
        check_same_dim(x, y);
        ComplexMatrix r(x.dim_);
        for (int i = 0; i < x.dim_ * x.dim_; ++i)
            r.a_[static_cast<std::size_t>(i)] = x.a_[static_cast<std::size_t>(i)] - y.a_[static_cast<std::size_t>(i)];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
        check_same_dim(x, y);
        ComplexMatrix r(x.dim_);
        for (int i = 0; i < x.dim_; ++i)
            for (int j = 0; j < x.dim_; ++j) {
                cxd s = 0.0;
                for (int k = 0; k < x.dim_; ++k) s += x(i, k) * y(k, j);
                r(i, j) = s;
            }
        return r;
    }

    friend ComplexMatrix operator*(cxd c, const ComplexMatrix& x) {
        ComplexMatrix r(x.dim_);
        for (int i = 0; i < x.dim_ * x.dim_; ++i)
            r.a_[static_cast<std::size_t>(i)] = c * x.a_[static_cast<std::size_t>(i)];
        return r;
    }

    friend ComplexMatrix operator*(const ComplexMatrix& x, cxd c) { return c * x; }

private:
    static void check_same_dim(const ComplexMatrix& x, const ComplexMatrix& y) {
        if (x.dim_ != y.dim_)
            throw std::invalid_argument("ComplexMatrix: dimension mismatch");
    }

    int dim_;
    std::array<cxd, 16> a_{};
};

inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < x.dim(); ++i)
        for (int j = 0; j < x.dim(); ++j) m = std::max(m, std::abs(x(i, j) - y(i, j)));
    return m;
}

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2);
    m(0, 1) = cxd(0.0, -1.0);
    m(1, 0) = cxd(0.0, 1.0);
    return m;
}

inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

/// Kronecker product with qubit 1 as the left factor:
/// (a (x) b)(2i+k, 2j+l) = a(i,j) b(k,l).
inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2)
        throw std::invalid_argument("tensor: both factors must be 2x2");
    ComplexMatrix r(4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

enum class Subsystem { a, b };

/// Reduced 2x2 matrix of a two-qubit operator, tracing out the other qubit.
inline ComplexMatrix partial_trace(const ComplexMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4)
        throw std::invalid_argument("partial_trace: input must be 4x4");
    ComplexMatrix r(2);
    switch (keep) {
    case Subsystem::a:
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
        return r;
    case Subsystem::b:
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = rho(i, j) + rho(2 + i, 2 + j);
        return r;
    }
    throw std::invalid_argument("partial_trace: invalid subsystem id");
}

struct HermitianEigenSystem {
    int dim = 0;
    std::array<double, 4> eigenvalues{}; // ascending, first dim entries used
    ComplexMatrix eigenvectors;          // orthonormal columns, paired with eigenvalues
};

namespace detail {

inline constexpr double kJacobiOffTol = 1e-13; // off-diagonal Frobenius norm target
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_fro(const ComplexMatrix& m) {
    double s = 0.0;
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j) s += 2.0 * std::norm(m(i, j));
    return std::sqrt(s);
}

} // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Each rotation absorbs the phase of the pivot entry and then applies the
/// classical real rotation that annihilates it.
inline HermitianEigenSystem hermitian_eigen(const ComplexMatrix& m) {
    if (m.hermiticity_error() > 1e-10)
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

    const int n = m.dim();
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = std::real(m(i, i));
        for (int j = i + 1; j < n; ++j) {
            const cxd avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }

    ComplexMatrix v = ComplexMatrix::identity(n);
    bool converged = false;
    for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
        if (detail::off_diagonal_fro(a) < detail::kJacobiOffTol) {
            converged = true;
            break;
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cxd apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const cxd phase = apq / r;
                const double app = std::real(a(p, p));
                const double aqq = std::real(a(q, q));
                const double tau = (aqq - app) / (2.0 * r);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const cxd akp = a(k, p);
                    const cxd akq = a(k, q);
                    a(k, p) = akp * c - akq * s * std::conj(phase);
                    a(k, q) = akp * s + akq * c * std::conj(phase);
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                for (int k = 0; k < n; ++k) {
                    const cxd vkp = v(k, p);
                    const cxd vkq = v(k, q);
                    v(k, p) = vkp * c - vkq * s * std::conj(phase);
                    v(k, q) = vkp * s + vkq * c * std::conj(phase);
                }
            }
        }
    }
    if (!converged && detail::off_diagonal_fro(a) >= detail::kJacobiOffTol)
        throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");

    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.begin() + n,
              [&](int i, int j) { return std::real(a(i, i)) < std::real(a(j, j)); });

    HermitianEigenSystem es;
    es.dim = n;
    es.eigenvectors = ComplexMatrix(n);
    for (int c = 0; c < n; ++c) {
        es.eigenvalues[static_cast<std::size_t>(c)] = std::real(a(order[static_cast<std::size_t>(c)], order[static_cast<std::size_t>(c)]));
        for (int k = 0; k < n; ++k) es.eigenvectors(k, c) = v(k, order[static_cast<std::size_t>(c)]);
    }
    return es;
}

/// V f(lambda) V^dagger for a Hermitian input.
template <typename F>
inline ComplexMatrix matrix_function(const ComplexMatrix& m, F&& f) {
    const auto es = hermitian_eigen(m);
    const int n = es.dim;
    std::array<double, 4> fl{};
    for (int k = 0; k < n; ++k) fl[static_cast<std::size_t>(k)] = f(es.eigenvalues[static_cast<std::size_t>(k)]);
    ComplexMatrix r(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cxd s = 0.0;
            for (int k = 0; k < n; ++k)
                s += es.eigenvectors(i, k) * fl[static_cast<std::size_t>(k)] * std::conj(es.eigenvectors(j, k));
            r(i, j) = s;
        }
    return r;
}

/// -p log2 p - (1-p) log2 (1-p) with 0 log 0 = 0.
inline double binary_entropy(double p) {
    p = std::clamp(p, 0.0, 1.0);
    double s = 0.0;
    if (p > 0.0) s -= p * std::log2(p);
    if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
    return s;
}

/// S(rho) = -Tr(rho log2 rho), in bits. Eigenvalues in [-1e-9, 0) are treated
/// as rounding noise and clamped to 0; anything more negative is an error.
inline double von_neumann_entropy(const ComplexMatrix& rho) {
    const cxd tr = rho.trace();
    if (std::abs(tr - cxd(1.0, 0.0)) > 1e-9)
        throw std::invalid_argument("von_neumann_entropy: trace must be 1");
    const auto es = hermitian_eigen(rho);
    double s = 0.0;
    for (int k = 0; k < es.dim; ++k) {
        double p = es.eigenvalues[static_cast<std::size_t>(k)];
        if (p < -1e-9)
            throw std::runtime_error("von_neumann_entropy: negative eigenvalue " + std::to_string(p));
        p = std::clamp(p, 0.0, 1.0);
        if (p > 0.0) s -= p * std::log2(p);
    }
    return s;
}

} // namespace spincorr::qmat
