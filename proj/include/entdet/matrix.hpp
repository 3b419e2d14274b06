#pragma once

// Dense complex-matrix helpers shared by the whole library: Kronecker
// products, Schatten norms via SVD, and Hermitian eigendecomposition.
// Everything is carried by Eigen::MatrixXcd.

#include <Eigen/Dense>

#include <complex>
// Bind LAPACKE's complex types to std::complex so Eigen buffers pass through
// without conversion.
#ifndef LAPACK_COMPLEX_CUSTOM
#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entdet {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;
using index_t = Eigen::Index;

// max entrywise deviation from a = a^dagger accepted before rejecting input
inline constexpr double tol_herm = 1e-10;

namespace detail {

inline std::string to_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

}  // namespace detail

inline cmat dagger(const cmat& a) { return a.adjoint(); }

// a (x) b with row-major blocks: subsystem A outer, B inner, so the entry at
// row i*b.rows()+k, column j*b.cols()+l is a(i,j)*b(k,l).
inline cmat kron(const cmat& a, const cmat& b) {
    constexpr index_t max_index = std::numeric_limits<index_t>::max();
    if (a.rows() > 0 && b.rows() > max_index / a.rows())
        throw std::invalid_argument("kron: row count overflows");
    if (a.cols() > 0 && b.cols() > max_index / a.cols())
        throw std::invalid_argument("kron: column count overflows");
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace detail {

inline bool row_is_zero(const cmat& a, index_t i) {
    for (index_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != cplx(0.0, 0.0)) return false;
    return true;
}

inline bool col_is_zero(const cmat& a, index_t j) {
    for (index_t i = 0; i < a.rows(); ++i)
        if (a(i, j) != cplx(0.0, 0.0)) return false;
    return true;
}

// Removing rows/columns that are exactly zero discards only zero singular
// values, so Schatten norms are unchanged. The structured example states have
// mostly-zero realignments; this keeps their SVDs small.
inline cmat drop_zero_rows_cols(const cmat& a, bool& dropped) {
    std::vector<index_t> rows, cols;
    rows.reserve(a.rows());
    cols.reserve(a.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        if (!row_is_zero(a, i)) rows.push_back(i);
    for (index_t j = 0; j < a.cols(); ++j)
        if (!col_is_zero(a, j)) cols.push_back(j);
    dropped = rows.size() != static_cast<size_t>(a.rows()) ||
              cols.size() != static_cast<size_t>(a.cols());
    if (!dropped) return a;
    cmat out(rows.size(), cols.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols.size(); ++j)
            out(i, j) = a(rows[i], cols[j]);
    return out;
}

// Singular values of the nonzero core; trailing zeros are left implicit.
// LAPACK zgesdd does the work: Eigen's BDCSVD in 3.4.0 miscomputes matrices
// with heavily repeated singular values, which our structured states produce.
inline rvec nonzero_singular_values(const cmat& a) {
    if (!a.allFinite())
        throw std::invalid_argument("singular values: non-finite entries");
    bool dropped = false;
    cmat core = drop_zero_rows_cols(a, dropped);
    if (core.rows() == 0 || core.cols() == 0) return rvec::Zero(0);
    const lapack_int m = static_cast<lapack_int>(core.rows());
    const lapack_int n = static_cast<lapack_int>(core.cols());
    rvec s(std::min(m, n));
    // 'N': singular values only; core is column-major and gets destroyed
    const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', m, n, core.data(), m,
                                           s.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw std::runtime_error("singular values: SVD did not converge (zgesdd info " +
                                 std::to_string(info) + ")");
    return s;
}

}  // namespace detail

// (sum_i s_i^p)^(1/p) over the singular values of a; p = 1 is the trace norm,
// p = 2 the Hilbert-Schmidt norm.
inline double schatten_norm(const cmat& a, double p) {
    if (!(p >= 1.0))
        throw std::invalid_argument("schatten_norm: p must be >= 1");
    const rvec s = detail::nonzero_singular_values(a);
    if (p == 1.0) return s.sum();
    if (p == 2.0) return s.norm();
    double acc = 0.0;
    for (index_t i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
    return std::pow(acc, 1.0 / p);
}

inline double hermiticity_defect(const cmat& a) {
    if (a.size() == 0) return 0.0;
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

struct EigHermitian {
    rvec values;   // ascending
    cmat vectors;  // orthonormal columns, same order
};

// Eigendecomposition of a Hermitian matrix. Input within tol_herm of
// Hermitian is symmetrized first; anything further off is rejected with the
// measured asymmetry.
inline EigHermitian eig_hermitian(const cmat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    if (!a.allFinite())
        throw std::invalid_argument("eig_hermitian: non-finite entries");
    const double defect = hermiticity_defect(a);
    if (defect > tol_herm)
        throw std::invalid_argument(
            "eig_hermitian: not Hermitian, max |a - a^dagger| = " + detail::to_sci(defect));
    const cmat sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<cmat> es(sym);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

// Minimum eigenvalue only. Indices whose row and column are exactly zero are
// decoupled with eigenvalue 0 and get dropped before the solve, which keeps
// the large sparse-structured example states cheap.
inline double min_eig_hermitian(const cmat& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("min_eig_hermitian: matrix not square");
    if (!a.allFinite())
        throw std::invalid_argument("min_eig_hermitian: non-finite entries");
    const double defect = hermiticity_defect(a);
    if (defect > tol_herm)
        throw std::invalid_argument(
            "min_eig_hermitian: not Hermitian, max |a - a^dagger| = " + detail::to_sci(defect));
    const cmat sym = 0.5 * (a + a.adjoint());
    std::vector<index_t> keep;
    keep.reserve(sym.rows());
    for (index_t i = 0; i < sym.rows(); ++i)
        if (!detail::row_is_zero(sym, i)) keep.push_back(i);
    if (keep.empty()) return 0.0;
    cmat core(keep.size(), keep.size());
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j)
            core(i, j) = sym(keep[i], keep[j]);
    Eigen::SelfAdjointEigenSolver<cmat> es(core, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("min_eig_hermitian: eigensolver did not converge");
    const double m = es.eigenvalues()(0);
    const bool dropped = keep.size() != static_cast<size_t>(sym.rows());
    return dropped ? std::min(m, 0.0) : m;
}

}  // namespace entdet
