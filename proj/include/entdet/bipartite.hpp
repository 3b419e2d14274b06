#pragma once

// Structural maps on bipartite operators: partial trace, partial transpose,
// realignment, and the spectral route to the reduced states. The composite
// index convention is row-major with subsystem A outer, B inner:
// (m, mu) -> m*d_b + mu.

#include "matrix.hpp"

namespace entdet {

enum class Subsystem { A, B };

struct BipartiteDims {
    index_t d_a = 0;
    index_t d_b = 0;
    index_t total() const { return d_a * d_b; }
};

inline bool operator==(const BipartiteDims& x, const BipartiteDims& y) {
    return x.d_a == y.d_a && x.d_b == y.d_b;
}

inline void require_bipartite(const cmat& rho, const BipartiteDims& dims) {
    if (dims.d_a < 2 || dims.d_b < 2)
        throw std::invalid_argument("bipartite dims: both local dimensions must be >= 2");
    if (rho.rows() != rho.cols() || rho.rows() != dims.total())
        throw std::invalid_argument(
            "bipartite dims: matrix is " + std::to_string(rho.rows()) + "x" +
            std::to_string(rho.cols()) + " but d_a*d_b = " + std::to_string(dims.total()));
}

// keep = A: out(m,n) = sum_mu rho((m,mu),(n,mu));
// keep = B: out(mu,nu) = sum_m rho((m,mu),(m,nu)).
inline cmat partial_trace(const cmat& rho, const BipartiteDims& dims, Subsystem keep) {
    require_bipartite(rho, dims);
    const index_t da = dims.d_a, db = dims.d_b;
    if (keep == Subsystem::A) {
        cmat out = cmat::Zero(da, da);
        for (index_t m = 0; m < da; ++m)
            for (index_t n = 0; n < da; ++n)
                for (index_t mu = 0; mu < db; ++mu)
                    out(m, n) += rho(m * db + mu, n * db + mu);
        return out;
    }
    cmat out = cmat::Zero(db, db);
    for (index_t mu = 0; mu < db; ++mu)
        for (index_t nu = 0; nu < db; ++nu)
            for (index_t m = 0; m < da; ++m)
                out(mu, nu) += rho(m * db + mu, m * db + nu);
    return out;
}

// side = B: out((m,mu),(n,nu)) = rho((m,nu),(n,mu));
// side = A: out((m,mu),(n,nu)) = rho((n,mu),(m,nu)). Exact entry permutation.
inline cmat partial_transpose(const cmat& rho, const BipartiteDims& dims, Subsystem side) {
    require_bipartite(rho, dims);
    const index_t da = dims.d_a, db = dims.d_b;
    cmat out(dims.total(), dims.total());
    for (index_t m = 0; m < da; ++m)
        for (index_t mu = 0; mu < db; ++mu)
            for (index_t n = 0; n < da; ++n)
                for (index_t nu = 0; nu < db; ++nu)
                    out(m * db + mu, n * db + nu) =
                        side == Subsystem::B ? rho(m * db + nu, n * db + mu)
                                             : rho(n * db + mu, m * db + nu);
    return out;
}

// out((m,n),(mu,nu)) = rho((m,mu),(n,nu)): d_a^2 x d_b^2, row index m*d_a+n,
// column index mu*d_b+nu. Exact entry permutation.
inline cmat realign(const cmat& rho, const BipartiteDims& dims) {
    require_bipartite(rho, dims);
    const index_t da = dims.d_a, db = dims.d_b;
    cmat out(da * da, db * db);
    for (index_t m = 0; m < da; ++m)
        for (index_t n = 0; n < da; ++n)
            for (index_t mu = 0; mu < db; ++mu)
                for (index_t nu = 0; nu < db; ++nu)
                    out(m * da + n, mu * db + nu) = rho(m * db + mu, n * db + nu);
    return out;
}

// Row-major flattening of a matrix into a column vector.
inline cvec vec_row(const cmat& a) {
    cvec v(a.rows() * a.cols());
    for (index_t i = 0; i < a.rows(); ++i)
        for (index_t j = 0; j < a.cols(); ++j)
            v(i * a.cols() + j) = a(i, j);
    return v;
}

// Reduced states from the spectral decomposition rho = sum_i p_i |psi_i><psi_i|,
// with each eigenvector reshaped row-major into D (d_a x d_b). The A reduction
// is sum p D D^dagger; on B the reshape swaps bra and ket, so the conjugate
// pairing D^T conj(D) is what reproduces the partial trace. Eigenvalues below
// 1e-14 are dropped.
inline std::pair<cmat, cmat> reduced_from_spectral(const cmat& rho, const BipartiteDims& dims) {
    require_bipartite(rho, dims);
    const EigHermitian eig = eig_hermitian(rho);
    const index_t da = dims.d_a, db = dims.d_b;
    cmat rho_a = cmat::Zero(da, da);
    cmat rho_b = cmat::Zero(db, db);
    for (index_t k = 0; k < eig.values.size(); ++k) {
        const double p = eig.values(k);
        if (p < 1e-14) continue;
        cmat d(da, db);
        for (index_t m = 0; m < da; ++m)
            for (index_t mu = 0; mu < db; ++mu)
                d(m, mu) = eig.vectors(m * db + mu, k);
        rho_a += p * (d * d.adjoint());
        rho_b += p * (d.transpose() * d.conjugate());
    }
    return {rho_a, rho_b};
}

}  // namespace entdet
