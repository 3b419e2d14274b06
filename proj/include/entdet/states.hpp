#pragma once

// State constructors: the 3x3 bound-entangled family with its noisy and
// tail-extended variants, plus seeded random densities and separable mixtures
// for property tests.

#include "bipartite.hpp"

#include <cstdint>
#include <random>

namespace entdet {

inline constexpr double tol_psd = 1e-9;
inline constexpr double tol_trace = 1e-9;

struct DensityMatrix {
    cmat mat;
    BipartiteDims dims;
};

// Checks the DensityMatrix invariants in a fixed order and throws naming the
// first violated one: dimensions, finiteness, hermiticity, trace, positivity.
inline void validate_density(const cmat& mat, const BipartiteDims& dims) {
    require_bipartite(mat, dims);
    if (!mat.allFinite())
        throw std::invalid_argument("density matrix: non-finite entries");
    const double defect = hermiticity_defect(mat);
    if (defect > tol_herm)
        throw std::invalid_argument(
            "density matrix: hermiticity violated, max |rho - rho^dagger| = " +
            detail::to_sci(defect));
    const cplx tr = mat.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > tol_trace)
        throw std::invalid_argument(
            "density matrix: trace violated, Tr(rho) = " + detail::to_sci(tr.real()));
    const double min_eig = min_eig_hermitian(mat);
    if (min_eig < -tol_psd)
        throw std::invalid_argument(
            "density matrix: positivity violated, min eigenvalue = " + detail::to_sci(min_eig));
}

inline DensityMatrix make_density(cmat mat, const BipartiteDims& dims) {
    validate_density(mat, dims);
    return {std::move(mat), dims};
}

// Parameters of the example family: the 3x3 state at (a, epsilon), mixed with
// weight 1-c into a diagonal tail of n_tail extra levels whose weights decay
// geometrically with tail_ratio.
struct ExampleParams {
    double a = 0.232;
    double epsilon = 0.9939;
    double c = 1.0;
    index_t n_tail = 0;
    double tail_ratio = 0.5;
};

inline void validate_params(const ExampleParams& p) {
    if (!(p.a > 0.0 && p.a < 1.0))
        throw std::invalid_argument("example params: a must lie in (0,1)");
    if (!(p.epsilon >= 0.0 && p.epsilon <= 1.0))
        throw std::invalid_argument("example params: epsilon must lie in [0,1]");
    if (!(p.c >= 0.0 && p.c <= 1.0))
        throw std::invalid_argument("example params: c must lie in [0,1]");
    if (p.n_tail < 0)
        throw std::invalid_argument("example params: n_tail must be >= 0");
    if (!(p.tail_ratio > 0.0 && p.tail_ratio < 1.0))
        throw std::invalid_argument("example params: tail_ratio must lie in (0,1)");
}

// The 3 (x) 3 bound-entangled family: positive under partial transposition
// for every a in (0,1) yet entangled.
inline DensityMatrix horodecki(double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::invalid_argument("horodecki: a must lie in (0,1)");
    const double norm = 1.0 / (8.0 * a + 1.0);
    cmat m = cmat::Zero(9, 9);
    const double diag[9] = {a, a, a, a, a, a, 0.5 * (1.0 + a), a, 0.5 * (1.0 + a)};
    for (int i = 0; i < 9; ++i) m(i, i) = diag[i];
    for (auto [i, j] : {std::pair<int, int>{0, 4}, {0, 8}, {4, 8}}) {
        m(i, j) = a;
        m(j, i) = a;
    }
    const double s = 0.5 * std::sqrt(1.0 - a * a);
    m(6, 8) = s;
    m(8, 6) = s;
    return make_density(norm * m, {3, 3});
}

// Depolarized variant: epsilon*horodecki(a) + (1-epsilon)*I/9.
inline DensityMatrix rho_eps(double a, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw std::invalid_argument("rho_eps: epsilon must lie in [0,1]");
    cmat m = epsilon * horodecki(a).mat;
    m += (1.0 - epsilon) / 9.0 * cmat::Identity(9, 9);
    return make_density(std::move(m), {3, 3});
}

// Geometric weights tail_ratio^k, renormalized over the truncation.
inline std::vector<double> tail_weights(index_t n_tail, double tail_ratio) {
    std::vector<double> w(static_cast<size_t>(n_tail));
    double sum = 0.0;
    for (index_t k = 0; k < n_tail; ++k) {
        w[k] = std::pow(tail_ratio, static_cast<double>(k));
        sum += w[k];
    }
    for (double& x : w) x /= sum;
    return w;
}

// Diagonal tail state sum_k p_k |i_k i_k><i_k i_k| on levels i_k = 3+k of a
// (3+n) (x) (3+n) space; a product-basis mixture, hence separable.
inline DensityMatrix tail_sigma(index_t n_tail, double tail_ratio) {
    if (n_tail < 1)
        throw std::invalid_argument("tail_sigma: n_tail must be >= 1");
    if (!(tail_ratio > 0.0 && tail_ratio < 1.0))
        throw std::invalid_argument("tail_sigma: tail_ratio must lie in (0,1)");
    const index_t d = 3 + n_tail;
    cmat m = cmat::Zero(d * d, d * d);
    const std::vector<double> w = tail_weights(n_tail, tail_ratio);
    for (index_t k = 0; k < n_tail; ++k) {
        const index_t i = 3 + k;
        m(i * d + i, i * d + i) = w[static_cast<size_t>(k)];
    }
    return make_density(std::move(m), {d, d});
}

// c * rho_eps embedded in the top-left 3x3 (x) 3x3 corner of a (3+n) (x) (3+n)
// space, plus (1-c) * tail_sigma.
inline DensityMatrix rho_eps_c(const ExampleParams& p) {
    validate_params(p);
    if (p.n_tail < 1)
        throw std::invalid_argument("rho_eps_c: n_tail must be >= 1");
    const index_t d = 3 + p.n_tail;
    cmat m = cmat::Zero(d * d, d * d);
    const cmat core = rho_eps(p.a, p.epsilon).mat;
    for (index_t i = 0; i < 3; ++i)
        for (index_t mu = 0; mu < 3; ++mu)
            for (index_t j = 0; j < 3; ++j)
                for (index_t nu = 0; nu < 3; ++nu)
                    m(i * d + mu, j * d + nu) = p.c * core(i * 3 + mu, j * 3 + nu);
    const std::vector<double> w = tail_weights(p.n_tail, p.tail_ratio);
    for (index_t k = 0; k < p.n_tail; ++k) {
        const index_t i = 3 + k;
        m(i * d + i, i * d + i) += (1.0 - p.c) * w[static_cast<size_t>(k)];
    }
    return make_density(std::move(m), {d, d});
}

namespace detail {

inline cmat ginibre(index_t rows, index_t cols, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    cmat g(rows, cols);
    for (index_t i = 0; i < rows; ++i)
        for (index_t j = 0; j < cols; ++j) {
            const double re = gauss(gen);
            const double im = gauss(gen);
            g(i, j) = cplx(re, im);
        }
    return g;
}

inline cvec random_unit_vector(index_t d, std::mt19937_64& gen) {
    cvec v = ginibre(d, 1, gen).col(0);
    return v / v.norm();
}

}  // namespace detail

// G G^dagger / Tr(G G^dagger) for a seeded complex Gaussian G; full rank with
// probability 1.
inline DensityMatrix random_density(const BipartiteDims& dims, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const cmat g = detail::ginibre(dims.total(), dims.total(), gen);
    cmat rho = g * g.adjoint();
    rho /= rho.trace().real();
    return make_density(std::move(rho), dims);
}

// sum_k p_k |a_k><a_k| (x) |b_k><b_k| with random pure factors and random
// mixing weights; separable by construction.
inline DensityMatrix random_separable(const BipartiteDims& dims, index_t k_terms,
                                      std::uint64_t seed) {
    if (k_terms < 1)
        throw std::invalid_argument("random_separable: k_terms must be >= 1");
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<size_t>(k_terms));
    double sum = 0.0;
    for (double& x : w) {
        x = expo(gen);
        sum += x;
    }
    cmat rho = cmat::Zero(dims.total(), dims.total());
    for (index_t k = 0; k < k_terms; ++k) {
        const cvec psi_a = detail::random_unit_vector(dims.d_a, gen);
        const cvec psi_b = detail::random_unit_vector(dims.d_b, gen);
        rho += w[static_cast<size_t>(k)] / sum *
               kron(psi_a * psi_a.adjoint(), psi_b * psi_b.adjoint());
    }
    return make_density(std::move(rho), dims);
}

// |Phi><Phi| with |Phi> = (1/sqrt d) sum_i |ii>.
inline DensityMatrix max_entangled(index_t d) {
    if (d < 2)
        throw std::invalid_argument("max_entangled: d must be >= 2");
    cvec phi = cvec::Zero(d * d);
    for (index_t i = 0; i < d; ++i)
        phi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return make_density(phi * phi.adjoint(), {d, d});
}

}  // namespace entdet
