#pragma once

// Entanglement criteria on a DensityMatrix: the realignment (CCNR) trace
// norm, the minimum eigenvalue under partial transposition, and the two
// covariance-style inequalities on rho - rho_A (x) rho_B. Each criterion is a
// necessary condition for separability; exceeding its bound certifies
// entanglement.

#include "states.hpp"

#include <array>

namespace entdet {

// margin above a bound before a criterion is considered to fire; keeps
// SVD-level rounding from flickering across the boundary
inline constexpr double tol_detect = 1e-10;

enum class Verdict { entangled_detected, not_detected };

inline const char* to_string(Verdict v) {
    return v == Verdict::entangled_detected ? "entangled-detected" : "not-detected";
}

struct CriterionReport {
    double ccnr_trace_norm = 0.0;  // separable states stay <= 1
    double ppt_min_eig = 0.0;      // separable states stay >= 0
    double eq6_lhs = 0.0;          // ||(rho - rho_A (x) rho_B)^R||_tr
    double eq6_rhs = 0.0;          // sqrt((1 - Tr rho_A^2)(1 - Tr rho_B^2))
    double eq7_lhs = 0.0;          // ||(rho - rho_A (x) rho_B)^T_B||_tr
    double eq7_rhs = 0.0;          // exactly 2 * eq6_rhs
    double purity_a = 0.0;         // Tr rho_A^2
    double purity_b = 0.0;         // Tr rho_B^2
    Verdict ccnr_verdict = Verdict::not_detected;
    Verdict ppt_verdict = Verdict::not_detected;
    Verdict eq6_verdict = Verdict::not_detected;
    Verdict eq7_verdict = Verdict::not_detected;
    Verdict overall = Verdict::not_detected;
};

// field name/value view in CSV column order, for serialization and
// convergence bookkeeping
inline std::array<std::pair<const char*, double>, 8> report_fields(const CriterionReport& r) {
    return {{{"ccnr_trace_norm", r.ccnr_trace_norm},
             {"ppt_min_eig", r.ppt_min_eig},
             {"eq6_lhs", r.eq6_lhs},
             {"eq6_rhs", r.eq6_rhs},
             {"eq7_lhs", r.eq7_lhs},
             {"eq7_rhs", r.eq7_rhs},
             {"purity_a", r.purity_a},
             {"purity_b", r.purity_b}}};
}

inline double ccnr_value(const DensityMatrix& rho) {
    return schatten_norm(realign(rho.mat, rho.dims), 1.0);
}

inline double ppt_min_eig(const DensityMatrix& rho) {
    return min_eig_hermitian(partial_transpose(rho.mat, rho.dims, Subsystem::B));
}

namespace detail {

struct EqParts {
    cmat diff;  // rho - rho_A (x) rho_B
    double purity_a = 0.0;
    double purity_b = 0.0;
    double rhs6 = 0.0;
};

inline EqParts eq_parts(const DensityMatrix& rho) {
    const cmat rho_a = partial_trace(rho.mat, rho.dims, Subsystem::A);
    const cmat rho_b = partial_trace(rho.mat, rho.dims, Subsystem::B);
    EqParts out;
    out.diff = rho.mat - kron(rho_a, rho_b);
    // Tr(rho_A^2) = sum |entries|^2 for Hermitian rho_A
    out.purity_a = rho_a.squaredNorm();
    out.purity_b = rho_b.squaredNorm();
    // purities can exceed 1 by rounding for near-pure reductions; clamp
    out.rhs6 = std::sqrt(std::max(0.0, 1.0 - out.purity_a) *
                         std::max(0.0, 1.0 - out.purity_b));
    return out;
}

}  // namespace detail

inline std::pair<double, double> eq6(const DensityMatrix& rho) {
    const detail::EqParts parts = detail::eq_parts(rho);
    return {schatten_norm(realign(parts.diff, rho.dims), 1.0), parts.rhs6};
}

inline std::pair<double, double> eq7(const DensityMatrix& rho) {
    const detail::EqParts parts = detail::eq_parts(rho);
    return {schatten_norm(partial_transpose(parts.diff, rho.dims, Subsystem::B), 1.0),
            2.0 * parts.rhs6};
}

// All criteria in one pass; the reduced states are computed once.
inline CriterionReport evaluate(const DensityMatrix& rho) {
    const detail::EqParts parts = detail::eq_parts(rho);
    CriterionReport r;
    r.ccnr_trace_norm = ccnr_value(rho);
    r.ppt_min_eig = ppt_min_eig(rho);
    r.eq6_lhs = schatten_norm(realign(parts.diff, rho.dims), 1.0);
    r.eq6_rhs = parts.rhs6;
    r.eq7_lhs = schatten_norm(partial_transpose(parts.diff, rho.dims, Subsystem::B), 1.0);
    r.eq7_rhs = 2.0 * parts.rhs6;
    r.purity_a = parts.purity_a;
    r.purity_b = parts.purity_b;
    const auto verdict = [](bool fired) {
        return fired ? Verdict::entangled_detected : Verdict::not_detected;
    };
    r.ccnr_verdict = verdict(r.ccnr_trace_norm > 1.0 + tol_detect);
    r.ppt_verdict = verdict(r.ppt_min_eig < -tol_detect);
    r.eq6_verdict = verdict(r.eq6_lhs > r.eq6_rhs + tol_detect);
    r.eq7_verdict = verdict(r.eq7_lhs > r.eq7_rhs + tol_detect);
    r.overall = verdict(r.ccnr_verdict == Verdict::entangled_detected ||
                        r.ppt_verdict == Verdict::entangled_detected ||
                        r.eq6_verdict == Verdict::entangled_detected ||
                        r.eq7_verdict == Verdict::entangled_detected);
    return r;
}

}  // namespace entdet
