#include <catch2/catch_amalgamated.hpp>

#include "entdet/criteria.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <string>

using namespace entdet;

namespace {

cmat random_unitary(index_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    cmat g(n, n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            const double re = gauss(gen);
            const double im = gauss(gen);
            g(i, j) = cplx(re, im);
        }
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (index_t j = 0; j < n; ++j) {
        const cplx d = r(j, j);
        if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace

TEST_CASE("ccnr of simple states matches closed forms", "[criteria]") {
    // Pure product state: realignment is rank one with unit singular value.
    const DensityMatrix pure = random_separable({3, 3}, 1, 1);
    REQUIRE(ccnr_value(pure) == Catch::Approx(1.0).margin(1e-11));
    // Maximally mixed: realignment is rank one with singular value 1/d.
    const DensityMatrix mixed = make_density(cmat::Identity(9, 9) / 9.0, {3, 3});
    REQUIRE(ccnr_value(mixed) == Catch::Approx(1.0 / 3.0).margin(1e-12));
    // Maximally entangled on d (x) d: trace norm is d.
    REQUIRE(ccnr_value(max_entangled(3)) == Catch::Approx(3.0).margin(1e-10));
}

TEST_CASE("ppt_min_eig closed forms", "[criteria]") {
    REQUIRE(ppt_min_eig(max_entangled(2)) == Catch::Approx(-0.5).margin(1e-12));
    const DensityMatrix mixed = make_density(cmat::Identity(4, 4) / 4.0, {2, 2});
    REQUIRE(ppt_min_eig(mixed) == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("eq6 and eq7 vanish on product and maximally mixed states", "[criteria]") {
    const DensityMatrix pure = random_separable({2, 3}, 1, 2);
    const auto [l6, r6] = eq6(pure);
    REQUIRE(l6 <= 1e-10);
    REQUIRE(r6 <= 1e-5);  // purities are 1 up to roundoff, so the bound is ~0
    const DensityMatrix mixed = make_density(cmat::Identity(6, 6) / 6.0, {2, 3});
    const auto [ml6, mr6] = eq6(mixed);
    REQUIRE(ml6 <= 1e-12);
    REQUIRE(mr6 == Catch::Approx(std::sqrt((1.0 - 0.5) * (1.0 - 1.0 / 3.0))).margin(1e-12));
    const auto [ml7, mr7] = eq7(mixed);
    REQUIRE(ml7 <= 1e-12);
    REQUIRE(mr7 == Catch::Approx(2.0 * mr6).margin(1e-12));
}

TEST_CASE("maximally entangled qubit pair closed forms", "[criteria]") {
    const CriterionReport r = evaluate(max_entangled(2));
    REQUIRE(r.ccnr_trace_norm == Catch::Approx(2.0).margin(1e-10));
    REQUIRE(r.ppt_min_eig == Catch::Approx(-0.5).margin(1e-10));
    REQUIRE(r.eq6_lhs == Catch::Approx(1.5).margin(1e-10));
    REQUIRE(r.eq6_rhs == Catch::Approx(0.5).margin(1e-10));
    REQUIRE(r.eq7_lhs == Catch::Approx(1.5).margin(1e-10));
    REQUIRE(r.eq7_rhs == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(r.purity_a == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(r.purity_b == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(r.ccnr_verdict == Verdict::entangled_detected);
    REQUIRE(r.ppt_verdict == Verdict::entangled_detected);
    REQUIRE(r.eq6_verdict == Verdict::entangled_detected);
    REQUIRE(r.eq7_verdict == Verdict::entangled_detected);
    REQUIRE(r.overall == Verdict::entangled_detected);
}

TEST_CASE("bound entangled example fires eq6 but not ccnr or ppt", "[criteria]") {
    const CriterionReport r = evaluate(rho_eps(0.232, 0.9939));
    REQUIRE(r.ccnr_trace_norm == Catch::Approx(0.998955116071703).margin(1e-11));
    REQUIRE(r.eq6_lhs == Catch::Approx(0.6082036452375102).margin(1e-11));
    REQUIRE(r.eq6_rhs == Catch::Approx(0.6081606165787784).margin(1e-11));
    REQUIRE(r.eq7_lhs == Catch::Approx(0.6623156013125492).margin(1e-11));
    REQUIRE(r.eq7_rhs == Catch::Approx(1.2163212331575568).margin(1e-11));
    REQUIRE(r.ppt_min_eig >= -1e-9);
    REQUIRE(r.ccnr_verdict == Verdict::not_detected);
    REQUIRE(r.ppt_verdict == Verdict::not_detected);
    REQUIRE(r.eq6_verdict == Verdict::entangled_detected);
    REQUIRE(r.eq7_verdict == Verdict::not_detected);
    REQUIRE(r.overall == Verdict::entangled_detected);
}

TEST_CASE("tail-extended example keeps the eq6-only detection", "[criteria]") {
    const CriterionReport r = evaluate(rho_eps_c({0.232, 0.9939, 0.999, 8, 0.5}));
    REQUIRE(r.eq6_lhs == Catch::Approx(0.60898169302805583).margin(1e-10));
    REQUIRE(r.eq6_rhs == Catch::Approx(0.608943881022).margin(1e-9));
    REQUIRE(r.purity_a == Catch::Approx(0.380193321588).margin(1e-9));
    REQUIRE(r.eq6_verdict == Verdict::entangled_detected);
    REQUIRE(r.ccnr_verdict == Verdict::not_detected);
    REQUIRE(r.ppt_verdict == Verdict::not_detected);
}

TEST_CASE("eq7 bound is exactly twice the eq6 bound", "[criteria]") {
    for (std::uint64_t seed : {3, 4, 5}) {
        const CriterionReport r = evaluate(random_density({3, 3}, seed));
        REQUIRE(r.eq7_rhs == 2.0 * r.eq6_rhs);
    }
}

TEST_CASE("all criterion values are local-unitary invariant", "[criteria]") {
    const DensityMatrix rho = random_density({3, 3}, 6);
    const cmat u = kron(random_unitary(3, 7), random_unitary(3, 8));
    const DensityMatrix rotated = make_density(u * rho.mat * u.adjoint(), rho.dims);
    const CriterionReport a = evaluate(rho);
    const CriterionReport b = evaluate(rotated);
    REQUIRE(b.ccnr_trace_norm == Catch::Approx(a.ccnr_trace_norm).margin(1e-9));
    REQUIRE(b.ppt_min_eig == Catch::Approx(a.ppt_min_eig).margin(1e-9));
    REQUIRE(b.eq6_lhs == Catch::Approx(a.eq6_lhs).margin(1e-9));
    REQUIRE(b.eq6_rhs == Catch::Approx(a.eq6_rhs).margin(1e-9));
    REQUIRE(b.eq7_lhs == Catch::Approx(a.eq7_lhs).margin(1e-9));
    REQUIRE(b.eq7_rhs == Catch::Approx(a.eq7_rhs).margin(1e-9));
    REQUIRE(b.purity_a == Catch::Approx(a.purity_a).margin(1e-11));
    REQUIRE(b.purity_b == Catch::Approx(a.purity_b).margin(1e-11));
}

TEST_CASE("eq6 dominates ccnr through the triangle and scalar bounds", "[criteria]") {
    // Whenever ccnr fires, eq6 must fire too: eq6_lhs >= ccnr - sqrt(pa*pb)
    // and 1 - sqrt(pa*pb) >= eq6_rhs close the implication.
    int ccnr_fired = 0;
    const auto check = [&](const DensityMatrix& rho) {
        const CriterionReport r = evaluate(rho);
        const double cross = std::sqrt(r.purity_a * r.purity_b);
        REQUIRE(r.eq6_lhs >= r.ccnr_trace_norm - cross - 1e-10);
        REQUIRE(1.0 - cross >= r.eq6_rhs - 1e-10);
        if (r.ccnr_verdict == Verdict::entangled_detected) {
            ++ccnr_fired;
            REQUIRE(r.eq6_verdict == Verdict::entangled_detected);
        }
    };
    for (std::uint64_t seed = 0; seed < 30; ++seed) check(random_density({3, 3}, seed));
    for (index_t d : {2, 3, 4}) check(max_entangled(d));
    check(horodecki(0.236));
    check(rho_eps(0.236, 0.9955));
    REQUIRE(ccnr_fired >= 5);
}

TEST_CASE("report_fields lists the CSV columns in order", "[criteria]") {
    const CriterionReport r = evaluate(max_entangled(2));
    const auto fields = report_fields(r);
    const char* want[8] = {"ccnr_trace_norm", "ppt_min_eig", "eq6_lhs", "eq6_rhs",
                           "eq7_lhs",         "eq7_rhs",     "purity_a", "purity_b"};
    for (int i = 0; i < 8; ++i) REQUIRE(std::string(fields[i].first) == want[i]);
    REQUIRE(fields[0].second == r.ccnr_trace_norm);
    REQUIRE(fields[7].second == r.purity_b);
}

TEST_CASE("verdict strings", "[criteria]") {
    REQUIRE(std::string(to_string(Verdict::entangled_detected)) == "entangled-detected");
    REQUIRE(std::string(to_string(Verdict::not_detected)) == "not-detected");
}
