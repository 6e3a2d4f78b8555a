#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "witnesskit/errors.hpp"
#include "witnesskit/witness.hpp"

#include <cmath>
#include <vector>

using namespace witnesskit;

namespace {

SymmetryOp haar(SymmetryKind kind, int n, std::uint64_t seed)
{
    return SymmetryOp(kind, random_haar_unitary(n, seed));
}

HermitianOperator full_rank_state(int n)
{
    RVector w(n);
    for (int i = 0; i < n; ++i) w(i) = i + 1.0;
    w /= w.sum();
    const CMatrix u = random_haar_unitary(n, 55);
    return HermitianOperator(u * w.cast<Complex>().asDiagonal() * u.adjoint());
}

} // namespace

TEST_CASE("preserves_projections: conjugations preserve every P_k")
{
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k < n; ++k) {
            for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary}) {
                const auto rep = preserves_projections(ad_symmetry(haar(kind, n, 10 * n + k)), k, 40, 1e-9, 3);
                CAPTURE(n);
                CAPTURE(k);
                CHECK(rep.pass_fraction == 1.0);
                CHECK(rep.max_idempotence_defect < 1e-9);
                CHECK(rep.max_rank_defect == 0);
                CHECK(rep.inverse_checked);
                CHECK(rep.checks == 80);
                REQUIRE(rep.worst_input.has_value());
                CHECK(rep.worst_input->rank() == k);
            }
        }
    }
}

TEST_CASE("preserves_projections: theta(2) on P_2 and P_1")
{
    const auto half = preserves_projections(theta(2), 2, 100, 1e-9, 0);
    CHECK(half.pass_fraction == 1.0);
    // Theta(P) for P in P_1 has spectrum {1/2, 1/2, 1/2, -1/2}.
    const auto one = preserves_projections(theta(2), 1, 100, 1e-9, 0);
    CHECK(one.pass_fraction == 0.0);
    const RVector ev = eigenvalues(theta(2).apply(one.worst_input->op()));
    CHECK(ev(0) == doctest::Approx(0.5));
    CHECK(ev(2) == doctest::Approx(0.5));
    CHECK(ev(3) == doctest::Approx(-0.5));
    CHECK(one.max_rank_defect == 2);
}

TEST_CASE("preserves_projections: a passing report respects its tolerance; serial == parallel")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const HermMap f = theta_u(haar(SymmetryKind::antiunitary, 6, seed), 3);
        const auto par = preserves_projections(f, 3, 50, 1e-9, seed, Execution::parallel);
        const auto ser = preserves_projections(f, 3, 50, 1e-9, seed, Execution::serial);
        CHECK(par.pass_fraction == 1.0);
        CHECK(par.max_idempotence_defect <= 1e-9);
        CHECK(par.max_idempotence_defect == ser.max_idempotence_defect);
        CHECK(par.worst_input->matrix() == ser.worst_input->matrix());
    }
    const auto singular = preserves_projections(trace_to_state(full_rank_state(3)), 1, 20, 1e-9);
    CHECK_FALSE(singular.inverse_checked);
    CHECK(singular.checks == 20);
    CHECK(singular.pass_fraction == 0.0);
    CHECK_THROWS_AS(preserves_projections(theta(2), 4, 10, 1e-9), PreconditionError);
    CHECK_THROWS_AS(preserves_projections(theta(2), 2, 0, 1e-9), PreconditionError);
}

TEST_CASE("preserves_orthogonality")
{
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; 2 * k <= n; ++k) {
            const auto rep = preserves_orthogonality(ad_symmetry(haar(SymmetryKind::unitary, n, n + k)), k, 30, 1e-9);
            CHECK(rep.pass_fraction == 1.0);
            CHECK(rep.inverse_checked);
        }
    }
    for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary}) {
        const auto rep = preserves_orthogonality(theta_u(haar(kind, 4, 9), 2), 2, 50, 1e-9);
        CHECK(rep.pass_fraction == 1.0);
        CHECK(rep.max_product_norm < 1e-12);
    }
    const auto bad = preserves_orthogonality(trace_to_state(full_rank_state(4)), 1, 20, 1e-9);
    CHECK(bad.pass_fraction == 0.0);
    CHECK_THROWS_AS(preserves_orthogonality(theta(2), 3, 10, 1e-9), PreconditionError);
}

TEST_CASE("extract_symmetry: round trip for both flags")
{
    for (int n = 2; n <= 6; ++n) {
        for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary}) {
            for (std::uint64_t seed = 0; seed < 10; ++seed) {
                const SymmetryOp s = haar(kind, n, 1000 * n + seed);
                const auto ex = extract_symmetry(ad_symmetry(s), 1e-8);
                REQUIRE(ex.has_value());
                CHECK(ex->symmetry.kind() == kind);
                CHECK(ex->residual < 1e-8);
                const auto d = compare_up_to_phase(ex->symmetry, s);
                REQUIRE(d.has_value());
                CHECK(*d < 1e-8);
                CHECK(*d == doctest::Approx(ex->residual).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("extract_symmetry: non-symmetries give nothing")
{
    for (int k = 2; k <= 3; ++k) {
        for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary})
            CHECK_FALSE(extract_symmetry(theta_u(haar(kind, 2 * k, 4), k), 1e-8).has_value());
    }
    const HermMap ad = ad_symmetry(haar(SymmetryKind::unitary, 3, 1));
    CHECK_FALSE(extract_symmetry(HermMap(3, 2.0 * ad.matrix()), 1e-8).has_value());
    CHECK_FALSE(extract_symmetry(trace_to_state(full_rank_state(3)), 1e-8).has_value());
    CHECK_FALSE(extract_symmetry(theta(2), 1e-8).has_value());
}

TEST_CASE("extract_symmetry: the reduction map is conjugation by sigma_y K")
{
    const auto ex = extract_symmetry(theta(1), 1e-8);
    REQUIRE(ex.has_value());
    CHECK(ex->symmetry.kind() == SymmetryKind::antiunitary);
    const auto d = compare_up_to_phase(ex->symmetry, SymmetryOp(SymmetryKind::antiunitary, oracle::pauli_y()));
    REQUIRE(d.has_value());
    CHECK(*d < 1e-12);
}

TEST_CASE("classify")
{
    {
        const SymmetryOp s = haar(SymmetryKind::unitary, 5, 77);
        const Classification c = classify(ad_symmetry(s), 2);
        CHECK(c.verdict == Verdict::symmetry);
        REQUIRE(c.residual.has_value());
        CHECK(*c.residual < 1e-8);
        CHECK(*compare_up_to_phase(*c.symmetry, s) < 1e-8);
        CHECK(c.diagnostics.pass_fraction == 1.0);
    }
    for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary}) {
        const SymmetryOp s = haar(kind, 4, 78);
        const Classification c = classify(theta_u(s, 2), 2);
        CHECK(c.verdict == Verdict::counterexample_family);
        REQUIRE(c.symmetry.has_value());
        const auto d = compare_up_to_phase(*c.symmetry, s);
        REQUIRE(d.has_value());
        CHECK(*d < 1e-8);
    }
    {
        const Classification c = classify(theta(1), 1);
        CHECK(c.verdict == Verdict::symmetry);
        CHECK(c.symmetry->kind() == SymmetryKind::antiunitary);
        CHECK(*compare_up_to_phase(*c.symmetry, SymmetryOp(SymmetryKind::antiunitary, oracle::pauli_y())) < 1e-8);
    }
    CHECK(classify(trace_to_state(full_rank_state(4)), 2).verdict == Verdict::not_preserver);
    CHECK(classify(theta(2), 1).verdict == Verdict::not_preserver);
    CHECK_THROWS_AS(classify(theta(2), 4), PreconditionError);
}

TEST_CASE("classify: tolerance failures surface as unclassified with a tightened re-run")
{
    // A symmetry perturbed at 1e-9: passes preservation at 1e-8 but not the
    // 1e-12 extraction fit, and fails again when preservation is tightened.
    const int n = 3;
    const HermMap ad = ad_symmetry(haar(SymmetryKind::unitary, n, 5));
    RMatrix noise = RMatrix::Zero(n * n, n * n);
    noise(3, 4) = 1e-9;
    noise(5, 2) = -1e-9;
    const HermMap f(n, ad.matrix() + noise);
    ClassifyConfig cfg;
    cfg.tol.extraction = 1e-12;
    const Classification c = classify(f, 1, cfg);
    CHECK(c.verdict == Verdict::preserver_unclassified);
    REQUIRE(c.tightened_pass.has_value());
    CHECK_FALSE(*c.tightened_pass);
    CHECK_FALSE(c.residual.has_value());
}

TEST_CASE("tolerance profiles")
{
    CHECK(tolerance_profile("desk").projection == 1e-8);
    CHECK(tolerance_profile("strict").extraction == doctest::Approx(1e-10));
    CHECK_THROWS_AS(tolerance_profile("loose"), PreconditionError);
}

TEST_CASE("compare_up_to_phase")
{
    const CMatrix u = random_haar_unitary(4, 3);
    const Complex phase = std::polar(1.0, 0.7);
    for (auto kind : {SymmetryKind::unitary, SymmetryKind::antiunitary})
        CHECK(*compare_up_to_phase(SymmetryOp(kind, u), SymmetryOp(kind, phase * u)) < 1e-13);

    const auto d = compare_up_to_phase(SymmetryOp(SymmetryKind::unitary, CMatrix::Identity(2, 2)),
                                       SymmetryOp(SymmetryKind::unitary, oracle::pauli_z()));
    REQUIRE(d.has_value());
    CHECK(*d == doctest::Approx(2.0 * std::sqrt(2.0)));
    // ad(sigma_z) = diag(1, 1, -1, -1) on (Id, D_1, S_12, A_12).
    const RMatrix adz = ad_symmetry(SymmetryOp(SymmetryKind::unitary, oracle::pauli_z())).matrix();
    CHECK((adz - RVector(RVector::Map(std::vector<double>{1, 1, -1, -1}.data(), 4)).asDiagonal().toDenseMatrix())
              .norm() < 1e-15);

    CHECK_FALSE(compare_up_to_phase(SymmetryOp(SymmetryKind::unitary, u), SymmetryOp(SymmetryKind::antiunitary, u))
                    .has_value());
    CHECK_THROWS_AS(compare_up_to_phase(SymmetryOp(SymmetryKind::unitary, u),
                                        SymmetryOp(SymmetryKind::unitary, CMatrix::Identity(2, 2))),
                    DimensionMismatch);
}

TEST_CASE("span_dimension")
{
    CHECK(span_dimension(3, 1, 30, 0) == 9);
    CHECK(span_dimension(4, 2, 40, 0) == 16);
    CHECK(span_dimension(2, 1, 3, 0) == 3);
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k < n; ++k) CHECK(span_dimension(n, k, 2 * n * n, n * 10 + k) == n * n);
    }
    CHECK(span_dimension(3, 3, 10, 0) == 1);
    CHECK_THROWS_AS(span_dimension(3, 1, 0, 0), PreconditionError);
}

TEST_CASE("pi_project")
{
    const Projection p = random_projection(3, 1, 8);
    CHECK(distance(pi_project(2.0 * p.op()).op(), p.op()) < 1e-12);
    CHECK(distance(pi_project(-3.0 * p.op()).op(), p.op()) < 1e-12);
    CHECK_THROWS_AS(pi_project(HermitianOperator(oracle::pauli_z())), IndefiniteInput);
    CHECK_THROWS_AS(pi_project(HermitianOperator::zero(2)), ZeroInput);

    const Projection q = random_projection(4, 2, 9);
    const DensityOperator r = pi_project(-3.0 * q.op());
    CHECK(distance(r.op(), 0.5 * q.op()) < 1e-12);
    CHECK(is_uniform_state(r) == 2);
}

TEST_CASE("uniform states")
{
    const DensityOperator mu = uniform_state(random_projection(3, 3, 0));
    CHECK(distance(mu.op(), maximally_mixed(3).op()) < 1e-15);
    CHECK(is_uniform_state(mu) == 3);

    const Projection p = random_projection(4, 1, 4);
    CHECK(distance(uniform_state(p).op(), p.op()) < 1e-15);
    CHECK(is_uniform_state(uniform_state(p)) == 1);

    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 0.6;
    d(1, 1) = 0.4;
    CHECK_FALSE(is_uniform_state(DensityOperator(HermitianOperator(d))).has_value());

    CHECK_THROWS_AS(DensityOperator(HermitianOperator(oracle::pauli_z())), PreconditionError);
    CHECK_THROWS_AS(DensityOperator(HermitianOperator::identity(2)), PreconditionError);
}

TEST_CASE("majorization")
{
    const std::vector<double> pure{1.0, 0.0};
    const std::vector<double> flat{0.5, 0.5};
    CHECK(majorizes(pure, flat));
    CHECK_FALSE(majorizes(flat, pure));
    CHECK(majorizes(std::vector<double>{0.6, 0.4, 0.0}, std::vector<double>{0.5, 0.5, 0.0}));
    CHECK(majorizes(std::vector<double>{0.4, 0.0, 0.6}, std::vector<double>{0.0, 0.5, 0.5}));
    for (int n = 2; n <= 6; ++n) {
        for (int k = 1; k <= n; ++k) {
            std::vector<double> u(static_cast<std::size_t>(n), 0.0);
            std::fill(u.begin(), u.begin() + k, 1.0 / k);
            CHECK(majorizes(u, u));
        }
    }
    CHECK_THROWS_AS(majorizes(std::vector<double>{0.5, 0.4}, flat), PreconditionError);
    CHECK_THROWS_AS(majorizes(std::vector<double>{1.5, -0.5}, flat), PreconditionError);
    CHECK_THROWS_AS(majorizes(std::vector<double>{1.0}, flat), PreconditionError);
}

TEST_CASE("uniform states are majorization-minimal among rank <= k states")
{
    for (int n = 2; n <= 5; ++n) {
        for (int k = 1; k <= n; ++k) CHECK(uniform_minimality_check(n, k, 100, n * 100 + k));
    }
    CHECK(uniform_minimality_check(4, 2, 200, 1, Execution::serial));
    CHECK_THROWS_AS(uniform_minimality_check(3, 0, 10, 0), PreconditionError);
}
