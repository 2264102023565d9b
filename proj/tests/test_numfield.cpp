#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "ppu/errors.hpp"
#include "ppu/numfield.hpp"

#include <cmath>
#include <limits>

using namespace ppu;

namespace {

CVector e(Index n, Index i) {
    CVector v = CVector::Zero(n);
    v(i) = 1.0;
    return v;
}

CMatrix cols(std::initializer_list<CVector> vs) {
    const Index n = vs.begin()->size();
    CMatrix m(n, static_cast<Index>(vs.size()));
    Index k = 0;
    for (const CVector& v : vs) m.col(k++) = v;
    return m;
}

Subspace random_subspace(Index n, Index k, Rng& rng) {
    return orthonormal_basis(oracle::gaussian(n, k, rng));
}

}  // namespace

TEST_CASE("orthonormal_basis") {
    SUBCASE("dependent columns collapse") {
        const Subspace s = orthonormal_basis(cols({e(2, 0), 2.0 * e(2, 0)}));
        CHECK(s.dim() == 1);
        CHECK(approx_equal(s.projector(), CMatrix(e(2, 0) * e(2, 0).adjoint())));
    }
    SUBCASE("zero matrix gives the zero subspace") {
        const Subspace s = orthonormal_basis(CMatrix::Zero(3, 2));
        CHECK(s.dim() == 0);
        CHECK(s.ambient_dim() == 3);
    }
    SUBCASE("e1+e2, e1-e2 span C^2") {
        const Subspace s = orthonormal_basis(cols({e(2, 0) + e(2, 1), e(2, 0) - e(2, 1)}));
        CHECK(s.dim() == 2);
        CHECK(approx_equal(s.frame().adjoint() * s.frame(), identity(2), 1e-12));
        CHECK(approx_equal(s.projector(), identity(2), 1e-12));
    }
    SUBCASE("non-finite input is rejected") {
        CMatrix m = CMatrix::Identity(2, 2);
        m(0, 1) = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(orthonormal_basis(m), InputError);
    }
}

TEST_CASE("kernel") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    CHECK(same_subspace(kernel(d), orthonormal_basis(e(2, 1))));
    CHECK(kernel(CMatrix::Zero(2, 2)).dim() == 2);

    const CMatrix ones = CMatrix::Constant(2, 2, 1.0);
    const Subspace k = kernel(ones);
    REQUIRE(k.dim() == 1);
    CHECK((ones * k.frame()).norm() < 1e-14);
    CHECK(same_subspace(k, orthonormal_basis(e(2, 0) - e(2, 1))));
}

TEST_CASE("meet and join of coordinate subspaces") {
    const Subspace a = orthonormal_basis(cols({e(3, 0), e(3, 1)}));
    const Subspace b = orthonormal_basis(cols({e(3, 1), e(3, 2)}));
    CHECK(same_subspace(meet_subspace(a, b), orthonormal_basis(e(3, 1))));
    CHECK(same_subspace(meet_subspace(a, a), a));

    const Subspace x = orthonormal_basis(e(2, 0));
    const Subspace y = orthonormal_basis(e(2, 0) + e(2, 1));
    // solving alpha e1 = beta (e1 + e2) forces alpha = beta = 0
    CHECK(oracle::intersection_dim(x.frame(), y.frame()) == 0);
    CHECK(meet_subspace(x, y).dim() == 0);

    CHECK(same_subspace(join_subspace(orthonormal_basis(e(2, 0)), orthonormal_basis(e(2, 1))),
                        Subspace::full(2)));
    CHECK(same_subspace(join_subspace(a, Subspace::zero(3)), a));
    CHECK(oracle::lu_rank(cols({e(2, 0), e(2, 0) + e(2, 1)})) == 2);
    CHECK(same_subspace(join_subspace(x, y), Subspace::full(2)));

    CHECK_THROWS_AS(meet_subspace(a, x), InputError);
    CHECK_THROWS_AS(join_subspace(a, x), InputError);
}

TEST_CASE("orthogonal complement") {
    CHECK(same_subspace(ortho_complement(orthonormal_basis(e(2, 0))), orthonormal_basis(e(2, 1))));
    CHECK(ortho_complement(Subspace::full(4)).dim() == 0);
    CHECK(ortho_complement(Subspace::zero(4)).dim() == 4);
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const Subspace s = random_subspace(5, i % 6, rng);
        const Subspace c = ortho_complement(s);
        CHECK(s.dim() + c.dim() == 5);
        CHECK(meet_subspace(s, c).dim() == 0);
        CHECK(same_subspace(ortho_complement(c), s));
    }
}

TEST_CASE("projector round trip") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 1.0;
    CHECK(approx_equal(orthonormal_basis(e(2, 0)).projector(), d, 0.0));
    CHECK(Subspace::zero(3).projector().norm() == 0.0);

    const CMatrix p = CMatrix::Constant(2, 2, 0.5);
    const Subspace s = subspace_from_projector(p);
    REQUIRE(s.dim() == 1);
    CHECK(distance(s.projector(), p) <= 1e-12);
    CHECK(same_subspace(s, orthonormal_basis(e(2, 0) + e(2, 1))));

    CMatrix not_idempotent = CMatrix::Zero(2, 2);
    not_idempotent(0, 0) = 2.0;
    CHECK_THROWS_AS(subspace_from_projector(not_idempotent), InputError);
    CMatrix not_hermitian = CMatrix::Zero(2, 2);
    not_hermitian(0, 0) = 1.0;
    not_hermitian(0, 1) = 1.0;
    CHECK_THROWS_AS(subspace_from_projector(not_hermitian), InputError);
}

TEST_CASE("tolerance configuration") {
    CHECK(tolerances().rank == 1e-9);
    CHECK(tolerances().eq == 1e-8);
    CHECK(tolerances().trim == 1e-10);
    CHECK_THROWS_AS(set_tolerances({1e-3, 1e-8, 1e-10}), InputError);
    CHECK_THROWS_AS(set_tolerances({1e-9, 0.0, 1e-10}), InputError);
    {
        ScopedTolerances scoped({1e-10, 1e-9, 1e-11});
        CHECK(tolerances().eq == 1e-9);
    }
    CHECK(tolerances().eq == 1e-8);
}

TEST_CASE("subspace lattice laws on random triples") {
    Rng rng(2024);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = 2 + trial % 5;
        const Subspace a = random_subspace(n, rng.uniform_int(0, n), rng);
        const Subspace b = random_subspace(n, rng.uniform_int(0, n), rng);
        // make c overlap a so that meets are not generically zero
        const Subspace c = join_subspace(meet_subspace(a, b), random_subspace(n, 1, rng));

        CHECK(same_subspace(meet_subspace(a, b), meet_subspace(b, a)));
        CHECK(same_subspace(join_subspace(a, b), join_subspace(b, a)));
        CHECK(same_subspace(meet_subspace(meet_subspace(a, b), c),
                            meet_subspace(a, meet_subspace(b, c))));
        CHECK(same_subspace(join_subspace(join_subspace(a, b), c),
                            join_subspace(a, join_subspace(b, c))));
        CHECK(same_subspace(join_subspace(a, meet_subspace(a, b)), a));
        CHECK(same_subspace(meet_subspace(a, join_subspace(a, b)), a));
        CHECK(same_subspace(meet_subspace(a, Subspace::zero(n)), Subspace::zero(n)));
        CHECK(same_subspace(join_subspace(a, Subspace::full(n)), Subspace::full(n)));

        // intersection dimension against the LU oracle
        CHECK(meet_subspace(a, c).dim() == oracle::intersection_dim(a.frame(), c.frame()));

        // De Morgan
        CHECK(same_subspace(ortho_complement(join_subspace(a, b)),
                            meet_subspace(ortho_complement(a), ortho_complement(b))));

        // orthomodular law for x ⊆ y
        const Subspace x = meet_subspace(a, c);
        const Subspace y = c;
        REQUIRE(is_subspace_of(x, y));
        CHECK(same_subspace(join_subspace(x, meet_subspace(ortho_complement(x), y)), y));

        for (const Subspace* s : {&a, &b, &c}) {
            const CMatrix p = s->projector();
            CHECK(approx_equal(p * p, p));
            CHECK(approx_equal(p, CMatrix(p.adjoint())));
        }
    }
}
