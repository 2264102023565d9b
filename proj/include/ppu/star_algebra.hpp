#pragma once

// Unital *-closed matrix algebras A ⊆ M_n(C), their commutants, and the
// orthomodular lattice X(A') of A'-invariant subspaces (equivalently,
// subspaces whose projector lies in A).

#include "ppu/numfield.hpp"
#include "ppu/report.hpp"
#include "ppu/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace ppu {

/// A unital *-closed subalgebra of M_n(C), held as an orthonormal linear
/// basis under <a, b> = tr(a^H b).
///
/// Cheap to copy: instances share immutable state. The commutant basis is
/// computed once at construction.
class StarAlgebra {
public:
    Index dim() const { return data_->n; }
    Index linear_dim() const { return static_cast<Index>(data_->basis.size()); }
    const std::vector<CMatrix>& generators() const { return data_->generators; }
    const std::vector<CMatrix>& basis() const { return data_->basis; }
    const std::vector<CMatrix>& commutant_basis() const { return data_->commutant_basis; }

    /// Distance from x to the algebra, ||x - sum_i <b_i, x> b_i||_F.
    double membership_residual(const CMatrix& x) const;

    /// Orthogonal projection of x onto the algebra.
    CMatrix project(const CMatrix& x) const;

    /// Same underlying algebra (shared state, or mutual basis containment).
    bool same_as(const StarAlgebra& other) const;

private:
    struct Data {
        Index n = 0;
        std::vector<CMatrix> generators;
        std::vector<CMatrix> basis;
        CMatrix basis_vec;  // n^2 x d, column k = vec(basis[k])
        std::vector<CMatrix> commutant_basis;
    };
    explicit StarAlgebra(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;

    friend StarAlgebra generate_algebra(Index n, const std::vector<CMatrix>& gens);
};

/// Smallest unital *-closed algebra containing `gens`. Throws InputError on
/// shape mismatch or non-finite entries.
StarAlgebra generate_algebra(Index n, const std::vector<CMatrix>& gens);

/// A' = {x : x g = g x for all generators g}.
StarAlgebra commutant(const StarAlgebra& a);

/// x ∈ A within eq_tol * max(1, ||x||_F).
bool contains(const StarAlgebra& a, const CMatrix& x);

/// M ∈ X(A'): pi_M ∈ A. Cross-checks c M ⊆ M for every commutant basis
/// element c and throws NumericalError if the two criteria disagree.
bool is_member_XAprime(const StarAlgebra& a, const Subspace& s);

/// Outcomes of the two membership criteria, without the consistency throw.
struct MembershipCriteria {
    bool projector_in_algebra = false;
    bool commutant_invariant = false;
    double projector_residual = 0.0;
    double invariance_residual = 0.0;
};
MembershipCriteria membership_criteria(const StarAlgebra& a, const Subspace& s);

/// A subspace certified to lie in X(A') for the algebra it carries.
class InvariantSubspace {
public:
    /// Throws InvalidOperand if s ∉ X(A').
    static InvariantSubspace certify(const StarAlgebra& a, Subspace s);

    static InvariantSubspace zero(const StarAlgebra& a);
    static InvariantSubspace full(const StarAlgebra& a);

    const Subspace& subspace() const { return subspace_; }
    const StarAlgebra& algebra() const { return algebra_; }
    Index dim() const { return subspace_.dim(); }
    CMatrix projector() const { return subspace_.projector(); }

private:
    InvariantSubspace(StarAlgebra a, Subspace s) : algebra_(std::move(a)), subspace_(std::move(s)) {}
    StarAlgebra algebra_;
    Subspace subspace_;
};

/// Random element of X(A'): a spectral projection of a random self-adjoint
/// h ∈ A. Eigenvalues closer than 1e-6 * spread are merged into one cluster
/// and a random subset of clusters is kept.
InvariantSubspace random_projection_in(const StarAlgebra& a, Rng& rng);
InvariantSubspace random_projection_in(const StarAlgebra& a, std::uint64_t seed);

/// Random algebra U (⊕_i M_{k_i} ⊗ I_{m_i}) U^H on C^n with a random block
/// pattern and a random unitary U. Generated from two matrices.
StarAlgebra random_algebra(Index n, std::uint64_t seed);

/// Haar-like random unitary (QR of a complex Gaussian matrix).
CMatrix random_unitary(Index n, Rng& rng);

// OML operations on X(A'). Results are re-certified against the operands'
// algebra; mixing algebras throws InvalidOperand.
InvariantSubspace meet(const InvariantSubspace& m, const InvariantSubspace& n);
InvariantSubspace join(const InvariantSubspace& m, const InvariantSubspace& n);
InvariantSubspace complement(const InvariantSubspace& m);

/// m ⊥ n  :⇔  n ⊆ m^perp.
bool is_perp(const InvariantSubspace& m, const InvariantSubspace& n);

/// m ⊕ n = m ∨ n when m ⊥ n; std::nullopt (undefined) otherwise.
std::optional<InvariantSubspace> partial_oplus(const InvariantSubspace& m,
                                               const InvariantSubspace& n);

/// Samples M ⊆ N in X(A') and checks M ∨ (M^perp ∧ N) = N.
CheckReport check_orthomodular(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

}  // namespace ppu
