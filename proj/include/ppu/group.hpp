#pragma once

// The right lattice-ordered group PPU(A).
//
// Order: phi <= psi iff phi^* psi has no negative exponents (psi = phi chi
// with chi in the positive cone). The lattice operations are computed by
// transporting both elements to windowed subspaces phi H[[t^-1]], where they
// become intersection and closed sum, and reconstructing the element from the
// resulting subspace by peeling degree-one factors p_M = t pi_M + pi_{M^perp}.

#include "ppu/laurent.hpp"
#include "ppu/star_algebra.hpp"

#include <cstdint>
#include <vector>

namespace ppu {

/// Finite truncation of an A'[t^-1]-invariant subspace M with
/// t^m H[[t^-1]] ⊆ M ⊆ t^(m+w) H[[t^-1]].
///
/// `space` lives in C^(n*w); slot s = 1..w occupies rows (s-1)*n .. s*n-1
/// and holds the coefficient of t^(m+s).
struct WindowSubspace {
    StarAlgebra algebra;
    int offset = 0;  // m
    int width = 0;   // w
    Subspace space;

    Index slot_dim() const { return algebra.dim(); }

    /// Largest ||(I - P) D F|| for the block downshift D (slot s -> s-1).
    double downshift_residual() const;
    /// Largest ||(I - P) diag(c,...,c) F|| over the commutant basis.
    double commutant_residual() const;
    /// Both residuals within eq_tol.
    bool is_valid() const;
};

/// t^-shift * p_{M_1} ... p_{M_k}.
struct FactorList {
    int shift = 0;
    std::vector<InvariantSubspace> factors;
};

/// p_M = t pi_M + pi_{M^perp}.
PpuElement p_of(const InvariantSubspace& m);

/// Inverse of p_of on the interval [1, t]: M = ker(phi_0^H). Throws
/// InvalidOperand when phi is not in [1, t] and NumericalError when
/// p_of(M) does not reproduce phi.
InvariantSubspace gamma_inverse(const PpuElement& phi);

/// phi <= psi: phi^* psi lies in the positive cone.
bool leq(const PpuElement& phi, const PpuElement& psi);

/// The mirrored relation psi phi^* in the positive cone (left-invariant
/// counterpart; kept for comparison, no lattice operations use it).
bool leq_mirror(const PpuElement& phi, const PpuElement& psi);

/// Window (m, n] image of phi H[[t^-1]]. Requires m <= lo(phi) and
/// n >= hi(phi); throws InputError otherwise.
WindowSubspace omega_window(const PpuElement& phi, int m, int n);

/// Factors a positive-cone element into hi(phi) degree-one factors,
/// phi = p_{M_1} ... p_{M_d}. Throws NumericalError if a peel does not
/// lower the degree or leaves negative exponents.
FactorList factor_positive(const PpuElement& phi);

/// General element: normalizes by t^(-lo) when lo < 0 and reports the shift.
FactorList factor(const PpuElement& phi);

/// t^-shift * p_{M_1} ... p_{M_k}.
PpuElement product(const FactorList& factors, const StarAlgebra& a);

/// Element chi = t^m p_{M_1} ... p_{M_k} with omega_window(chi, m, m+w) = w.
/// Throws InputError when the window violates its invariants and
/// NumericalError when peeling stalls or exceeds `width` steps.
PpuElement reconstruct(const WindowSubspace& w);

/// Lattice operations of PPU(A).
PpuElement meet(const PpuElement& phi, const PpuElement& psi);
PpuElement join(const PpuElement& phi, const PpuElement& psi);

/// phi^* t for 1 <= phi <= t; maps p_M to p_{M^perp}.
PpuElement complement_in_t(const PpuElement& phi);

/// Least k with phi <= t^k, which is hi(phi).
int order_unit_exponent(const PpuElement& phi);

/// t^-shift * p_{M_1} ... p_{M_k} with M_i drawn by random_projection_in.
PpuElement random_ppu(const StarAlgebra& a, int k, int shift, Rng& rng);
PpuElement random_ppu(const StarAlgebra& a, int k, int shift, std::uint64_t seed);

}  // namespace ppu
