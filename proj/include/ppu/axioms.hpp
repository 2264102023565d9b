#pragma once

// Sampled verification that t is a singular strong order unit of PPU(A) and
// that M -> p_M is an OML isomorphism X(A') -> [1, t] and a group-valued
// measure. Passing all checks on an algebra is the evidence that PPU(A) is
// the structure group of X(A') at that instance.
//
// Every check is a pure function of (algebra, samples, seed). Sample i draws
// from Rng(derive_seed(seed, i)), so samples are independent of each other.

#include "ppu/report.hpp"
#include "ppu/star_algebra.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ppu {

/// t (g ∨ h) = t g ∨ t h.
CheckReport check_normality(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

/// x y <= t  ⇒  y x = x ∨ y, for x = p_M, y = p_N. Half of the pairs are
/// drawn orthogonal; non-orthogonal pairs are counted as vacuous.
CheckReport check_singularity(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

/// phi <= t^k and not phi <= t^(k-1) for k = order_unit_exponent(phi).
CheckReport check_order_unit(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

/// Gamma: M -> p_M preserves meet, join and complement; OL1, OL2 and the
/// orthomodular law hold in [1, t].
CheckReport check_gamma_oml(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

/// p_{M ⊕ N} = p_M p_N = p_N p_M on orthogonal pairs (tolerance 1e-9).
CheckReport check_gvm(const StarAlgebra& a, std::size_t samples, std::uint64_t seed);

/// Diagonal algebra on C^n_points against Z^n_points with the pointwise order.
CheckReport check_commutative_model(Index n_points, std::size_t samples, std::uint64_t seed);

/// Names accepted by run_checks, sorted.
const std::vector<std::string>& check_names();

/// Runs the named checks (all of check_names() when `names` is empty) and
/// returns the reports sorted by check name. "commutative_model" uses
/// n_points = a.dim(). Throws InputError on an unknown name.
std::vector<CheckReport> run_checks(const StarAlgebra& a, std::vector<std::string> names,
                                    std::size_t samples, std::uint64_t seed);

}  // namespace ppu
