#pragma once

// Tolerance-governed complex dense linear algebra and the subspace calculus
// of closed subspaces of C^n.

#include <Eigen/Dense>

#include <complex>
#include <string_view>

namespace ppu {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Global numerical tolerances.
///
/// rank: relative singular-value cutoff for every rank decision.
/// eq:   matrix-equality tolerance, ||A - B||_F <= eq * max(1, ||A||, ||B||).
/// trim: Laurent coefficients below trim * (largest coefficient norm) are dropped.
struct ToleranceConfig {
    double rank = 1e-9;
    double eq = 1e-8;
    double trim = 1e-10;
};

/// Current global tolerances.
const ToleranceConfig& tolerances();

/// Replace the global tolerances. Throws InputError unless every value is
/// strictly positive and rank <= 1e-6. Not synchronized: call before any
/// concurrent use of the library.
void set_tolerances(const ToleranceConfig& config);

/// Restores the previous tolerances on destruction.
class ScopedTolerances {
public:
    explicit ScopedTolerances(const ToleranceConfig& config);
    ~ScopedTolerances();
    ScopedTolerances(const ScopedTolerances&) = delete;
    ScopedTolerances& operator=(const ScopedTolerances&) = delete;

private:
    ToleranceConfig saved_;
};

/// Throws InputError if any entry is NaN or infinite.
void require_finite(const CMatrix& m, std::string_view what);

bool is_finite(const CMatrix& m);

/// Tolerance-based equality: ||a - b||_F <= tol * max(1, ||a||_F, ||b||_F).
/// Shapes must agree; differing shapes compare unequal.
bool approx_equal(const CMatrix& a, const CMatrix& b, double tol);
bool approx_equal(const CMatrix& a, const CMatrix& b);

/// ||a - b||_F, or +inf when the shapes differ.
double distance(const CMatrix& a, const CMatrix& b);

CMatrix identity(Index n);

/// A closed subspace of C^n, stored as an orthonormal frame.
///
/// The frame has ambient_dim rows and dim() columns; the zero subspace has a
/// frame with no columns.
class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Index ambient_dim);
    static Subspace full(Index ambient_dim);

    /// Adopts a frame that is already orthonormal. Throws InputError if
    /// frame^H frame differs from the identity beyond tolerance.
    static Subspace from_orthonormal(CMatrix frame);

    Index ambient_dim() const { return frame_.rows(); }
    Index dim() const { return frame_.cols(); }
    bool is_zero() const { return frame_.cols() == 0; }
    const CMatrix& frame() const { return frame_; }

    /// pi_S = F F^H.
    CMatrix projector() const;

private:
    explicit Subspace(CMatrix frame) : frame_(std::move(frame)) {}
    CMatrix frame_;

    friend Subspace orthonormal_basis(const CMatrix& cols, double reference);
    friend Subspace kernel(const CMatrix& m, double reference);
};

/// Orthonormal basis of the numerical column space of `cols`. Rank counts
/// singular values above rank_tol * max(sigma_max, reference); with the
/// default reference 0 the floor is rank_tol when sigma_max is zero.
///
/// Pass reference = 1 when the input is built from projectors or orthonormal
/// frames: a matrix that is zero up to roundoff then has rank 0 instead of
/// having its noise normalized to full rank.
Subspace orthonormal_basis(const CMatrix& cols, double reference = 0.0);

/// Orthonormal basis of {x : m x = 0}; singular directions with
/// sigma <= rank_tol * max(sigma_max, reference) count as null.
Subspace kernel(const CMatrix& m, double reference = 0.0);

/// a ∩ b, as the kernel of x -> ((I - pi_a) x, (I - pi_b) x).
Subspace meet_subspace(const Subspace& a, const Subspace& b);

/// closure(a + b) = span of the concatenated frames.
Subspace join_subspace(const Subspace& a, const Subspace& b);

/// a^perp, as the kernel of frame^H.
Subspace ortho_complement(const Subspace& s);

inline CMatrix projector(const Subspace& s) { return s.projector(); }

/// Inverse of projector(). Rejects input that is not self-adjoint and
/// idempotent within tolerance.
Subspace subspace_from_projector(const CMatrix& p);

/// a ⊆ b, tested as ||(I - pi_b) frame_a||_F <= eq_tol.
bool is_subspace_of(const Subspace& a, const Subspace& b);

/// Equal projectors within eq_tol.
bool same_subspace(const Subspace& a, const Subspace& b);

/// ||pi_a - pi_b||_F, or +inf for different ambient dimensions.
double projector_distance(const Subspace& a, const Subspace& b);

}  // namespace ppu
