#pragma once

// The involutive ring A[t, t^-1] of finite Laurent series with n x n complex
// coefficients, its specializations t -> z on the unit circle, and the
// paraunitary predicates.

#include "ppu/numfield.hpp"
#include "ppu/star_algebra.hpp"

#include <map>

namespace ppu {

/// phi = sum_i t^i phi_i with finitely many nonzero coefficients.
///
/// Always normalized: coefficients with ||phi_i||_F <= trim * max_j ||phi_j||_F
/// are dropped on construction. The zero operator has no coefficients and
/// lo() = hi() = 0 by convention.
class LaurentOp {
public:
    using Coefficients = std::map<int, CMatrix>;

    LaurentOp() = default;
    /// Throws InputError on non-square, wrongly sized or non-finite coefficients.
    LaurentOp(Index dim, Coefficients coeffs);

    static LaurentOp zero(Index dim) { return LaurentOp(dim, {}); }
    static LaurentOp constant(const CMatrix& c);
    static LaurentOp one(Index dim) { return constant(identity(dim)); }
    /// t^k * c
    static LaurentOp monomial(int k, const CMatrix& c);
    /// t^k * I
    static LaurentOp t_power(Index dim, int k) { return monomial(k, identity(dim)); }

    Index dim() const { return dim_; }
    const Coefficients& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return hi_; }

    /// Coefficient of t^k (zero matrix when absent).
    CMatrix coeff(int k) const;

private:
    Index dim_ = 0;
    Coefficients coeffs_;
    int lo_ = 0;
    int hi_ = 0;
};

LaurentOp add(const LaurentOp& a, const LaurentOp& b);
LaurentOp sub(const LaurentOp& a, const LaurentOp& b);
/// Cauchy convolution of the coefficient maps.
LaurentOp mul(const LaurentOp& a, const LaurentOp& b);
LaurentOp scale(const LaurentOp& a, Complex s);
/// phi^* = sum_i t^-i phi_i^H.
LaurentOp star(const LaurentOp& a);

inline LaurentOp operator+(const LaurentOp& a, const LaurentOp& b) { return add(a, b); }
inline LaurentOp operator-(const LaurentOp& a, const LaurentOp& b) { return sub(a, b); }
inline LaurentOp operator*(const LaurentOp& a, const LaurentOp& b) { return mul(a, b); }

/// max_k ||a_k - b_k||_F over the union of supports.
double coeff_distance(const LaurentOp& a, const LaurentOp& b);

/// coeff_distance(a, b) <= tol * max(1, largest coefficient norm).
bool approx_equal(const LaurentOp& a, const LaurentOp& b, double tol);
bool approx_equal(const LaurentOp& a, const LaurentOp& b);

/// sum_i z^i phi_i. Throws InputError unless | |z| - 1 | <= eq_tol.
CMatrix eval_at(const LaurentOp& a, Complex z);

/// Residuals max(||phi^* phi - 1||, ||phi phi^* - 1||) and ||eps_1(phi) - 1||.
double paraunitarity_residual(const LaurentOp& a);
double purity_residual(const LaurentOp& a);

bool is_paraunitary(const LaurentOp& a);
/// Paraunitary with eps_1(phi) = 1.
bool is_pure(const LaurentOp& a);
/// Pure with no negative exponents.
bool in_positive_cone(const LaurentOp& a);

/// An element of PPU(A): coefficients in A, paraunitary, pure.
/// Construction validates all three eagerly and keeps the residuals.
class PpuElement {
public:
    /// Throws InputError on dimension mismatch and InvalidOperand when an
    /// invariant fails; the message names the failing residual.
    PpuElement(LaurentOp op, StarAlgebra algebra);

    static PpuElement one(const StarAlgebra& a);
    /// t^k * I
    static PpuElement t_power(const StarAlgebra& a, int k);

    const LaurentOp& op() const { return op_; }
    const StarAlgebra& algebra() const { return algebra_; }
    Index dim() const { return op_.dim(); }
    int lo() const { return op_.lo(); }
    int hi() const { return op_.hi(); }

    double membership_residual() const { return membership_residual_; }
    double paraunitarity_residual() const { return paraunitarity_residual_; }
    double purity_residual() const { return purity_residual_; }

    bool in_positive_cone() const { return op_.lo() >= 0; }

    /// Group inverse, phi^-1 = phi^*.
    PpuElement inverse() const;

private:
    LaurentOp op_;
    StarAlgebra algebra_;
    double membership_residual_ = 0.0;
    double paraunitarity_residual_ = 0.0;
    double purity_residual_ = 0.0;
};

/// Group product; operands must share the algebra.
PpuElement operator*(const PpuElement& a, const PpuElement& b);

bool approx_equal(const PpuElement& a, const PpuElement& b);

/// alpha_z(phi) = sum_i t^i z^-i phi_i, the isomorphism PPU(A) -> PPU_z(A).
LaurentOp twist_alpha(const PpuElement& phi, Complex z);
LaurentOp twist_alpha(const LaurentOp& phi, Complex z);

}  // namespace ppu
