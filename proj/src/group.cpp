#include "ppu/group.hpp"

#include "ppu/errors.hpp"

#include <algorithm>
#include <string>

namespace ppu {

namespace {

void require_same_algebra(const PpuElement& a, const PpuElement& b) {
    if (!a.algebra().same_as(b.algebra()))
        throw InvalidOperand("operands belong to different algebras");
}

// (I - P) X for P the projector onto span(frame).
CMatrix outside(const CMatrix& frame, const CMatrix& x) {
    return x - frame * (frame.adjoint() * x);
}

// Apply c to every slot of the columns of f.
CMatrix slotwise(const CMatrix& c, const CMatrix& f, Index n, int width) {
    CMatrix out(f.rows(), f.cols());
    for (int s = 0; s < width; ++s) out.middleRows(s * n, n) = c * f.middleRows(s * n, n);
    return out;
}

}  // namespace

double WindowSubspace::downshift_residual() const {
    const CMatrix& f = space.frame();
    if (f.cols() == 0 || width <= 1) return 0.0;
    const Index n = slot_dim();
    CMatrix shifted = CMatrix::Zero(f.rows(), f.cols());
    shifted.topRows((width - 1) * n) = f.bottomRows((width - 1) * n);
    return outside(f, shifted).norm();
}

double WindowSubspace::commutant_residual() const {
    const CMatrix& f = space.frame();
    if (f.cols() == 0) return 0.0;
    double worst = 0.0;
    for (const CMatrix& c : algebra.commutant_basis())
        worst = std::max(worst, outside(f, slotwise(c, f, slot_dim(), width)).norm() /
                                    std::max(1.0, c.norm()));
    return worst;
}

bool WindowSubspace::is_valid() const {
    const double tol = tolerances().eq;
    return space.ambient_dim() == slot_dim() * width && downshift_residual() <= tol &&
           commutant_residual() <= tol;
}

PpuElement p_of(const InvariantSubspace& m) {
    const CMatrix pi = m.projector();
    const Index n = pi.rows();
    LaurentOp::Coefficients c;
    c.emplace(1, pi);
    c.emplace(0, identity(n) - pi);
    return PpuElement(LaurentOp(n, std::move(c)), m.algebra());
}

bool leq(const PpuElement& phi, const PpuElement& psi) {
    require_same_algebra(phi, psi);
    return mul(star(phi.op()), psi.op()).lo() >= 0;
}

bool leq_mirror(const PpuElement& phi, const PpuElement& psi) {
    require_same_algebra(phi, psi);
    return mul(psi.op(), star(phi.op())).lo() >= 0;
}

InvariantSubspace gamma_inverse(const PpuElement& phi) {
    if (!phi.in_positive_cone() || !leq(phi, PpuElement::t_power(phi.algebra(), 1)))
        throw InvalidOperand("gamma_inverse: element is not in the interval [1, t]");
    const InvariantSubspace m =
        InvariantSubspace::certify(phi.algebra(), kernel(phi.op().coeff(0).adjoint(), 1.0));
    if (!approx_equal(p_of(m).op(), phi.op()))
        throw NumericalError("gamma_inverse: round trip residual " +
                             std::to_string(coeff_distance(p_of(m).op(), phi.op())));
    return m;
}

WindowSubspace omega_window(const PpuElement& phi, int m, int n) {
    if (m > phi.lo() || n < phi.hi())
        throw InputError("window (" + std::to_string(m) + ", " + std::to_string(n) +
                         "] does not contain the support [" + std::to_string(phi.lo()) + ", " +
                         std::to_string(phi.hi()) + "]");
    const Index dim = phi.dim();
    const int width = n - m;
    // images of t^j e_i for m - hi <= j <= 0; exponent k + j lands in slot k + j - m
    const int shifts = phi.hi() - m + 1;
    CMatrix gens = CMatrix::Zero(dim * width, dim * shifts);
    for (int q = 0; q < shifts; ++q) {
        const int j = -q;
        for (const auto& [k, c] : phi.op().coeffs()) {
            const int slot = k + j - m;
            if (slot >= 1 && slot <= width) gens.block((slot - 1) * dim, q * dim, dim, dim) = c;
        }
    }
    return WindowSubspace{phi.algebra(), m, width, orthonormal_basis(gens, 1.0)};
}

FactorList factor_positive(const PpuElement& phi) {
    if (!phi.in_positive_cone())
        throw InvalidOperand("factor_positive: element has negative exponents");
    const StarAlgebra& a = phi.algebra();
    const Index n = phi.dim();
    const double tol = tolerances().eq;
    FactorList out;
    LaurentOp current = phi.op();
    for (int step = 0; current.hi() > 0; ++step) {
        const Subspace peel = kernel(current.coeff(0).adjoint(), 1.0);
        if (!is_member_XAprime(a, peel))
            throw NumericalError("factor_positive: peeled subspace at step " +
                                 std::to_string(step) + " is not in X(A')");
        InvariantSubspace m1 = InvariantSubspace::certify(a, peel);

        // range(phi_d) ⊆ ker(phi_0^H), so the top coefficient cancels
        const CMatrix pi = m1.projector();
        const CMatrix top = current.coeff(current.hi());
        if (((identity(n) - pi) * top).norm() > tol * std::max(1.0, top.norm()))
            throw NumericalError("factor_positive: top coefficient escapes the peeled subspace at step " +
                                 std::to_string(step));

        LaurentOp next = mul(star(p_of(m1).op()), current);
        if (next.hi() >= current.hi() || next.lo() < 0)
            throw NumericalError("factor_positive: peel at step " + std::to_string(step) +
                                 " left support [" + std::to_string(next.lo()) + ", " +
                                 std::to_string(next.hi()) + "]");
        out.factors.push_back(std::move(m1));
        current = std::move(next);
    }
    if (!approx_equal(current, LaurentOp::one(n)))
        throw NumericalError("factor_positive: remainder is not the identity");
    return out;
}

FactorList factor(const PpuElement& phi) {
    const int shift = phi.lo() < 0 ? -phi.lo() : 0;
    FactorList out =
        shift == 0 ? factor_positive(phi) : factor_positive(PpuElement::t_power(phi.algebra(), shift) * phi);
    out.shift = shift;
    return out;
}

PpuElement product(const FactorList& factors, const StarAlgebra& a) {
    LaurentOp op = LaurentOp::t_power(a.dim(), -factors.shift);
    for (const InvariantSubspace& m : factors.factors) {
        if (!m.algebra().same_as(a)) throw InvalidOperand("factor belongs to a different algebra");
        op = mul(op, p_of(m).op());
    }
    return PpuElement(std::move(op), a);
}

PpuElement reconstruct(const WindowSubspace& w) {
    const Index n = w.slot_dim();
    if (w.width < 0) throw InputError("reconstruct: negative window width");
    if (w.space.ambient_dim() != n * w.width)
        throw InputError("reconstruct: window space has the wrong ambient dimension");
    if (w.downshift_residual() > tolerances().eq)
        throw InputError("reconstruct: window space is not stable under the downshift");
    if (w.commutant_residual() > tolerances().eq)
        throw InputError("reconstruct: window space is not stable under A'");

    const Index total = n * w.width;
    LaurentOp op = LaurentOp::t_power(n, w.offset);
    CMatrix frame = w.space.frame();
    for (int step = 0; frame.cols() > 0; ++step) {
        if (step >= w.width)
            throw NumericalError("reconstruct: more than " + std::to_string(w.width) + " peels");

        // M_1 = {x : (x, 0, ..., 0) in space} = ker of (I - P) restricted to slot 1
        const CMatrix slot1 = CMatrix::Identity(total, n);
        const Subspace peel = kernel(outside(frame, slot1), 1.0);
        if (peel.is_zero())
            throw NumericalError("reconstruct: peel stalled with a nonzero window space");
        if (!is_member_XAprime(w.algebra, peel))
            throw NumericalError("reconstruct: peeled subspace is not in X(A')");
        const InvariantSubspace m1 = InvariantSubspace::certify(w.algebra, peel);

        // windowed action of p_{M_1}^*: v'_s = pi v_{s+1} + (1 - pi) v_s, slot 0 dropped
        const CMatrix pi = m1.projector();
        const CMatrix pi_perp = identity(n) - pi;
        CMatrix next(total, frame.cols());
        for (int s = 0; s < w.width; ++s) {
            next.middleRows(s * n, n) = pi_perp * frame.middleRows(s * n, n);
            if (s + 1 < w.width) next.middleRows(s * n, n) += pi * frame.middleRows((s + 1) * n, n);
        }
        frame = orthonormal_basis(next, 1.0).frame();
        op = mul(op, p_of(m1).op());
    }
    return PpuElement(std::move(op), w.algebra);
}

namespace {

template <typename Combine>
PpuElement lattice_op(const PpuElement& phi, const PpuElement& psi, Combine combine) {
    require_same_algebra(phi, psi);
    const int m = std::min(phi.lo(), psi.lo());
    const int n = std::max(phi.hi(), psi.hi());
    const WindowSubspace a = omega_window(phi, m, n);
    const WindowSubspace b = omega_window(psi, m, n);
    return reconstruct(WindowSubspace{phi.algebra(), m, n - m, combine(a.space, b.space)});
}

}  // namespace

PpuElement meet(const PpuElement& phi, const PpuElement& psi) {
    return lattice_op(phi, psi, meet_subspace);
}

PpuElement join(const PpuElement& phi, const PpuElement& psi) {
    return lattice_op(phi, psi, join_subspace);
}

PpuElement complement_in_t(const PpuElement& phi) {
    const PpuElement t = PpuElement::t_power(phi.algebra(), 1);
    if (!phi.in_positive_cone() || !leq(phi, t))
        throw InvalidOperand("complement_in_t: element is not in the interval [1, t]");
    return PpuElement(mul(star(phi.op()), t.op()), phi.algebra());
}

int order_unit_exponent(const PpuElement& phi) { return phi.hi(); }

PpuElement random_ppu(const StarAlgebra& a, int k, int shift, Rng& rng) {
    if (k < 0) throw InputError("random_ppu: negative factor count");
    LaurentOp op = LaurentOp::t_power(a.dim(), -shift);
    for (int i = 0; i < k; ++i) op = mul(op, p_of(random_projection_in(a, rng)).op());
    return PpuElement(std::move(op), a);
}

PpuElement random_ppu(const StarAlgebra& a, int k, int shift, std::uint64_t seed) {
    Rng rng(seed);
    return random_ppu(a, k, shift, rng);
}

}  // namespace ppu
