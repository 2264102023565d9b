#include "ppu/laurent.hpp"

#include "ppu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppu {

namespace {

void require_same_dim(const LaurentOp& a, const LaurentOp& b, const char* what) {
    if (a.dim() != b.dim()) throw InputError(std::string(what) + ": dimension mismatch");
}

double max_coeff_norm(const LaurentOp& a) {
    double m = 0.0;
    for (const auto& [k, c] : a.coeffs()) m = std::max(m, c.norm());
    return m;
}

Complex int_power(Complex z, int k) {
    Complex base = k < 0 ? 1.0 / z : z;
    Complex out = 1.0;
    for (unsigned e = static_cast<unsigned>(k < 0 ? -k : k); e != 0; e >>= 1) {
        if (e & 1u) out *= base;
        base *= base;
    }
    return out;
}

void require_unit(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) ||
        std::abs(std::abs(z) - 1.0) > tolerances().eq)
        throw InputError("evaluation point must lie on the unit circle");
}

// tolerance scale for identity comparisons in dimension n
double identity_tol(Index n) {
    return tolerances().eq * std::max(1.0, std::sqrt(static_cast<double>(n)));
}

}  // namespace

LaurentOp::LaurentOp(Index dim, Coefficients coeffs) : dim_(dim) {
    if (dim < 0) throw InputError("negative dimension");
    double largest = 0.0;
    for (const auto& [k, c] : coeffs) {
        if (c.rows() != dim || c.cols() != dim)
            throw InputError("Laurent coefficient at t^" + std::to_string(k) + " has wrong shape");
        require_finite(c, "Laurent coefficient");
        largest = std::max(largest, c.norm());
    }
    const double cut = tolerances().trim * largest;
    for (auto& [k, c] : coeffs) {
        const double nrm = c.norm();
        if (nrm > cut && nrm > 0.0) coeffs_.emplace(k, std::move(c));
    }
    if (!coeffs_.empty()) {
        lo_ = coeffs_.begin()->first;
        hi_ = coeffs_.rbegin()->first;
    }
}

LaurentOp LaurentOp::constant(const CMatrix& c) { return monomial(0, c); }

LaurentOp LaurentOp::monomial(int k, const CMatrix& c) {
    if (c.rows() != c.cols()) throw InputError("Laurent coefficient must be square");
    return LaurentOp(c.rows(), {{k, c}});
}

CMatrix LaurentOp::coeff(int k) const {
    const auto it = coeffs_.find(k);
    return it == coeffs_.end() ? CMatrix::Zero(dim_, dim_) : it->second;
}

LaurentOp add(const LaurentOp& a, const LaurentOp& b) {
    require_same_dim(a, b, "add");
    LaurentOp::Coefficients out = a.coeffs();
    for (const auto& [k, c] : b.coeffs()) {
        auto [it, inserted] = out.try_emplace(k, c);
        if (!inserted) it->second += c;
    }
    return LaurentOp(a.dim(), std::move(out));
}

LaurentOp scale(const LaurentOp& a, Complex s) {
    LaurentOp::Coefficients out;
    for (const auto& [k, c] : a.coeffs()) out.emplace(k, s * c);
    return LaurentOp(a.dim(), std::move(out));
}

LaurentOp sub(const LaurentOp& a, const LaurentOp& b) { return add(a, scale(b, -1.0)); }

LaurentOp mul(const LaurentOp& a, const LaurentOp& b) {
    require_same_dim(a, b, "mul");
    LaurentOp::Coefficients out;
    for (const auto& [i, ai] : a.coeffs())
        for (const auto& [j, bj] : b.coeffs()) {
            auto it = out.find(i + j);
            if (it == out.end())
                out.emplace(i + j, ai * bj);
            else
                it->second.noalias() += ai * bj;
        }
    return LaurentOp(a.dim(), std::move(out));
}

LaurentOp star(const LaurentOp& a) {
    LaurentOp::Coefficients out;
    for (const auto& [k, c] : a.coeffs()) out.emplace(-k, c.adjoint());
    return LaurentOp(a.dim(), std::move(out));
}

double coeff_distance(const LaurentOp& a, const LaurentOp& b) {
    require_same_dim(a, b, "coeff_distance");
    double d = 0.0;
    for (const auto& [k, c] : a.coeffs()) d = std::max(d, (c - b.coeff(k)).norm());
    for (const auto& [k, c] : b.coeffs())
        if (!a.coeffs().contains(k)) d = std::max(d, c.norm());
    return d;
}

bool approx_equal(const LaurentOp& a, const LaurentOp& b, double tol) {
    if (a.dim() != b.dim()) return false;
    return coeff_distance(a, b) <= tol * std::max({1.0, max_coeff_norm(a), max_coeff_norm(b)});
}

bool approx_equal(const LaurentOp& a, const LaurentOp& b) {
    return approx_equal(a, b, tolerances().eq);
}

CMatrix eval_at(const LaurentOp& a, Complex z) {
    require_unit(z);
    CMatrix out = CMatrix::Zero(a.dim(), a.dim());
    for (const auto& [k, c] : a.coeffs()) out += int_power(z, k) * c;
    return out;
}

double paraunitarity_residual(const LaurentOp& a) {
    const LaurentOp one = LaurentOp::one(a.dim());
    const LaurentOp s = star(a);
    return std::max(coeff_distance(mul(s, a), one), coeff_distance(mul(a, s), one));
}

double purity_residual(const LaurentOp& a) {
    CMatrix sum = CMatrix::Zero(a.dim(), a.dim());
    for (const auto& [k, c] : a.coeffs()) sum += c;
    return distance(sum, identity(a.dim()));
}

bool is_paraunitary(const LaurentOp& a) {
    return paraunitarity_residual(a) <= identity_tol(a.dim());
}

bool is_pure(const LaurentOp& a) {
    return is_paraunitary(a) && purity_residual(a) <= identity_tol(a.dim());
}

bool in_positive_cone(const LaurentOp& a) { return a.lo() >= 0 && is_pure(a); }

PpuElement::PpuElement(LaurentOp op, StarAlgebra algebra)
    : op_(std::move(op)), algebra_(std::move(algebra)) {
    if (op_.dim() != algebra_.dim())
        throw InputError("element dimension " + std::to_string(op_.dim()) +
                         " differs from algebra dimension " + std::to_string(algebra_.dim()));
    if (op_.is_zero()) throw InvalidOperand("paraunitarity residual: zero operator");
    const double tol = tolerances().eq;
    for (const auto& [k, c] : op_.coeffs()) {
        const double r = algebra_.membership_residual(c) / std::max(1.0, c.norm());
        membership_residual_ = std::max(membership_residual_, r);
    }
    if (membership_residual_ > tol)
        throw InvalidOperand("algebra membership residual " + std::to_string(membership_residual_) +
                             " exceeds tolerance");
    paraunitarity_residual_ = ppu::paraunitarity_residual(op_);
    if (paraunitarity_residual_ > identity_tol(op_.dim()))
        throw InvalidOperand("paraunitarity residual " + std::to_string(paraunitarity_residual_) +
                             " exceeds tolerance");
    purity_residual_ = ppu::purity_residual(op_);
    if (purity_residual_ > identity_tol(op_.dim()))
        throw InvalidOperand("purity residual " + std::to_string(purity_residual_) +
                             " exceeds tolerance");
}

PpuElement PpuElement::one(const StarAlgebra& a) { return PpuElement(LaurentOp::one(a.dim()), a); }

PpuElement PpuElement::t_power(const StarAlgebra& a, int k) {
    return PpuElement(LaurentOp::t_power(a.dim(), k), a);
}

PpuElement PpuElement::inverse() const { return PpuElement(star(op_), algebra_); }

PpuElement operator*(const PpuElement& a, const PpuElement& b) {
    if (!a.algebra().same_as(b.algebra()))
        throw InvalidOperand("operands belong to different algebras");
    return PpuElement(mul(a.op(), b.op()), a.algebra());
}

bool approx_equal(const PpuElement& a, const PpuElement& b) { return approx_equal(a.op(), b.op()); }

LaurentOp twist_alpha(const LaurentOp& phi, Complex z) {
    require_unit(z);
    LaurentOp::Coefficients out;
    for (const auto& [k, c] : phi.coeffs()) out.emplace(k, int_power(z, -k) * c);
    return LaurentOp(phi.dim(), std::move(out));
}

LaurentOp twist_alpha(const PpuElement& phi, Complex z) { return twist_alpha(phi.op(), z); }

}  // namespace ppu
