#include "ppu/numfield.hpp"

#include "ppu/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ppu {

namespace {

ToleranceConfig g_tolerances;

struct Svd {
    CMatrix u;             // thin left singular vectors
    CMatrix v;             // full right singular vectors
    Eigen::VectorXd sigma; // descending
};

// One-sided Jacobi SVD. Eigen 3.4.0's divide-and-conquer BDCSVD misreports
// singular values of exactly structured inputs (e.g. stacked partial
// isometries), which corrupts rank decisions.
Svd compute_svd(const CMatrix& m, bool want_u, bool want_full_v) {
    unsigned int options = 0;
    if (want_u) options |= Eigen::ComputeThinU;
    if (want_full_v) options |= Eigen::ComputeFullV;
    Eigen::JacobiSVD<CMatrix> svd(m, options);
    Svd out;
    if (want_u) out.u = svd.matrixU();
    if (want_full_v) out.v = svd.matrixV();
    out.sigma = svd.singularValues();
    if (!out.sigma.allFinite()) throw NumericalError("singular value decomposition did not converge");
    return out;
}

double rank_cutoff(const Eigen::VectorXd& sigma, double reference) {
    const double tol = tolerances().rank;
    const double scale = std::max(sigma.size() > 0 ? sigma.maxCoeff() : 0.0, reference);
    return scale > 0.0 ? tol * scale : tol;
}

}  // namespace

const ToleranceConfig& tolerances() { return g_tolerances; }

void set_tolerances(const ToleranceConfig& config) {
    auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!positive(config.rank) || !positive(config.eq) || !positive(config.trim))
        throw InputError("tolerances must be finite and strictly positive");
    if (config.rank > 1e-6)
        throw InputError("rank tolerance must not exceed 1e-6");
    g_tolerances = config;
}

ScopedTolerances::ScopedTolerances(const ToleranceConfig& config) : saved_(g_tolerances) {
    set_tolerances(config);
}

ScopedTolerances::~ScopedTolerances() { g_tolerances = saved_; }

bool is_finite(const CMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

void require_finite(const CMatrix& m, std::string_view what) {
    if (!is_finite(m)) throw InputError(std::string(what) + ": non-finite matrix entry");
}

double distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return std::numeric_limits<double>::infinity();
    return (a - b).norm();
}

bool approx_equal(const CMatrix& a, const CMatrix& b, double tol) {
    const double d = distance(a, b);
    return d <= tol * std::max({1.0, a.norm(), b.norm()});
}

bool approx_equal(const CMatrix& a, const CMatrix& b) {
    return approx_equal(a, b, tolerances().eq);
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

Subspace Subspace::zero(Index ambient_dim) { return Subspace(CMatrix(ambient_dim, 0)); }

Subspace Subspace::full(Index ambient_dim) { return Subspace(identity(ambient_dim)); }

Subspace Subspace::from_orthonormal(CMatrix frame) {
    require_finite(frame, "subspace frame");
    if (frame.cols() > frame.rows()) throw InputError("frame has more columns than rows");
    const CMatrix gram = frame.adjoint() * frame;
    if (!approx_equal(gram, identity(frame.cols())))
        throw InputError("frame columns are not orthonormal");
    return Subspace(std::move(frame));
}

CMatrix Subspace::projector() const { return frame_ * frame_.adjoint(); }

Subspace orthonormal_basis(const CMatrix& cols, double reference) {
    require_finite(cols, "orthonormal_basis");
    if (cols.rows() == 0 || cols.cols() == 0) return Subspace(CMatrix(cols.rows(), 0));
    const Svd svd = compute_svd(cols, true, false);
    const double cut = rank_cutoff(svd.sigma, reference);
    Index rank = 0;
    while (rank < svd.sigma.size() && svd.sigma(rank) > cut) ++rank;
    return Subspace(svd.u.leftCols(rank));
}

Subspace kernel(const CMatrix& m, double reference) {
    require_finite(m, "kernel");
    const Index n = m.cols();
    if (n == 0) return Subspace(CMatrix(0, 0));
    if (m.rows() == 0) return Subspace(identity(n));
    const Svd svd = compute_svd(m, false, true);
    const double cut = rank_cutoff(svd.sigma, reference);
    Index rank = 0;
    while (rank < svd.sigma.size() && svd.sigma(rank) > cut) ++rank;
    return Subspace(svd.v.rightCols(n - rank));
}

Subspace meet_subspace(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw InputError("meet_subspace: dimension mismatch");
    const Index n = a.ambient_dim();
    CMatrix stacked(2 * n, n);
    stacked.topRows(n) = identity(n) - a.projector();
    stacked.bottomRows(n) = identity(n) - b.projector();
    return kernel(stacked, 1.0);
}

Subspace join_subspace(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw InputError("join_subspace: dimension mismatch");
    CMatrix cols(a.ambient_dim(), a.dim() + b.dim());
    cols << a.frame(), b.frame();
    return orthonormal_basis(cols, 1.0);
}

Subspace ortho_complement(const Subspace& s) {
    if (s.is_zero()) return Subspace::full(s.ambient_dim());
    return kernel(s.frame().adjoint(), 1.0);
}

Subspace subspace_from_projector(const CMatrix& p) {
    require_finite(p, "projector");
    if (p.rows() != p.cols()) throw InputError("projector must be square");
    if (!approx_equal(p, p.adjoint())) throw InputError("projector is not self-adjoint");
    if (!approx_equal(p * p, p)) throw InputError("projector is not idempotent");
    return orthonormal_basis(p, 1.0);
}

bool is_subspace_of(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw InputError("is_subspace_of: dimension mismatch");
    if (a.is_zero()) return true;
    const CMatrix residual = a.frame() - b.frame() * (b.frame().adjoint() * a.frame());
    return residual.norm() <= tolerances().eq;
}

bool same_subspace(const Subspace& a, const Subspace& b) {
    return a.ambient_dim() == b.ambient_dim() && a.dim() == b.dim() &&
           approx_equal(a.projector(), b.projector());
}

double projector_distance(const Subspace& a, const Subspace& b) {
    return distance(a.projector(), b.projector());
}

}  // namespace ppu
