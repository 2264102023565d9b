#include "ppu/star_algebra.hpp"

#include "ppu/errors.hpp"
#include "ppu/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ppu {

namespace {

CVector vec(const CMatrix& m) { return m.reshaped(); }

CMatrix unvec(const CVector& v, Index n) { return v.reshaped(n, n); }

CMatrix stack_vecs(const std::vector<CMatrix>& mats, Index n) {
    CMatrix out(n * n, static_cast<Index>(mats.size()));
    for (std::size_t k = 0; k < mats.size(); ++k) out.col(static_cast<Index>(k)) = vec(mats[k]);
    return out;
}

std::vector<CMatrix> frame_to_matrices(const Subspace& s, Index n) {
    std::vector<CMatrix> out;
    out.reserve(static_cast<std::size_t>(s.dim()));
    for (Index k = 0; k < s.dim(); ++k) out.push_back(unvec(s.frame().col(k), n));
    return out;
}

// Kernel of the stacked maps x -> x g - g x over the given matrices.
std::vector<CMatrix> commutant_of(const std::vector<CMatrix>& mats, Index n) {
    if (mats.empty()) return frame_to_matrices(Subspace::full(n * n), n);
    const CMatrix id = identity(n);
    CMatrix stacked(static_cast<Index>(mats.size()) * n * n, n * n);
    for (std::size_t k = 0; k < mats.size(); ++k) {
        const CMatrix& g = mats[k];
        CMatrix block = CMatrix::Zero(n * n, n * n);
        // vec(x g) = (g^T ⊗ I) vec x,  vec(g x) = (I ⊗ g) vec x
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j) {
                block.block(i * n, j * n, n, n) += g(j, i) * id;
                if (i == j) block.block(i * n, j * n, n, n) -= g;
            }
        stacked.middleRows(static_cast<Index>(k) * n * n, n * n) = block;
    }
    return frame_to_matrices(kernel(stacked, 1.0), n);
}

void require_square(const CMatrix& m, Index n, const char* what) {
    if (m.rows() != n || m.cols() != n)
        throw InputError(std::string(what) + ": expected " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix");
    require_finite(m, what);
}

void require_same_algebra(const InvariantSubspace& m, const InvariantSubspace& n) {
    if (!m.algebra().same_as(n.algebra()))
        throw InvalidOperand("operands belong to different algebras");
}

}  // namespace

double StarAlgebra::membership_residual(const CMatrix& x) const {
    require_square(x, dim(), "membership");
    const CVector v = vec(x);
    return (v - data_->basis_vec * (data_->basis_vec.adjoint() * v)).norm();
}

CMatrix StarAlgebra::project(const CMatrix& x) const {
    require_square(x, dim(), "project");
    const CVector v = vec(x);
    return unvec(data_->basis_vec * (data_->basis_vec.adjoint() * v), dim());
}

bool StarAlgebra::same_as(const StarAlgebra& other) const {
    if (data_ == other.data_) return true;
    if (dim() != other.dim() || linear_dim() != other.linear_dim()) return false;
    return std::all_of(other.basis().begin(), other.basis().end(),
                       [this](const CMatrix& b) { return contains(*this, b); });
}

StarAlgebra generate_algebra(Index n, const std::vector<CMatrix>& gens) {
    if (n <= 0) throw InputError("algebra dimension must be positive");
    std::vector<CMatrix> letters;
    for (const CMatrix& g : gens) {
        require_square(g, n, "generator");
        const double norm = g.norm();
        if (norm == 0.0) continue;
        letters.push_back(g / norm);
        letters.push_back(g.adjoint() / norm);
    }

    // Words in the letters, grown by right multiplication until the span
    // stops growing. Each round adds at least one dimension, so at most n^2.
    std::vector<CMatrix> spanning{identity(n)};
    spanning.insert(spanning.end(), letters.begin(), letters.end());
    Subspace span = orthonormal_basis(stack_vecs(spanning, n), 1.0);
    for (Index round = 0; round < n * n; ++round) {
        std::vector<CMatrix> words = frame_to_matrices(span, n);
        const std::size_t base = words.size();
        for (std::size_t k = 0; k < base; ++k)
            for (const CMatrix& g : letters) words.push_back(words[k] * g);
        Subspace grown = orthonormal_basis(stack_vecs(words, n), 1.0);
        const bool stable = grown.dim() == span.dim();
        span = std::move(grown);
        if (stable) break;
    }

    auto data = std::make_shared<StarAlgebra::Data>();
    data->n = n;
    data->generators = gens;
    data->basis = frame_to_matrices(span, n);
    data->basis_vec = span.frame();
    data->commutant_basis = commutant_of(letters, n);
    return StarAlgebra(std::move(data));
}

StarAlgebra commutant(const StarAlgebra& a) {
    return generate_algebra(a.dim(), a.commutant_basis());
}

bool contains(const StarAlgebra& a, const CMatrix& x) {
    return a.membership_residual(x) <= tolerances().eq * std::max(1.0, x.norm());
}

MembershipCriteria membership_criteria(const StarAlgebra& a, const Subspace& s) {
    if (s.ambient_dim() != a.dim()) throw InputError("subspace and algebra dimensions differ");
    const double tol = tolerances().eq;
    MembershipCriteria out;
    const CMatrix p = s.projector();
    out.projector_residual = a.membership_residual(p);
    out.projector_in_algebra = out.projector_residual <= tol * std::max(1.0, p.norm());

    const CMatrix complement_proj = identity(a.dim()) - p;
    for (const CMatrix& c : a.commutant_basis()) {
        if (s.is_zero()) break;
        const double r = (complement_proj * c * s.frame()).norm() / std::max(1.0, c.norm());
        out.invariance_residual = std::max(out.invariance_residual, r);
    }
    out.commutant_invariant = out.invariance_residual <= tol;
    return out;
}

bool is_member_XAprime(const StarAlgebra& a, const Subspace& s) {
    const MembershipCriteria c = membership_criteria(a, s);
    if (c.projector_in_algebra != c.commutant_invariant)
        throw NumericalError("X(A') membership criteria disagree: projector residual " +
                             std::to_string(c.projector_residual) + ", invariance residual " +
                             std::to_string(c.invariance_residual));
    return c.projector_in_algebra;
}

InvariantSubspace InvariantSubspace::certify(const StarAlgebra& a, Subspace s) {
    if (!is_member_XAprime(a, s)) throw InvalidOperand("subspace is not invariant under A'");
    return InvariantSubspace(a, std::move(s));
}

InvariantSubspace InvariantSubspace::zero(const StarAlgebra& a) {
    return InvariantSubspace(a, Subspace::zero(a.dim()));
}

InvariantSubspace InvariantSubspace::full(const StarAlgebra& a) {
    return InvariantSubspace(a, Subspace::full(a.dim()));
}

CMatrix random_unitary(Index n, Rng& rng) {
    CMatrix g(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) g(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        const double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

InvariantSubspace random_projection_in(const StarAlgebra& a, Rng& rng) {
    constexpr int kMaxAttempts = 16;
    constexpr double kClusterGap = 1e-6;
    const Index n = a.dim();

    std::vector<CMatrix> hermitian;
    for (const CMatrix& b : a.basis()) {
        hermitian.push_back((b + b.adjoint()) / 2.0);
        hermitian.push_back((b - b.adjoint()) / Complex(0.0, 2.0));
    }

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        CMatrix h = CMatrix::Zero(n, n);
        for (const CMatrix& b : hermitian) h += rng.normal() * b;
        h = (h + h.adjoint()).eval() / 2.0;

        Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
        const Eigen::VectorXd& lambda = eig.eigenvalues();
        const double spread = lambda(n - 1) - lambda(0);
        const double scale = std::max(std::abs(lambda(0)), std::abs(lambda(n - 1)));
        const double gap_tol = kClusterGap * spread;

        // cluster boundaries between consecutive eigenvalues
        std::vector<Index> starts{0};
        bool ambiguous = false;
        if (spread > 1e-9 * scale) {
            for (Index i = 1; i < n; ++i) {
                const double gap = lambda(i) - lambda(i - 1);
                if (gap > gap_tol) {
                    if (gap < 1e3 * gap_tol) ambiguous = true;
                    starts.push_back(i);
                }
            }
        }
        if (ambiguous) continue;
        starts.push_back(n);

        CMatrix frame(n, 0);
        for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
            if (!rng.coin()) continue;
            const Index len = starts[c + 1] - starts[c];
            CMatrix grown(n, frame.cols() + len);
            grown << frame, eig.eigenvectors().middleCols(starts[c], len);
            frame = std::move(grown);
        }
        Subspace s = Subspace::from_orthonormal(std::move(frame));
        if (is_member_XAprime(a, s)) return InvariantSubspace::certify(a, std::move(s));
    }
    throw NumericalError("random_projection_in: no well-separated spectral projection after " +
                         std::to_string(kMaxAttempts) + " attempts");
}

InvariantSubspace random_projection_in(const StarAlgebra& a, std::uint64_t seed) {
    Rng rng(seed);
    return random_projection_in(a, rng);
}

StarAlgebra random_algebra(Index n, std::uint64_t seed) {
    if (n <= 0) throw InputError("algebra dimension must be positive");
    Rng rng(seed);
    struct Block {
        Index size;          // k: matrix block size
        Index multiplicity;  // m: copies
    };
    std::vector<Block> blocks;
    for (Index remaining = n; remaining > 0;) {
        const auto k = static_cast<Index>(rng.uniform_int(1, remaining));
        const auto m = static_cast<Index>(rng.uniform_int(1, remaining / k));
        blocks.push_back({k, m});
        remaining -= k * m;
    }

    CMatrix g1 = CMatrix::Zero(n, n);
    CMatrix g2 = CMatrix::Zero(n, n);
    Index offset = 0;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto [k, m] = blocks[b];
        CMatrix r(k, k);
        for (Index j = 0; j < k; ++j)
            for (Index i = 0; i < k; ++i) r(i, j) = rng.complex_normal();
        // r ⊗ I_m
        for (Index i = 0; i < k; ++i)
            for (Index j = 0; j < k; ++j)
                g1.block(offset + i * m, offset + j * m, m, m) = r(i, j) * identity(m);
        g2.block(offset, offset, k * m, k * m) =
            static_cast<double>(b + 1) * identity(k * m);
        offset += k * m;
    }
    const CMatrix u = random_unitary(n, rng);
    return generate_algebra(n, {u * g1 * u.adjoint(), u * g2 * u.adjoint()});
}

InvariantSubspace meet(const InvariantSubspace& m, const InvariantSubspace& n) {
    require_same_algebra(m, n);
    return InvariantSubspace::certify(m.algebra(), meet_subspace(m.subspace(), n.subspace()));
}

InvariantSubspace join(const InvariantSubspace& m, const InvariantSubspace& n) {
    require_same_algebra(m, n);
    return InvariantSubspace::certify(m.algebra(), join_subspace(m.subspace(), n.subspace()));
}

InvariantSubspace complement(const InvariantSubspace& m) {
    return InvariantSubspace::certify(m.algebra(), ortho_complement(m.subspace()));
}

bool is_perp(const InvariantSubspace& m, const InvariantSubspace& n) {
    require_same_algebra(m, n);
    if (m.subspace().is_zero() || n.subspace().is_zero()) return true;
    return (m.subspace().frame().adjoint() * n.subspace().frame()).norm() <= tolerances().eq;
}

std::optional<InvariantSubspace> partial_oplus(const InvariantSubspace& m,
                                               const InvariantSubspace& n) {
    if (!is_perp(m, n)) return std::nullopt;
    return join(m, n);
}

CheckReport check_orthomodular(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report;
    report.check = "orthomodular";
    report.samples = samples;
    report.seed = seed;
    report.tolerance = tolerances().eq;
    for (std::size_t i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, i));
        const InvariantSubspace upper = random_projection_in(a, rng);
        const InvariantSubspace lower = meet(random_projection_in(a, rng), upper);
        const InvariantSubspace lhs = join(lower, meet(complement(lower), upper));
        const double err = projector_distance(lhs.subspace(), upper.subspace());
        report.observe(err, {{"sample", i},
                             {"M", subspace_to_json(lower.subspace())},
                             {"N", subspace_to_json(upper.subspace())},
                             {"residual", err}});
    }
    report.finish();
    return report;
}

}  // namespace ppu
