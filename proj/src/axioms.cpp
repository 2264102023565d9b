#include "ppu/axioms.hpp"

#include "ppu/errors.hpp"
#include "ppu/group.hpp"
#include "ppu/json_io.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace ppu {

namespace {

constexpr double kGvmTolerance = 1e-9;

CheckReport start(const char* name, std::size_t samples, std::uint64_t seed, double tol) {
    CheckReport r;
    r.check = name;
    r.samples = samples;
    r.seed = seed;
    r.tolerance = tol;
    return r;
}

// Runs one sample; library errors are recorded as failures of that sample.
template <typename Body>
void run_sample(CheckReport& report, std::size_t i, std::uint64_t seed, Body body) {
    try {
        body();
    } catch (const Error& e) {
        report.expect(false, {{"sample", i}, {"seed", seed}, {"error", e.what()}});
    }
}

PpuElement random_element(const StarAlgebra& a, Rng& rng, int max_factors, int max_shift) {
    const int k = static_cast<int>(rng.uniform_int(0, max_factors));
    const int shift = static_cast<int>(rng.uniform_int(-max_shift, max_shift));
    return random_ppu(a, k, shift, rng);
}

double dist(const PpuElement& a, const PpuElement& b) { return coeff_distance(a.op(), b.op()); }

using Exponents = std::vector<int>;

LaurentOp diagonal_monomials(const Exponents& e) {
    const auto n = static_cast<Index>(e.size());
    LaurentOp::Coefficients c;
    for (Index i = 0; i < n; ++i) {
        auto it = c.try_emplace(e[static_cast<std::size_t>(i)], CMatrix::Zero(n, n)).first;
        it->second(i, i) = 1.0;
    }
    return LaurentOp(n, std::move(c));
}

// Exponent vector of diag(t^a_1, ..., t^a_n), or nullopt when phi is not of that form.
std::optional<Exponents> decode_diagonal(const LaurentOp& phi) {
    const double tol = tolerances().eq;
    const Index n = phi.dim();
    Exponents out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        int found = 0;
        for (const auto& [k, c] : phi.coeffs()) {
            for (Index j = 0; j < n; ++j)
                if (j != i && std::abs(c(i, j)) > tol) return std::nullopt;
            if (std::abs(c(i, i) - 1.0) <= tol) {
                out[static_cast<std::size_t>(i)] = k;
                ++found;
            } else if (std::abs(c(i, i)) > tol) {
                return std::nullopt;
            }
        }
        if (found != 1) return std::nullopt;
    }
    return out;
}

}  // namespace

CheckReport check_normality(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report = start("normality", samples, seed, tolerances().eq);
    const PpuElement t = PpuElement::t_power(a, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            PpuElement g = random_element(a, rng, 3, 2);
            PpuElement h = random_element(a, rng, 3, 2);
            if (i == 0) h = g;
            if (i == 1) {
                g = PpuElement::one(a);
                h = t;
            }
            const PpuElement lhs = t * join(g, h);
            const PpuElement rhs = join(t * g, t * h);
            const double err = dist(lhs, rhs);
            report.observe(err, {{"sample", i},
                                 {"g", laurent_to_json(g.op())},
                                 {"h", laurent_to_json(h.op())},
                                 {"residual", err}});
        });
    }
    report.finish();
    return report;
}

CheckReport check_singularity(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report = start("singularity", samples, seed, tolerances().eq);
    const PpuElement t = PpuElement::t_power(a, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            const InvariantSubspace m = random_projection_in(a, rng);
            InvariantSubspace n = random_projection_in(a, rng);
            if (i % 2 == 0) n = meet(n, complement(m));
            const PpuElement x = p_of(m);
            const PpuElement y = p_of(n);
            const Json payload = {{"sample", i},
                                  {"M", subspace_to_json(m.subspace())},
                                  {"N", subspace_to_json(n.subspace())}};

            const bool below = leq(x * y, t);
            const bool orthogonal = (m.projector() * n.projector()).norm() <= tolerances().eq;
            report.expect(below == orthogonal, payload);
            if (!below) {
                report.skip_vacuous();
                return;
            }
            const auto oplus = partial_oplus(m, n);
            if (!oplus) {
                report.expect(false, payload);
                return;
            }
            const PpuElement yx = y * x;
            const PpuElement sum = p_of(*oplus);
            const double err = std::max(dist(yx, join(x, y)), dist(yx, sum));
            Json p = payload;
            p["residual"] = err;
            report.observe(err, p);
        });
    }
    report.finish();
    return report;
}

CheckReport check_order_unit(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report = start("order_unit", samples, seed, tolerances().eq);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            const PpuElement phi = i == 0 ? PpuElement::one(a) : random_element(a, rng, 5, 3);
            const int k = order_unit_exponent(phi);
            const Json payload = {{"sample", i}, {"phi", laurent_to_json(phi.op())}, {"k", k}};
            report.expect(leq(phi, PpuElement::t_power(a, k)), payload);
            report.expect(!leq(phi, PpuElement::t_power(a, k - 1)), payload);
        });
    }
    report.finish();
    return report;
}

CheckReport check_gamma_oml(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report = start("gamma_oml", samples, seed, tolerances().eq);
    const PpuElement one = PpuElement::one(a);
    const PpuElement t = PpuElement::t_power(a, 1);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            InvariantSubspace m = random_projection_in(a, rng);
            InvariantSubspace n = random_projection_in(a, rng);
            if (i == 0) {
                m = InvariantSubspace::zero(a);
                n = InvariantSubspace::full(a);
            } else if (i == 1) {
                n = m;
            }
            const PpuElement pm = p_of(m);
            const PpuElement pn = p_of(n);
            double err = 0.0;
            // Gamma is a lattice map and respects the complement
            err = std::max(err, dist(meet(pm, pn), p_of(meet(m, n))));
            err = std::max(err, dist(join(pm, pn), p_of(join(m, n))));
            const PpuElement pm_c = complement_in_t(pm);
            err = std::max(err, dist(pm_c, p_of(complement(m))));
            err = std::max(err, projector_distance(gamma_inverse(pm).subspace(), m.subspace()));
            // OL1, OL2 in [1, t]
            err = std::max(err, dist(meet(pm, pm_c), one));
            err = std::max(err, dist(join(pm, pm_c), t));
            // orthomodular law for x = p_M ∧ p_N <= y = p_N
            const PpuElement x = meet(pm, pn);
            err = std::max(err, dist(join(x, meet(complement_in_t(x), pn)), pn));
            report.observe(err, {{"sample", i},
                                 {"M", subspace_to_json(m.subspace())},
                                 {"N", subspace_to_json(n.subspace())},
                                 {"residual", err}});
        });
    }
    report.finish();
    return report;
}

CheckReport check_gvm(const StarAlgebra& a, std::size_t samples, std::uint64_t seed) {
    CheckReport report = start("gvm", samples, seed, kGvmTolerance);
    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            const InvariantSubspace m = random_projection_in(a, rng);
            const InvariantSubspace n = i == 0 ? InvariantSubspace::zero(a)
                                               : meet(random_projection_in(a, rng), complement(m));
            const auto sum = partial_oplus(m, n);
            if (!sum) {
                report.skip_vacuous();
                return;
            }
            const PpuElement pm = p_of(m);
            const PpuElement pn = p_of(n);
            const PpuElement psum = p_of(*sum);
            const double err = std::max(dist(psum, pm * pn), dist(psum, pn * pm));
            report.observe(err, {{"sample", i},
                                 {"M", subspace_to_json(m.subspace())},
                                 {"N", subspace_to_json(n.subspace())},
                                 {"residual", err}});
        });
    }
    report.finish();
    return report;
}

CheckReport check_commutative_model(Index n_points, std::size_t samples, std::uint64_t seed) {
    if (n_points < 1) throw InputError("check_commutative_model: n_points must be at least 1");
    CheckReport report = start("commutative_model", samples, seed, tolerances().eq);
    CMatrix spectrum = CMatrix::Zero(n_points, n_points);
    for (Index i = 0; i < n_points; ++i) spectrum(i, i) = static_cast<double>(i + 1);
    const StarAlgebra diag = generate_algebra(n_points, {spectrum});
    const auto np = static_cast<std::size_t>(n_points);

    for (std::size_t i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, i);
        run_sample(report, i, s, [&] {
            Rng rng(s);
            Exponents ea(np), eb(np);
            for (std::size_t k = 0; k < np; ++k) {
                ea[k] = static_cast<int>(rng.uniform_int(-3, 3));
                eb[k] = static_cast<int>(rng.uniform_int(-3, 3));
            }
            Exponents sum(np), lo(np), hi(np), lifted(np);
            bool below = true;
            const int base = *std::min_element(ea.begin(), ea.end());
            for (std::size_t k = 0; k < np; ++k) {
                sum[k] = ea[k] + eb[k];
                lo[k] = std::min(ea[k], eb[k]);
                hi[k] = std::max(ea[k], eb[k]);
                lifted[k] = ea[k] - base;
                below = below && ea[k] <= eb[k];
            }
            const Json payload = {{"sample", i}, {"a", ea}, {"b", eb}};

            const PpuElement pa(diagonal_monomials(ea), diag);
            const PpuElement pb(diagonal_monomials(eb), diag);
            const PpuElement prod = pa * pb;
            const PpuElement m = meet(pa, pb);
            const PpuElement j = join(pa, pb);

            report.expect(decode_diagonal(prod.op()) == sum, payload);
            report.expect(leq(pa, pb) == below, payload);
            report.expect(decode_diagonal(m.op()) == lo, payload);
            report.expect(decode_diagonal(j.op()) == hi, payload);

            const PpuElement positive(diagonal_monomials(lifted), diag);
            const auto count = factor_positive(positive).factors.size();
            report.expect(count == static_cast<std::size_t>(
                                       *std::max_element(lifted.begin(), lifted.end())),
                          payload);

            const double err = std::max({coeff_distance(prod.op(), diagonal_monomials(sum)),
                                         coeff_distance(m.op(), diagonal_monomials(lo)),
                                         coeff_distance(j.op(), diagonal_monomials(hi))});
            report.observe(err, payload);
        });
    }
    report.finish();
    return report;
}

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names{"commutative_model", "gamma_oml", "gvm",
                                                "normality",         "order_unit", "orthomodular",
                                                "singularity"};
    return names;
}

std::vector<CheckReport> run_checks(const StarAlgebra& a, std::vector<std::string> names,
                                    std::size_t samples, std::uint64_t seed) {
    using Runner = std::function<CheckReport()>;
    const std::map<std::string, Runner> runners{
        {"commutative_model", [&] { return check_commutative_model(a.dim(), samples, seed); }},
        {"gamma_oml", [&] { return check_gamma_oml(a, samples, seed); }},
        {"gvm", [&] { return check_gvm(a, samples, seed); }},
        {"normality", [&] { return check_normality(a, samples, seed); }},
        {"order_unit", [&] { return check_order_unit(a, samples, seed); }},
        {"orthomodular", [&] { return check_orthomodular(a, samples, seed); }},
        {"singularity", [&] { return check_singularity(a, samples, seed); }},
    };
    if (names.empty()) names = check_names();
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::vector<CheckReport> out;
    for (const std::string& name : names) {
        const auto it = runners.find(name);
        if (it == runners.end()) throw InputError("unknown check \"" + name + "\"");
        out.push_back(it->second());
    }
    return out;
}

}  // namespace ppu
