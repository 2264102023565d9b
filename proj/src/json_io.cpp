#include "ppu/json_io.hpp"

#include "ppu/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace ppu {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw InputError("expected a JSON object");
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(std::string("missing field \"") + key + "\"");
    return *it;
}

Index count_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw InputError(std::string("field \"") + key + "\" must be a non-negative integer");
    return static_cast<Index>(v.get<std::int64_t>());
}

double real_of(const Json& v) {
    if (!v.is_number()) throw InputError("matrix entry must be numeric");
    return v.get<double>();
}

Complex entry_from_json(const Json& v) {
    if (v.is_number()) return {real_of(v), 0.0};
    if (v.is_array() && v.size() == 2) return {real_of(v[0]), real_of(v[1])};
    throw InputError("matrix entry must be [re, im] or a number");
}

void dump_to(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : j.items()) {  // std::map: sorted keys
                if (!first) out += ',';
                first = false;
                out += Json(key).dump();
                out += ':';
                dump_to(value, out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i != 0) out += ',';
                dump_to(j[i], out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            const double x = j.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                break;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
    Json data = Json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
        data.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const Json& j) {
    const Index rows = count_field(j, "rows");
    const Index cols = count_field(j, "cols");
    const Json& data = field(j, "data");
    if (!data.is_array() || static_cast<Index>(data.size()) != rows)
        throw InputError("matrix \"data\" must hold one array per row");
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
        const Json& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw InputError("matrix row " + std::to_string(i) + " has the wrong length");
        for (Index k = 0; k < cols; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
    }
    require_finite(m, "matrix");
    return m;
}

Json subspace_to_json(const Subspace& s) { return matrix_to_json(s.frame()); }

Subspace subspace_from_json(const Json& j) { return orthonormal_basis(matrix_from_json(j)); }

Json algebra_to_json(const StarAlgebra& a) {
    Json gens = Json::array();
    for (const CMatrix& g : a.generators()) gens.push_back(matrix_to_json(g));
    return {{"dim", a.dim()}, {"generators", std::move(gens)}};
}

StarAlgebra algebra_from_json(const Json& j) {
    const Index n = count_field(j, "dim");
    if (n == 0) throw InputError("algebra dimension must be positive");
    const Json& gens = field(j, "generators");
    if (!gens.is_array()) throw InputError("\"generators\" must be an array");
    std::vector<CMatrix> mats;
    for (const Json& g : gens) mats.push_back(matrix_from_json(g));
    return generate_algebra(n, mats);
}

Json laurent_to_json(const LaurentOp& op) {
    Json coeffs = Json::object();
    for (const auto& [k, c] : op.coeffs()) coeffs[std::to_string(k)] = matrix_to_json(c);
    return {{"dim", op.dim()}, {"coeffs", std::move(coeffs)}};
}

LaurentOp laurent_from_json(const Json& j) {
    const Index n = count_field(j, "dim");
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_object()) throw InputError("\"coeffs\" must be an object");
    LaurentOp::Coefficients out;
    for (const auto& [key, value] : coeffs.items()) {
        int k = 0;
        const char* first = key.data();
        const char* last = key.data() + key.size();
        if (*first == '+') ++first;
        const auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec != std::errc() || ptr != last || first == last)
            throw InputError("coefficient key \"" + key + "\" is not a decimal integer");
        if (out.contains(k)) throw InputError("duplicate exponent " + key);
        out.emplace(k, matrix_from_json(value));
    }
    return LaurentOp(n, std::move(out));
}

Json factor_list_to_json(const FactorList& f, Index dim) {
    Json factors = Json::array();
    for (const InvariantSubspace& m : f.factors) {
        if (m.subspace().ambient_dim() != dim) throw InputError("factor dimension mismatch");
        factors.push_back(subspace_to_json(m.subspace()));
    }
    return {{"shift", f.shift}, {"factors", std::move(factors)}};
}

FactorList factor_list_from_json(const Json& j, const StarAlgebra& a) {
    FactorList out;
    const Json& shift = field(j, "shift");
    if (!shift.is_number_integer()) throw InputError("\"shift\" must be an integer");
    out.shift = shift.get<int>();
    const Json& factors = field(j, "factors");
    if (!factors.is_array()) throw InputError("\"factors\" must be an array");
    for (const Json& f : factors) out.factors.push_back(InvariantSubspace::certify(a, subspace_from_json(f)));
    return out;
}

Json report_to_json(const CheckReport& r) {
    return {{"check", r.check},
            {"samples", r.samples},
            {"seed", r.seed},
            {"pass", r.pass},
            {"inconclusive", r.inconclusive},
            {"max_error", r.max_error},
            {"tolerance", r.tolerance},
            {"vacuous", r.vacuous},
            {"failure_count", r.failure_count},
            {"failures", r.failures}};
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

std::string canonical_dump(const Json& j) {
    std::string out;
    dump_to(j, out);
    return out;
}

}  // namespace ppu
