#pragma once

// JSON forms of the library's values.
//
//   Matrix:      {"rows": r, "cols": c, "data": [[[re, im], ...], ...]}  (row-major)
//   Subspace:    a Matrix whose columns span the subspace (orthonormalized on load)
//   Algebra:     {"dim": n, "generators": [Matrix, ...]}
//   LaurentOp:   {"dim": n, "coeffs": {"<exponent>": Matrix, ...}}
//   FactorList:  {"shift": j, "factors": [Subspace, ...]}
//   CheckReport: {"check", "samples", "seed", "pass", "max_error", "failures", ...}
//
// Parse failures throw InputError.

#include "ppu/group.hpp"
#include "ppu/laurent.hpp"
#include "ppu/numfield.hpp"
#include "ppu/report.hpp"
#include "ppu/star_algebra.hpp"

#include <json.hpp>

#include <string>

namespace ppu {

using Json = nlohmann::json;

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json algebra_to_json(const StarAlgebra& a);
StarAlgebra algebra_from_json(const Json& j);

Json laurent_to_json(const LaurentOp& op);
LaurentOp laurent_from_json(const Json& j);

Json factor_list_to_json(const FactorList& f, Index dim);
FactorList factor_list_from_json(const Json& j, const StarAlgebra& a);

Json report_to_json(const CheckReport& r);

/// Parses text, mapping syntax errors to InputError.
Json parse_json(const std::string& text);

/// Canonical serialization: sorted object keys, no whitespace, floating
/// point numbers printed with 17 significant digits.
std::string canonical_dump(const Json& j);

}  // namespace ppu
