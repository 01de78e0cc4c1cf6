#ifndef ACPB_JSON_IO_HPP
#define ACPB_JSON_IO_HPP

#include <json.hpp>

#include "acpb/curves.hpp"
#include "acpb/gauge_chart.hpp"
#include "acpb/polynomial.hpp"

namespace acpb {

using Json = nlohmann::ordered_json;

// Complex scalars are encoded as [re, im], complex vectors as arrays of
// such pairs, complex matrices as arrays of rows.
Complex complex_from_json(const Json& j);
CVec cvec_from_json(const Json& j);
CMat cmat_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Json json_from_cmat(const CMat& m);
Json json_from_vec(const Vec& v);

/// {"name", "dim", "structure_constants" (c[i][j][k]), "inner_product"},
/// or a plain string naming a built-in.
LieAlgebra algebra_from_json(const Json& j);

/// A polynomial in n variables: [{"c": coeff, "p": [e_1..e_n]}, ...].
MultiPoly multipoly_from_json(const Json& j, int nvars);

/// Chart document:
///   {"algebra": ..., "domain": {"min": [...], "max": [...]},
///    "fields": {"kind": "builtin-model", "name": ...} |
///              {"kind": "polynomial", "connection": [[poly ...] per
///               column], "soldering": ...},
///    "derivatives": {"numeric": bool, "step": h, "richardson": bool}}
GaugeChart chart_from_json(const Json& j);

/// Curve-form document:
///   {"kind": "polynomial"|"scalar", "coeffs": [cvec...], "Z": cvec,
///    "zeta": cvec, "surface": {"type": "disc"|"torus", "tau": [re,im]}}
CurveForm curve_form_from_json(const Json& j);

/// {"generators": [matrix...], "closure_depth", "tolerance"}
StabilizerGroup stabilizer_from_json(const Json& j);

/// Reads a required field, throwing SchemaError with a path hint.
const Json& require_field(const Json& j, const std::string& key,
                          const std::string& where);

}  // namespace acpb

#endif
