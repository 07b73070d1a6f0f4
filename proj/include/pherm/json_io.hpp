#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pherm/evd.hpp"
#include "pherm/palindromic.hpp"
#include "pherm/pseudocirc.hpp"
#include "pherm/svd.hpp"

namespace pherm {

using json = nlohmann::ordered_json;

// Coefficient fragment: {"den": N, "terms": [{"k", "re", "im"}, ...]}, k in the
// w = z^{1/N} variable. Zero coefficients are not written.
json to_json(const FracLaurent& f);
FracLaurent laurent_from_json(const json& j);

// Matrix: {"m", "n", "entries": [[fragment, ...], ...]}.
json to_json(const LaurentMatrix& a);
LaurentMatrix matrix_from_json(const json& j);

// Complex scalars are read as a number, [re, im] or {"re", "im"} and written
// as [re, im].
cplx complex_from_json(const json& j);
json to_json(cplx z);

// Polynomial: {"grade": g, "coeffs": [P_0, ..., P_g]}, each a dense n x n
// array of complex scalars.
json to_json(const PalindromicPoly& p);
PalindromicPoly poly_from_json(const json& j);

json to_json(const Residuals& r, int N);
json to_json(const EvdResult& r);
json to_json(const PseudoCircResult& r);
json to_json(const SvdResult& r);
json to_json(const SignReport& r);

/// Reads and parses a JSON file; throws ParseError.
json read_json_file(const std::string& path);
/// Serialization used for every result file; doubles round-trip exactly.
std::string dump(const json& j);

}  // namespace pherm
