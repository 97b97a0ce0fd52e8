#pragma once

#include <json.hpp>

#include "choicone/classify.hpp"
#include "choicone/cones.hpp"
#include "choicone/mapspace.hpp"
#include "choicone/matrix.hpp"
#include "choicone/superop.hpp"
#include "choicone/transforms.hpp"

namespace choicone {

using Json = nlohmann::ordered_json;

// Readers throw Error(Format) on missing keys or wrong types; values are then
// validated by the constructors (DimMismatch, NonFinite, ...).
Json to_json(Complex z);
Complex complex_from_json(const Json& j);
Json to_json(std::span<const Complex> v);
std::vector<Complex> vector_from_json(const Json& j);

// {"rows", "cols", "entries": [[re, im], ...]} row-major
Json to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const Json& j);

// Matrix format plus "m", "n".
Json to_json(const TensorMatrix& z);
TensorMatrix tensor_from_json(const Json& j);

// {"m", "n", "choi": TensorMatrix} or {"m", "n", "kraus": [matrix, ...]}
Json to_json(const LinearMap& phi);
LinearMap map_from_json(const Json& j);
bool looks_like_map(const Json& j);

// {"m", "n", "atoms": [{"kind": "adLocal", "s", "t"}, {"kind": "transposeLeft"},
//  {"kind": "transposeRight"}, {"kind": "flip"}, {"kind": "adGlobal", "v"}]}
Json to_json(const TransformSpec& spec);
TransformSpec spec_from_json(const Json& j);

// {"m", "n", "matrix"}
Json to_json(const SuperOp& theta);
SuperOp superop_from_json(const Json& j);
// Accepts either a TransformSpec or a SuperOp document.
SuperOp theta_from_json(const Json& j);

Json to_json(const ConeId& cone);
Json to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

Json to_json(const PreservationResult& r);
Json to_json(const CanonicalFactorization& fac);
Json to_json(const Classification& c);

// Parses a file; throws Error(Format) on unreadable or malformed JSON.
Json read_json_file(const std::string& path);

}  // namespace choicone
