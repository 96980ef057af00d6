#pragma once

#include <string>

#include <json.hpp>

#include "dlt/knot.hpp"
#include "dlt/reduction.hpp"

// JSON forms of the library objects. Ring elements are strings in the Laurent text grammar
// ("-1 + z^-1 + z", "3/2"); plain JSON integers are accepted on input. Parsing errors throw
// ParseError, ring violations DimensionMismatch or the constructors' own errors.
namespace dlt::io {

using json = nlohmann::json;

RingSpec ring_from_json(const json& j);
json to_json(const RingSpec& R);

Laurent element_from_json(const json& j, const RingSpec& R);
// Nested row arrays, or {"rows": r, "cols": c, "data": [...]} (needed for empty shapes).
Matrix matrix_from_json(const json& j, const RingSpec& R);
json to_json(const Matrix& m);

// {"ring", "lo", "dims", "d": {"r": matrix}}
ChainComplex complex_from_json(const json& j);
json to_json(const ChainComplex& C);
// {"degree", "src", "tgt", "components": {"r": matrix}}
ChainMap map_from_json(const json& j);
json to_json(const ChainMap& f);

// {"n", "eps", "kind", "complex", "psi": {"r": matrix}}
Structure structure_from_json(const json& j);
json to_json(const Structure& x);
// {"target", "f": {...}, "delta": {...}, "base"}
StructuredPair pair_from_json(const json& j);
json to_json(const StructuredPair& x);
// {"left", "right", "plus", "minus"}
DoubleCobordismCertificate certificate_from_json(const json& j);
json to_json(const DoubleCobordismCertificate& c);

SeifertForm seifert_from_json(const json& j);
json to_json(const SeifertForm& F);
json to_json(const DWInvariantVector& v);
json to_json(const SurgeryObstruction& o);
json to_json(const ReductionTrace& t);
json to_json(const LinkingForm& T);

// One catalog line: {"schema": 1, "name", "seifert": [[...]], "k" and/or "epsilon", "provenance"}.
KnotRecord record_from_json(const json& j);
json to_json(const KnotRecord& rec);
json to_json(const ObstructionReport& r);

}  // namespace dlt::io
