#pragma once

#include <json.hpp>
#include <string>

#include "entroscope/flows.hpp"
#include "entroscope/value.hpp"

namespace entroscope {

using Json = nlohmann::ordered_json;

// Flow documents:
//   {"type":"fg","rank":k,"relations":[[...]],"matrix":[[...]]}
//   {"type":"cyclic","base":c,"poly":[a0,a1,...]}
//   {"type":"sum","parts":[...]}
// Matrices are row-major; the relation matrix has k rows and one column per
// relation ([] for none). Throws ParseError with a JSON-path location.
Flow parse_flow(const Json& doc);
Flow parse_flow_text(const std::string& text);
Json serialize_flow(const Flow& flow);

Json to_json(const Int& z);
Json to_json(const IntVector& v);
Json to_json(const IntMatrix& m);
Json to_json(const EntropyValue& v);
Json to_json(const SubmoduleDesc& n);

// Integer array (numbers, or decimal strings for big values).
IntVector parse_int_vector(const Json& j, const std::string& where);
IntPoly parse_poly_text(const std::string& text);

}  // namespace entroscope
