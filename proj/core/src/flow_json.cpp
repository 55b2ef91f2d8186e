#include "entroscope/flow_json.hpp"

#include "entroscope/errors.hpp"

namespace entroscope {

namespace {

Int parse_int(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
    return Int(j.get<long>());
  }
  if (j.is_string()) {
    Int z;
    if (z.set_str(j.get<std::string>(), 10) != 0) throw ParseError(where, "not an integer string");
    return z;
  }
  throw ParseError(where, "expected an integer");
}

const Json& field(const Json& doc, const char* key, const std::string& where) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<IntVector> parse_rows(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array of rows");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "/" + std::to_string(i);
    rows.push_back(parse_int_vector(j[i], w));
    if (rows.back().size() != rows.front().size()) throw ParseError(w, "row length differs from row 0");
  }
  return rows;
}

FlowPart parse_fg(const Json& doc, const std::string& where) {
  const Json& rank_j = field(doc, "rank", where);
  Int rank = parse_int(rank_j, where + "/rank");
  if (rank < 0 || !rank.fits_uint_p()) throw ParseError(where + "/rank", "rank must be a nonnegative integer");
  const auto k = static_cast<std::size_t>(rank.get_ui());

  std::vector<IntVector> rel_rows = parse_rows(field(doc, "relations", where), where + "/relations");
  IntMatrix rel(k, 0);
  if (!rel_rows.empty()) {
    if (rel_rows.size() != k)
      throw ParseError(where + "/relations", "expected " + std::to_string(k) + " rows (one per generator)");
    rel = IntMatrix::from_rows(rel_rows);
  }
  std::vector<IntVector> m_rows = parse_rows(field(doc, "matrix", where), where + "/matrix");
  if (m_rows.size() != k || (k > 0 && m_rows.front().size() != k))
    throw ParseError(where + "/matrix", "expected a " + std::to_string(k) + "x" + std::to_string(k) + " matrix");
  IntMatrix phi = IntMatrix::from_rows(m_rows, k);
  try {
    return FlowFG(FgAbGroup(k, rel), phi);
  } catch (const DomainError& e) {
    throw ParseError(where + "/matrix", e.what());
  }
}

void parse_into(const Json& doc, const std::string& where, std::vector<FlowPart>& out) {
  if (!doc.is_object()) throw ParseError(where, "expected an object");
  const Json& type = field(doc, "type", where);
  if (!type.is_string()) throw ParseError(where + "/type", "expected a string");
  const std::string t = type.get<std::string>();
  if (t == "fg") {
    out.push_back(parse_fg(doc, where));
  } else if (t == "cyclic") {
    Int base = parse_int(field(doc, "base", where), where + "/base");
    if (base < 0) throw ParseError(where + "/base", "negative base");
    IntPoly f(parse_int_vector(field(doc, "poly", where), where + "/poly"));
    try {
      Flow c = Flow::cyclic(base, f);
      out.insert(out.end(), c.parts().begin(), c.parts().end());
    } catch (const DomainError& e) {
      throw ParseError(where, e.what());
    }
  } else if (t == "sum") {
    const Json& parts = field(doc, "parts", where);
    if (!parts.is_array() || parts.empty()) throw ParseError(where + "/parts", "expected a nonempty array");
    for (std::size_t i = 0; i < parts.size(); ++i) parse_into(parts[i], where + "/parts/" + std::to_string(i), out);
  } else {
    throw ParseError(where + "/type", "unknown flow type \"" + t + "\"");
  }
}

Json serialize_part(const FlowPart& part) {
  Json j;
  if (const auto* fg = std::get_if<FlowFG>(&part)) {
    j["type"] = "fg";
    j["rank"] = fg->ambient_rank();
    const IntMatrix& rel = fg->group().relations();
    j["relations"] = rel.cols() == 0 ? Json::array() : to_json(rel);
    j["matrix"] = to_json(fg->phi());
    return j;
  }
  const auto& c = std::get<CyclicFlow>(part);
  j["type"] = "cyclic";
  j["base"] = to_json(c.base());
  j["poly"] = to_json(c.poly().coeffs());
  return j;
}

}  // namespace

IntVector parse_int_vector(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an integer array");
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_int(j[i], where + "/" + std::to_string(i)));
  return v;
}

Flow parse_flow(const Json& doc) {
  std::vector<FlowPart> parts;
  parse_into(doc, "", parts);
  return Flow(std::move(parts));
}

Flow parse_flow_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_flow(doc);
}

IntPoly parse_poly_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("invalid JSON: ") + e.what());
  }
  return IntPoly(parse_int_vector(doc, ""));
}

Json serialize_flow(const Flow& flow) {
  if (flow.size() == 1) return serialize_part(flow.part(0));
  Json j;
  j["type"] = "sum";
  j["parts"] = Json::array();
  for (const auto& p : flow.parts()) j["parts"].push_back(serialize_part(p));
  return j;
}

Json to_json(const Int& z) {
  if (z.fits_slong_p()) return Json(z.get_si());
  return Json(z.get_str());
}

Json to_json(const IntVector& v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(to_json(x));
  return j;
}

Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) j.push_back(to_json(m.row(i)));
  return j;
}

Json to_json(const EntropyValue& v) {
  Json j;
  switch (v.kind()) {
    case EntropyValue::Kind::Zero: j["kind"] = "zero"; break;
    case EntropyValue::Kind::Infinity: j["kind"] = "infinity"; break;
    case EntropyValue::Kind::Finite:
      j["kind"] = "finite";
      j["value"] = v.value();
      j["err"] = v.err();
      break;
  }
  return j;
}

Json to_json(const SubmoduleDesc& n) {
  Json j;
  j["parts"] = Json::array();
  for (std::size_t i = 0; i < n.parts.size(); ++i) {
    Json p;
    p["part"] = i;
    if (n.parts[i].generator)
      p["generator"] = to_json(n.parts[i].generator->coeffs());
    else
      p["subgroup"] = to_json(n.parts[i].subgroup->basis());
    j["parts"].push_back(p);
  }
  j["iso"] = n.iso;
  return j;
}

}  // namespace entroscope
