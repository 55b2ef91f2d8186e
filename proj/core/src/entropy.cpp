#include "entroscope/entropy.hpp"

#include "entroscope/errors.hpp"
#include "entroscope/mahler.hpp"
#include "entroscope/radicals.hpp"

namespace entroscope {

namespace {

bool part_is_torsion(const FlowPart& part) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return fg->is_finite();
  const auto& c = std::get<CyclicFlow>(part);
  return c.base() > 0 || (!c.poly().is_zero() && c.poly().degree() == 0);
}

EntropyValue closed_form(const FlowPart& part, EntropyKind kind, double abs_err) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) {
    if (kind == EntropyKind::Ha) return mahler(fg->free_charpoly(), abs_err);
    return EntropyValue::zero();
  }
  const auto& c = std::get<CyclicFlow>(part);
  const IntPoly& f = c.poly();
  switch (kind) {
    case EntropyKind::Ha:
      if (c.base() == 0) return f.is_zero() ? EntropyValue::infinity() : mahler(f, abs_err);
      return f.is_zero() ? EntropyValue::log_of(c.base()) : EntropyValue::zero();
    case EntropyKind::Ent:
      if (c.base() == 0) return f.is_zero() ? EntropyValue::zero() : EntropyValue::log_of(content(f));
      return f.is_zero() ? EntropyValue::log_of(c.base()) : EntropyValue::zero();
    case EntropyKind::Rank:
      return (c.base() == 0 && f.is_zero()) ? EntropyValue::count(1) : EntropyValue::zero();
  }
  return EntropyValue::zero();
}

IntVector zero_vector(const FlowPart& part) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return IntVector(fg->ambient_rank());
  return {};
}

std::vector<IntVector> part_module_generators(const FlowPart& part) {
  std::vector<IntVector> out;
  if (const auto* fg = std::get_if<FlowFG>(&part)) {
    for (std::size_t i = 0; i < fg->ambient_rank(); ++i) {
      IntVector e(fg->ambient_rank());
      e[i] = 1;
      if (!fg->group().is_zero_element(e)) out.push_back(e);
    }
    return out;
  }
  if (!std::get<CyclicFlow>(part).is_trivial()) out.push_back({Int(1)});
  return out;
}

std::vector<IntVector> part_torsion_generators(const FlowPart& part) {
  std::vector<IntVector> out;
  if (const auto* fg = std::get_if<FlowFG>(&part)) {
    Subgroup t = torsion_subgroup(fg->group());
    for (std::size_t j = 0; j < t.basis().cols(); ++j) {
      IntVector v = t.basis().col(j);
      if (!fg->group().is_zero_element(v)) out.push_back(v);
    }
    return out;
  }
  const auto& c = std::get<CyclicFlow>(part);
  if (c.is_trivial()) return out;
  if (c.base() > 0) {
    out.push_back({Int(1)});
  } else if (!c.poly().is_zero()) {
    auto [cont, prim] = content_primitive(c.poly());
    if (cont > 1) out.push_back(prim.coeffs());
  }
  return out;
}

std::vector<Element> single_part(const std::vector<IntVector>& gens) {
  std::vector<Element> out;
  for (const auto& g : gens) out.push_back(Element{g});
  return out;
}

std::vector<Element> spread(const Flow& flow, std::vector<IntVector> (*per_part)(const FlowPart&)) {
  std::vector<Element> out;
  for (std::size_t p = 0; p < flow.size(); ++p) {
    for (const auto& g : per_part(flow.part(p))) {
      Element e;
      for (std::size_t q = 0; q < flow.size(); ++q) e.push_back(q == p ? g : zero_vector(flow.part(q)));
      out.push_back(std::move(e));
    }
  }
  return out;
}

EntropyValue by_trajectory(const FlowPart& part, EntropyKind kind) {
  TrajectoryOptions opt;
  std::vector<IntVector> gens;
  switch (kind) {
    case EntropyKind::Ha:
      if (!part_is_torsion(part)) throw DomainError("the trajectory method computes ha on torsion flows only");
      gens = part_module_generators(part);
      break;
    case EntropyKind::Ent: gens = part_torsion_generators(part); break;
    case EntropyKind::Rank:
      gens = part_module_generators(part);
      opt.invariant = TrajectoryInvariant::Rank;
      break;
  }
  if (gens.empty()) return EntropyValue::zero();
  return trajectory(Flow(std::vector<FlowPart>{part}), single_part(gens), opt).estimate;
}

// Small nonzero elements of each part: 0/1 coefficient patterns.
std::vector<std::pair<std::size_t, IntVector>> sample_elements(const Flow& flow, std::size_t limit) {
  std::vector<std::pair<std::size_t, IntVector>> out;
  std::size_t live = 0;
  for (const auto& part : flow.parts()) live += part_module_generators(part).empty() ? 0 : 1;
  if (live == 0) return out;
  const std::size_t per_part = std::max<std::size_t>(1, limit / live);
  for (std::size_t p = 0; p < flow.size() && out.size() < limit; ++p) {
    const FlowPart& part = flow.part(p);
    if (part_module_generators(part).empty()) continue;
    std::size_t width = 4;
    if (const auto* fg = std::get_if<FlowFG>(&part)) width = fg->ambient_rank();
    std::size_t taken = 0;
    for (unsigned long mask = 1; mask < (1UL << std::min<std::size_t>(width, 16)) && taken < per_part && out.size() < limit;
         ++mask) {
      IntVector x(width);
      for (std::size_t i = 0; i < width; ++i) x[i] = (mask >> i) & 1UL;
      bool zero;
      if (const auto* fg = std::get_if<FlowFG>(&part)) {
        zero = fg->group().is_zero_element(x);
      } else {
        const auto& c = std::get<CyclicFlow>(part);
        zero = cyclic_member(c, c.poly(), IntPoly(x));
        x = IntPoly(x).coeffs();
      }
      if (zero) continue;
      out.emplace_back(p, std::move(x));
      ++taken;
    }
  }
  return out;
}

}  // namespace

const char* to_string(EntropyKind k) {
  switch (k) {
    case EntropyKind::Ha: return "ha";
    case EntropyKind::Ent: return "ent";
    case EntropyKind::Rank: return "rank";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::ClosedForm: return "closed_form";
    case Method::Trajectory: return "trajectory";
  }
  return "?";
}

EntropyKind parse_entropy_kind(const std::string& s) {
  if (s == "ha") return EntropyKind::Ha;
  if (s == "ent") return EntropyKind::Ent;
  if (s == "rank" || s == "ent_rank") return EntropyKind::Rank;
  throw ParseError("kind", "expected ha, ent or rank, got \"" + s + "\"");
}

Method parse_method(const std::string& s) {
  if (s == "auto") return Method::Auto;
  if (s == "closed_form") return Method::ClosedForm;
  if (s == "trajectory") return Method::Trajectory;
  throw ParseError("method", "expected auto, closed_form or trajectory, got \"" + s + "\"");
}

bool is_torsion_flow(const Flow& flow) {
  for (const auto& part : flow.parts())
    if (!part_is_torsion(part)) return false;
  return true;
}

EntropyValue entropy(const Flow& flow, EntropyKind kind, Method method, double precision) {
  if (!(precision > 0)) throw DomainError("precision must be positive");
  const double per_part = precision / static_cast<double>(std::max<std::size_t>(1, flow.size()));
  std::vector<EntropyValue> values;
  for (const auto& part : flow.parts()) {
    // Every representable part has a closed form, so auto never needs the
    // trajectory engine.
    values.push_back(method == Method::Trajectory ? by_trajectory(part, kind) : closed_form(part, kind, per_part));
  }
  return combine(values, CombineOp::Sum);
}

std::vector<Element> module_generators(const Flow& flow) { return spread(flow, part_module_generators); }
std::vector<Element> torsion_generators(const Flow& flow) { return spread(flow, part_torsion_generators); }

SubmoduleDesc pinsker_radical(const Flow& flow, EntropyKind kind) {
  switch (kind) {
    case EntropyKind::Ha: return radical(flow, RadicalKind::Q);
    case EntropyKind::Rank: return radical(flow, RadicalKind::W);
    case EntropyKind::Ent: break;
  }
  // ent vanishes exactly on submodules meeting the torsion part in zero
  // entropy: the whole of a FlowFG or finite part, (content f) in Z[t]/(f),
  // zero in a Bernoulli part over Z/c, everything in Z[t].
  std::vector<PartSubmodule> parts;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part)) {
      parts.push_back({std::nullopt, Subgroup::whole(fg->group())});
      continue;
    }
    const auto& c = std::get<CyclicFlow>(part);
    const IntPoly& f = c.poly();
    if (c.base() == 0)
      parts.push_back({f.is_zero() ? IntPoly{1} : IntPoly::constant(content(f)), std::nullopt});
    else
      parts.push_back({f.is_zero() ? IntPoly() : IntPoly{1}, std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

SubmoduleDesc pinsker(const Flow& flow, EntropyKind kind) {
  SubmoduleDesc p = pinsker_radical(flow, kind);
  auto [sub, quot] = sub_quot(flow, p);
  EntropyValue hp = entropy(sub, kind);
  if (!hp.is_zero()) throw VerificationError("Pinsker check failed: h(P) = " + hp.render());
  for (const auto& [part, x] : sample_elements(quot, 32)) {
    EntropyValue hc = entropy(cyclic_subflow(quot, part, x), kind);
    if (hc.is_zero())
      throw VerificationError("Pinsker check failed: a nonzero cyclic subflow of M/P has zero entropy (part " +
                              std::to_string(part) + ")");
  }
  return p;
}

const char* to_string(TorsionClass c) {
  switch (c) {
    case TorsionClass::Torsion: return "torsion";
    case TorsionClass::TorsionFree: return "torsion_free";
    case TorsionClass::Mixed: return "mixed";
  }
  return "?";
}

Classification classify(const Flow& flow, EntropyKind kind) {
  Classification out;
  out.pinsker = pinsker(flow, kind);
  if (is_whole(flow, out.pinsker))
    out.cls = TorsionClass::Torsion;
  else if (is_zero(flow, out.pinsker))
    out.cls = TorsionClass::TorsionFree;
  else
    out.cls = TorsionClass::Mixed;
  std::tie(out.sub, out.quot) = sub_quot(flow, out.pinsker);
  return out;
}

}  // namespace entroscope
