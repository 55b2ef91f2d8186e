#include "entroscope/radicals.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "entroscope/errors.hpp"
#include "modpoly.hpp"

namespace entroscope {

using detail::ModPoly;

namespace {

constexpr unsigned long kIterationCap = 1000000;

void require_supported(const CyclicFlow& c) {
  if (c.base() > 0 && !c.prime_base())
    throw UnsupportedBase("radicals need base 0 or a squarefree base; got " + c.base().get_str());
}

// gcd and exact quotient in Z[t] (base 0) or F_p[t].
IntPoly ring_gcd(const CyclicFlow& c, const IntPoly& a, const IntPoly& b) {
  if (c.base() == 0) return gcd(a, b);
  const std::uint64_t p = c.base().get_ui();
  return gcd(ModPoly::from_int(a, p), ModPoly::from_int(b, p)).to_int();
}

IntPoly ring_div(const CyclicFlow& c, const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) {
    if (!a.is_zero()) throw VerificationError("division by zero in generator arithmetic");
    return IntPoly();
  }
  if (c.base() == 0) {
    auto q = exact_divide(a, b);
    if (!q) throw VerificationError("inexact division in generator arithmetic");
    return *q;
  }
  const std::uint64_t p = c.base().get_ui();
  return divmod(ModPoly::from_int(a, p), ModPoly::from_int(b, p)).q.to_int();
}

// Annihilator-style quotient f / gcd(f, s): the generator of {x : f | s x}.
IntPoly strip(const CyclicFlow& c, const IntPoly& f, const IntPoly& s) { return ring_div(c, f, ring_gcd(c, f, s)); }

IntPoly x_minus_1_pow(unsigned n) { return pow(IntPoly{-1, 1}, n); }

struct QuasiData {
  unsigned a = 0;  // multiplicity of t
  Int d = 1;       // lcm of cyclotomic orders
};

QuasiData quasi_data(const IntPoly& chi) {
  QuasiData q;
  if (chi.degree() < 1) return q;
  for (const auto& f : factor(chi).factors) {
    if (f.poly == IntPoly::t()) {
      q.a = f.multiplicity;
    } else if (unsigned ord = cyclotomic_order(f.poly)) {
      q.d = lcm_int(q.d, Int(ord));
    }
  }
  return q;
}

IntPoly quasi_poly(const QuasiData& q) {
  if (!q.d.fits_uint_p()) throw ResourceError("cyclotomic period too large");
  IntPoly s = IntPoly::monomial(1, q.d.get_ui()) - IntPoly{1};
  return IntPoly::monomial(1, q.a) * s;
}

Subgroup kernel_chain(const FlowFG& flow, const IntMatrix& psi) {
  Subgroup k = Subgroup::zero(flow.group());
  while (true) {
    Subgroup next = preimage(flow.group(), psi, k);
    if (next == k) return k;
    k = std::move(next);
  }
}

IntMatrix shifted(const FlowFG& flow) { return flow.phi() - IntMatrix::identity(flow.ambient_rank()); }

Subgroup lift(const FgAbGroup& g, const Subgroup& s) { return Subgroup::from_matrix(g, s.basis()); }

// (tail, period) of x under multiplication by t in the cyclic part, or
// nullopt with a reason.
struct Orbit {
  bool periodic = false;
  unsigned long tail = 0;
  Int period = 1;
  std::string reason;
};

Orbit cyclic_orbit(const CyclicFlow& c, const IntPoly& x) {
  require_supported(c);
  Orbit o;
  if (cyclic_member(c, IntPoly(), x)) {
    o.periodic = true;
    return o;
  }
  const IntPoly& f = c.poly();
  if (f.is_zero()) {
    o.reason = "nonzero point of a Bernoulli shift";
    return o;
  }
  IntPoly h = strip(c, f, x);  // annihilator of x
  if (c.base() == 0) {
    Factorization fac = factor(h);
    if (fac.content != 1) {
      o.reason = "annihilator has integer content " + fac.content.get_str();
      return o;
    }
    for (const auto& fct : fac.factors) {
      if (fct.poly == IntPoly::t()) {
        o.tail = fct.multiplicity;
        continue;
      }
      unsigned ord = cyclotomic_order(fct.poly);
      if (ord == 0) {
        o.reason = "annihilator factor " + fct.poly.to_string() + " has a root that is neither 0 nor a root of unity";
        return o;
      }
      if (fct.multiplicity > 1) {
        o.reason = "repeated cyclotomic factor " + fct.poly.to_string();
        return o;
      }
      o.period = lcm_int(o.period, Int(ord));
    }
    o.periodic = true;
    return o;
  }
  const std::uint64_t p = c.base().get_ui();
  ModPoly hp = ModPoly::from_int(h, p);
  ModPoly tp(p, {0, 1});
  while (hp.degree() >= 1 && hp.coeff(0) == 0) {
    hp = divmod(hp, tp).q;
    ++o.tail;
  }
  ModPoly one(p, {1});
  ModPoly cur = divmod(tp, hp).r;
  unsigned long d = 1;
  while (!(cur == divmod(one, hp).r)) {
    cur = divmod(cur * tp, hp).r;
    if (++d > kIterationCap) throw ResourceError("period search exceeded the iteration cap");
  }
  o.period = d;
  o.periodic = true;
  return o;
}

Orbit fg_orbit(const FlowFG& flow, const IntVector& x) {
  Orbit o;
  if (!quasi_periodic_points(flow).contains(x)) {
    o.reason = "image in the free quotient is not killed by t^a (t^D - 1)";
    return o;
  }
  std::map<IntVector, unsigned long> seen;
  IntVector cur = x;
  for (unsigned long i = 0; i <= kIterationCap; ++i) {
    IntVector key = flow.group().canonical(cur);
    auto [it, inserted] = seen.emplace(std::move(key), i);
    if (!inserted) {
      o.periodic = true;
      o.tail = it->second;
      o.period = i - it->second;
      return o;
    }
    cur = flow.apply(cur);
  }
  o.periodic = true;
  o.reason = "algebraic certificate (orbit longer than the iteration cap)";
  o.period = 0;
  return o;
}

}  // namespace

const char* to_string(RadicalKind k) {
  switch (k) {
    case RadicalKind::O: return "O";
    case RadicalKind::I: return "I";
    case RadicalKind::Q: return "Q";
    case RadicalKind::A: return "A";
    case RadicalKind::W: return "W";
  }
  return "?";
}

RadicalKind parse_radical_kind(const std::string& s) {
  if (s == "O") return RadicalKind::O;
  if (s == "I") return RadicalKind::I;
  if (s == "Q") return RadicalKind::Q;
  if (s == "A") return RadicalKind::A;
  if (s == "W") return RadicalKind::W;
  throw ParseError("", "unknown radical kind \"" + s + "\" (expected O, I, Q, A or W)");
}

FactorClass factor_class(RadicalKind k) {
  switch (k) {
    case RadicalKind::O: return FactorClass::T;
    case RadicalKind::I: return FactorClass::T_MINUS_1;
    case RadicalKind::Q: return FactorClass::CYC_T;
    case RadicalKind::A: return FactorClass::MONIC;
    case RadicalKind::W: return FactorClass::ALL;
  }
  return FactorClass::ALL;
}

Subgroup quasi_periodic_points(const FlowFG& flow) {
  QuasiData q = quasi_data(flow.free_charpoly());
  IntMatrix m = flow.group().torsion_exponent() * eval_poly(quasi_poly(q), flow.phi());
  return kernel(flow.group(), m);
}

Subgroup radical(const FlowFG& flow, RadicalKind kind) {
  switch (kind) {
    case RadicalKind::O: return kernel_chain(flow, flow.phi());
    case RadicalKind::I: return kernel_chain(flow, shifted(flow));
    case RadicalKind::Q: {
      IntPoly chi_s = special_part(flow.free_charpoly(), FactorClass::CYC_T).in_s;
      IntMatrix m = flow.group().torsion_exponent() * eval_poly(chi_s, flow.phi());
      return kernel(flow.group(), m);
    }
    case RadicalKind::A:
    case RadicalKind::W: return Subgroup::whole(flow.group());
  }
  throw DomainError("unknown radical kind");
}

IntPoly radical_generator(const CyclicFlow& c, RadicalKind kind) {
  require_supported(c);
  const IntPoly& f = c.poly();
  if (c.is_trivial()) return f;
  if (c.base() == 0) {
    if (f.is_zero()) return IntPoly();
    return special_part(f, factor_class(kind)).out_s;
  }
  if (f.is_zero()) return kind == RadicalKind::W ? IntPoly{1} : IntPoly();
  switch (kind) {
    case RadicalKind::O: return strip(c, f, IntPoly::monomial(1, static_cast<std::size_t>(f.degree())));
    case RadicalKind::I: return strip(c, f, x_minus_1_pow(static_cast<unsigned>(f.degree())));
    default: return IntPoly{1};
  }
}

SubmoduleDesc radical(const Flow& flow, RadicalKind kind) {
  std::vector<PartSubmodule> parts;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part))
      parts.push_back({std::nullopt, radical(*fg, kind)});
    else
      parts.push_back({radical_generator(std::get<CyclicFlow>(part), kind), std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

std::vector<Subgroup> tower(const FlowFG& flow, RadicalKind kind, unsigned n_max) {
  if (kind != RadicalKind::O && kind != RadicalKind::I && kind != RadicalKind::Q)
    throw DomainError("towers exist for O, I and Q only");
  const FgAbGroup& g = flow.group();
  std::vector<Subgroup> out{Subgroup::zero(g)};
  const IntMatrix psi = kind == RadicalKind::I ? shifted(flow) : flow.phi();
  for (unsigned n = 1; n <= n_max; ++n) {
    const Subgroup& prev = out.back();
    FlowFG quot(quotient(prev), flow.phi());
    Subgroup next;
    if (kind == RadicalKind::Q) {
      next = lift(g, quasi_periodic_points(quot));
    } else {
      // X_{n+1}/X_n is the first kernel of the induced map on M/X_n ...
      next = lift(g, kernel(quot.group(), psi));
      // ... and must agree with ker psi^n computed directly.
      if (!(next == kernel(g, pow(psi, n)))) throw VerificationError("tower recursion mismatch");
    }
    if (!next.contains(prev) || !is_invariant(flow, next)) throw VerificationError("tower is not an invariant chain");
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<SubmoduleDesc> tower(const Flow& flow, RadicalKind kind, unsigned n_max) {
  if (kind != RadicalKind::O && kind != RadicalKind::I && kind != RadicalKind::Q)
    throw DomainError("towers exist for O, I and Q only");
  std::vector<std::vector<PartSubmodule>> levels(n_max + 1);
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part)) {
      auto t = tower(*fg, kind, n_max);
      for (unsigned n = 0; n <= n_max; ++n) levels[n].push_back({std::nullopt, t[n]});
      continue;
    }
    const auto& c = std::get<CyclicFlow>(part);
    require_supported(c);
    const IntPoly& f = c.poly();
    IntPoly gen = f;
    QuasiData q;
    if (kind == RadicalKind::Q && c.base() == 0 && !f.is_zero()) q = quasi_data(f);
    for (unsigned n = 0; n <= n_max; ++n) {
      if (n > 0 && !gen.is_zero()) {
        switch (kind) {
          case RadicalKind::O: gen = strip(c, f, IntPoly::monomial(1, n)); break;
          case RadicalKind::I: gen = strip(c, f, x_minus_1_pow(n)); break;
          default:
            if (c.base() == 0)
              gen = strip(c, gen, quasi_poly(q));
            else
              gen = IntPoly{1};  // finite: every point is quasi-periodic
        }
      }
      levels[n].push_back({gen, std::nullopt});
    }
  }
  std::vector<SubmoduleDesc> out;
  for (auto& lvl : levels) out.push_back(make_submodule(flow, std::move(lvl)));
  return out;
}

QuasiPeriodicity is_quasi_periodic_point(const Flow& flow, const Element& x) {
  if (x.size() != flow.size()) throw DomainError("element part count mismatch");
  QuasiPeriodicity r;
  unsigned long tail = 0;
  Int period = 1;
  bool algebraic_only = false;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    Orbit o;
    if (const auto* fg = std::get_if<FlowFG>(&flow.part(i))) {
      if (x[i].size() != fg->ambient_rank()) throw DomainError("element length mismatch in part " + std::to_string(i));
      o = fg_orbit(*fg, x[i]);
    } else {
      o = cyclic_orbit(std::get<CyclicFlow>(flow.part(i)), IntPoly(x[i]));
    }
    if (!o.periodic) {
      r.certificate = "part " + std::to_string(i) + ": " + o.reason;
      return r;
    }
    if (o.period == 0) algebraic_only = true;
    tail = std::max(tail, o.tail);
    if (o.period != 0) period = lcm_int(period, o.period);
  }
  r.periodic = true;
  if (algebraic_only || !period.fits_ulong_p()) {
    r.certificate = "algebraic certificate";
    return r;
  }
  r.m = tail;
  r.n = tail + period.get_ui();
  r.certificate = "orbit repeats";
  return r;
}

SubmoduleDesc istar_closure(const Flow& flow, const SubmoduleDesc& n) {
  if (n.parts.size() != flow.size()) throw DomainError("submodule part count mismatch");
  std::vector<PartSubmodule> parts;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (const auto* fg = std::get_if<FlowFG>(&flow.part(i))) {
      const Subgroup& s = *n.parts[i].subgroup;
      parts.push_back({std::nullopt, lift(fg->group(), torsion_subgroup(quotient(s)))});
      continue;
    }
    const auto& c = std::get<CyclicFlow>(flow.part(i));
    require_supported(c);
    IntPoly g = normalize_generator(c, *n.parts[i].generator);
    if (c.base() > 0)
      g = IntPoly{1};
    else if (!g.is_zero())
      g = content_primitive(g).second;
    parts.push_back({g, std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

SubmoduleDesc t_phi(const Flow& flow, Invariant inv) {
  if (inv == Invariant::Rank) return radical(flow, RadicalKind::W);
  std::vector<PartSubmodule> parts;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part)) {
      parts.push_back({std::nullopt, torsion_subgroup(fg->group())});
      continue;
    }
    const auto& c = std::get<CyclicFlow>(part);
    require_supported(c);
    // Torsion of Z[t]/(c0 g) is a Bernoulli shift with no quasi-periodic
    // points; a finite part is its own Q_1.
    parts.push_back({c.is_finite() ? IntPoly{1} : c.poly(), std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

}  // namespace entroscope
