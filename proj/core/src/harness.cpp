#include "entroscope/harness.hpp"

#include <optional>
#include <sstream>

#include "entroscope/errors.hpp"
#include "entroscope/radicals.hpp"

namespace entroscope {

namespace {

struct Failure {
  std::string detail;
  Json instance;
};
using Outcome = std::optional<Failure>;

std::string mismatch(const EntropyValue& a, const EntropyValue& b) { return a.render() + " vs " + b.render(); }

Json flows_json(std::initializer_list<std::pair<const char*, const Flow*>> flows) {
  Json j = Json::object();
  for (const auto& [name, f] : flows) j[name] = serialize_flow(*f);
  return j;
}

Int random_divisor(Rng& rng, const Int& n) {
  std::vector<Int> divs;
  if (n.fits_ulong_p() && n.get_ui() <= 1000000) {
    for (unsigned long d = 1; d <= n.get_ui(); ++d)
      if (n.get_ui() % d == 0) divs.push_back(Int(d));
  } else {
    divs = {Int(1), n};
  }
  return divs[static_cast<std::size_t>(rng.range(0, static_cast<long>(divs.size()) - 1))];
}

IntPoly random_monic_mod(Rng& rng, const Int& p, int deg) {
  IntVector c(static_cast<std::size_t>(deg) + 1);
  for (int i = 0; i < deg; ++i) c[static_cast<std::size_t>(i)] = rng.range(0, p.get_si() - 1);
  c.back() = 1;
  return IntPoly(c);
}

const long kPrimes[] = {2, 3, 5};
const long kBernoulliBases[] = {2, 3, 5, 7};

FlowPart random_part(Rng& rng, bool torsion_only) {
  const long choice = rng.range(0, 9);
  if (choice < 4) return random_fg(rng, torsion_only);
  if (choice < 6) {
    if (torsion_only) return CyclicFlow(Int(kBernoulliBases[rng.range(0, 3)]), IntPoly());
    if (rng.chance(1, 8)) return CyclicFlow(Int(0), IntPoly());
    IntPoly f = random_poly(rng, 1, 3, 4);
    if (rng.chance(1, 4)) f *= Int(rng.range(2, 3));
    return CyclicFlow(Int(0), f);
  }
  if (torsion_only && choice < 7) return CyclicFlow(Int(0), IntPoly::constant(rng.range(2, 6)));
  const Int p(kPrimes[rng.range(0, 2)]);
  if (rng.chance(1, 3)) return CyclicFlow(p, IntPoly());
  return CyclicFlow(p, random_monic_mod(rng, p, static_cast<int>(rng.range(1, 3))));
}

FlowFG conjugate(Rng& rng, const FlowFG& fg) {
  const std::size_t k = fg.ambient_rank();
  IntMatrix inv;
  IntMatrix u = random_unimodular(rng, k, &inv);
  return FlowFG(FgAbGroup(k, u * fg.group().relations()), u * fg.phi() * inv);
}

// Checks, one trial each.

Outcome check_a0(Rng& rng, EntropyKind kind, unsigned& ho_nonzero, unsigned& hi_nonzero) {
  FlowFG g = random_fg(rng, false);
  const std::size_t k = g.ambient_rank();
  const Int p(kPrimes[rng.range(0, 2)]);
  Flow zero_map = Flow(FlowFG(g.group(), IntMatrix(k, k))) + Flow(CyclicFlow(p, IntPoly::t()));
  Flow identity = Flow(FlowFG(g.group(), IntMatrix::identity(k))) + Flow(CyclicFlow(p, IntPoly{-1, 1}));
  EntropyValue ho = entropy(zero_map, kind);
  EntropyValue hi = entropy(identity, kind);
  if (!ho.is_zero()) ++ho_nonzero;
  if (!hi.is_zero()) ++hi_nonzero;
  if (ho.is_zero() && hi.is_zero()) return std::nullopt;
  return Failure{"h(0_M) = " + ho.render() + ", h(1_M) = " + hi.render(),
                 flows_json({{"zero", &zero_map}, {"identity", &identity}})};
}

Outcome check_a1(Rng& rng, EntropyKind kind) {
  Flow m = random_flow(rng, kind == EntropyKind::Ent);
  Flow c = random_conjugate(rng, m);
  EntropyValue a = entropy(m, kind), b = entropy(c, kind);
  if (approx_equal(a, b)) return std::nullopt;
  return Failure{mismatch(a, b), flows_json({{"flow", &m}, {"conjugate", &c}})};
}

Outcome check_addition(const Flow& m, const SubmoduleDesc& n, EntropyKind kind, Method method) {
  auto [sub, quot] = sub_quot(m, n);
  EntropyValue hm = entropy(m, kind, method);
  EntropyValue sum = entropy(sub, kind, method) + entropy(quot, kind, method);
  if (approx_equal(hm, sum)) return std::nullopt;
  return Failure{"h(M) = " + hm.render() + ", h(N) + h(M/N) = " + sum.render(),
                 flows_json({{"flow", &m}, {"sub", &sub}, {"quot", &quot}})};
}

Outcome check_a2(Rng& rng, EntropyKind kind) {
  // ent is additive on torsion flows only.
  Flow m = random_flow(rng, kind == EntropyKind::Ent);
  return check_addition(m, random_invariant_submodule(rng, m), kind, Method::Auto);
}

Outcome check_at(Rng& rng, EntropyKind kind) {
  // Cyclic pair: (g)/(fg) = Z[t]/(f) with quotient Z[t]/(g).
  IntPoly f = random_poly(rng, 1, 6, 9);
  IntPoly g = random_poly(rng, 1, 6, 9);
  CyclicFlow c(Int(0), f * g);
  Flow m(c);
  if (auto out = check_addition(m, make_submodule(m, {{normalize_generator(c, g), std::nullopt}}), kind, Method::Auto))
    return out;
  // Finite FlowFG with a random invariant subgroup, by the trajectory engine
  // where it applies.
  Flow fin(random_fg(rng, true));
  Method method = kind == EntropyKind::Rank ? Method::ClosedForm : Method::Trajectory;
  return check_addition(fin, random_invariant_submodule(rng, fin), kind, method);
}

Outcome check_a3(Rng& rng, EntropyKind kind) {
  FlowFG a = random_fg(rng, false, 2);
  FlowFG b = random_fg(rng, false, 2);
  Flow block(direct_sum(a, b));
  EntropyValue whole = entropy(block, kind);
  EntropyValue parts = entropy(Flow(a), kind) + entropy(Flow(b), kind);
  if (!approx_equal(whole, parts)) {
    Flow fa(a), fb(b);
    return Failure{"coproduct: " + mismatch(whole, parts), flows_json({{"a", &fa}, {"b", &fb}})};
  }
  // Chain of invariant subgroups generated by growing prefixes of the basis:
  // values increase and end at h(M).
  const FlowFG& fg = std::get<FlowFG>(block.part(0));
  std::vector<IntVector> gens;
  EntropyValue prev = EntropyValue::zero();
  for (std::size_t i = 0; i < fg.ambient_rank(); ++i) {
    IntVector e(fg.ambient_rank());
    e[i] = 1;
    gens.push_back(e);
    Flow n(sub_quot(fg, invariant_closure(fg, gens)).first);
    EntropyValue h = entropy(n, kind);
    if (!approx_leq(prev, h)) return Failure{"chain value decreased: " + mismatch(prev, h), flows_json({{"flow", &block}})};
    prev = h;
  }
  if (!approx_equal(prev, whole)) return Failure{"chain limit: " + mismatch(prev, whole), flows_json({{"flow", &block}})};
  return std::nullopt;
}

Outcome check_a4(Rng& rng, EntropyKind kind) {
  Flow m = random_flow(rng, false);
  const auto k = static_cast<unsigned>(rng.range(2, 4));
  Flow pk = power_flow(m, k);
  EntropyValue a = entropy(pk, kind), b = entropy(m, kind).scaled(k);
  if (approx_equal(a, b)) return std::nullopt;
  return Failure{"k = " + std::to_string(k) + ": " + mismatch(a, b), flows_json({{"flow", &m}, {"power", &pk}})};
}

Outcome check_a5(unsigned trial, EntropyKind kind) {
  const Int m(2 + trial % 9);
  Flow beta = Flow::cyclic(m, IntPoly());
  EntropyValue expected = kind == EntropyKind::Rank ? EntropyValue::zero() : EntropyValue::log_of(m);
  Method method = kind == EntropyKind::Rank ? Method::Auto : Method::Trajectory;
  EntropyValue got = entropy(beta, kind, method);
  if (approx_equal(got, expected)) return std::nullopt;
  return Failure{"m = " + m.get_str() + ": " + mismatch(got, expected), flows_json({{"flow", &beta}})};
}

Outcome check_sandwich(Rng& rng, EntropyKind kind) {
  // ent vanishes on Z[t], so its sandwich is stated for torsion flows.
  Flow m = random_flow(rng, kind == EntropyKind::Ent);
  SubmoduleDesc q = radical(m, RadicalKind::Q);
  SubmoduleDesc w = radical(m, RadicalKind::W);
  SubmoduleDesc p = pinsker(m, kind);
  if (!contains(m, p, q)) return Failure{"Q is not inside P_h", flows_json({{"flow", &m}})};
  if (!contains(m, w, p)) return Failure{"P_h is not inside W", flows_json({{"flow", &m}})};
  return std::nullopt;
}

}  // namespace

const char* to_string(Axiom a) {
  switch (a) {
    case Axiom::A0: return "A0";
    case Axiom::A1: return "A1";
    case Axiom::A2Star: return "A2*";
    case Axiom::A3: return "A3";
    case Axiom::A4Star: return "A4*";
    case Axiom::A5: return "A5";
    case Axiom::AT: return "AT";
    case Axiom::Sandwich: return "SANDWICH";
  }
  return "?";
}

const std::vector<Axiom>& all_axioms() {
  static const std::vector<Axiom> all{Axiom::A0,     Axiom::A1, Axiom::A2Star, Axiom::A3,
                                      Axiom::A4Star, Axiom::A5, Axiom::AT,     Axiom::Sandwich};
  return all;
}

Axiom parse_axiom(const std::string& s) {
  for (Axiom a : all_axioms())
    if (s == to_string(a)) return a;
  if (s == "A2") return Axiom::A2Star;
  if (s == "A4") return Axiom::A4Star;
  throw ParseError("axioms", "unknown axiom \"" + s + "\"");
}

std::vector<Axiom> parse_axiom_list(const std::string& s) {
  std::vector<Axiom> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(parse_axiom(item));
  if (out.empty()) throw ParseError("axioms", "empty axiom list");
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (1 + stream) + 0xbf58476d1ce4e5b9ULL * trial;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

IntPoly random_poly(Rng& rng, int min_deg, int max_deg, long max_coeff) {
  const auto deg = static_cast<std::size_t>(rng.range(min_deg, max_deg));
  IntVector c(deg + 1);
  for (auto& x : c) x = rng.range(-max_coeff, max_coeff);
  while (c.back() == 0) c.back() = rng.range(-max_coeff, max_coeff);
  return IntPoly(c);
}

IntMatrix random_unimodular(Rng& rng, std::size_t n, IntMatrix* inverse) {
  IntMatrix u = IntMatrix::identity(n), inv = IntMatrix::identity(n);
  if (n >= 2) {
    for (std::size_t step = 0; step < 3 * n; ++step) {
      const auto i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
      auto j = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 2));
      if (j >= i) ++j;
      const Int c = rng.range(-2, 2);
      // row_i += c row_j on u; col_j -= c col_i on the inverse
      for (std::size_t k = 0; k < n; ++k) {
        u(i, k) += c * u(j, k);
        inv(k, j) -= c * inv(k, i);
      }
    }
  }
  if (n >= 1 && rng.chance(1, 2)) {
    const auto i = static_cast<std::size_t>(rng.range(0, static_cast<long>(n) - 1));
    for (std::size_t k = 0; k < n; ++k) {
      u(i, k) = -u(i, k);
      inv(k, i) = -inv(k, i);
    }
  }
  if (inverse) *inverse = inv;
  return u;
}

FlowFG random_fg(Rng& rng, bool finite_only, std::size_t max_rank) {
  const auto k = static_cast<std::size_t>(rng.range(1, static_cast<long>(max_rank)));
  static const long kMods[] = {0, 2, 3, 4, 5, 6};
  IntVector d(k);
  for (auto& x : d) x = kMods[rng.range(finite_only ? 1 : 0, 5)];
  std::vector<IntVector> rel;
  for (std::size_t i = 0; i < k; ++i)
    if (d[i] != 0) {
      IntVector col(k);
      col[i] = d[i];
      rel.push_back(col);
    }
  IntMatrix phi(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      Int r = rng.range(-2, 2);
      if (d[j] == 0)
        phi(i, j) = r;
      else if (d[i] == 0)
        phi(i, j) = 0;  // torsion cannot map onto a free coordinate
      else
        phi(i, j) = r * (d[i] / gcd_int(d[i], d[j]));
    }
  FlowFG plain(FgAbGroup(k, IntMatrix::from_columns(rel, k)), phi);
  return conjugate(rng, plain);
}

Flow random_flow(Rng& rng, bool torsion_only) {
  std::vector<FlowPart> parts;
  const long n = rng.range(1, 2);
  for (long i = 0; i < n; ++i) parts.push_back(random_part(rng, torsion_only));
  return Flow(std::move(parts));
}

SubmoduleDesc random_invariant_submodule(Rng& rng, const Flow& flow) {
  std::vector<PartSubmodule> parts;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part)) {
      const long choice = rng.range(0, 3);
      if (choice == 0) {
        parts.push_back({std::nullopt, Subgroup::zero(fg->group())});
      } else if (choice == 1) {
        parts.push_back({std::nullopt, Subgroup::whole(fg->group())});
      } else {
        IntVector x(fg->ambient_rank());
        for (auto& v : x) v = rng.range(-2, 2);
        parts.push_back({std::nullopt, invariant_closure(*fg, {x})});
      }
      continue;
    }
    const auto& c = std::get<CyclicFlow>(part);
    const IntPoly& f = c.poly();
    IntPoly g;
    if (c.is_trivial()) {
      g = f;
    } else if (c.base() == 0 && f.is_zero()) {
      g = rng.chance(1, 4) ? IntPoly() : normalize_sign(random_poly(rng, 0, 2, 3));
    } else if (c.base() == 0) {
      Factorization fac = factor(f);
      g = IntPoly::constant(random_divisor(rng, fac.content));
      for (const auto& q : fac.factors) g *= pow(q.poly, static_cast<unsigned>(rng.range(0, q.multiplicity)));
    } else if (f.is_zero()) {
      const long choice = rng.range(0, 2);
      g = choice == 0 ? IntPoly() : choice == 1 ? IntPoly{1} : random_monic_mod(rng, c.base(), static_cast<int>(rng.range(1, 2)));
    } else {
      switch (rng.range(0, 3)) {
        case 0: g = IntPoly{1}; break;
        case 1: g = f; break;
        case 2: g = radical_generator(c, RadicalKind::O); break;
        default: g = radical_generator(c, RadicalKind::I); break;
      }
    }
    parts.push_back({normalize_generator(c, g), std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

Flow random_conjugate(Rng& rng, const Flow& flow) {
  std::vector<FlowPart> parts;
  for (const auto& part : flow.parts()) {
    auto fg = as_fg(part);
    if (fg && (std::holds_alternative<FlowFG>(part) || rng.chance(1, 2)))
      parts.emplace_back(conjugate(rng, *fg));
    else
      parts.push_back(part);
  }
  return Flow(std::move(parts));
}

bool VerifyReport::ok() const {
  for (const auto& a : axioms)
    if (a.failed > 0) return false;
  return true;
}

VerifyReport verify_axioms(EntropyKind kind, const std::vector<Axiom>& axioms, unsigned trials, std::uint64_t seed) {
  if (trials == 0) throw DomainError("trials must be positive");
  VerifyReport report;
  report.kind = kind;
  report.seed = seed;
  report.trials = trials;
  for (Axiom axiom : axioms) {
    AxiomReport ar;
    ar.axiom = axiom;
    unsigned ho_nonzero = 0, hi_nonzero = 0;
    for (unsigned t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(axiom), t));
      Outcome out;
      try {
        switch (axiom) {
          case Axiom::A0: out = check_a0(rng, kind, ho_nonzero, hi_nonzero); break;
          case Axiom::A1: out = check_a1(rng, kind); break;
          case Axiom::A2Star: out = check_a2(rng, kind); break;
          case Axiom::A3: out = check_a3(rng, kind); break;
          case Axiom::A4Star: out = check_a4(rng, kind); break;
          case Axiom::A5: out = check_a5(t, kind); break;
          case Axiom::AT: out = check_at(rng, kind); break;
          case Axiom::Sandwich: out = check_sandwich(rng, kind); break;
        }
      } catch (const Error& e) {
        out = Failure{std::string("error: ") + e.what(), Json::object()};
      }
      if (out) {
        ++ar.failed;
        ar.failures.push_back({t, out->detail, out->instance});
      } else {
        ++ar.passed;
      }
    }
    if (axiom == Axiom::A0)
      ar.note = "h^O nonzero on " + std::to_string(ho_nonzero) + ", h^I nonzero on " + std::to_string(hi_nonzero) +
                " of " + std::to_string(trials) + " groups";
    report.axioms.push_back(std::move(ar));
  }
  return report;
}

Json to_json(const VerifyReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["seed"] = r.seed;
  j["trials"] = r.trials;
  j["axioms"] = Json::array();
  for (const auto& a : r.axioms) {
    Json aj;
    aj["axiom"] = to_string(a.axiom);
    aj["passed"] = a.passed;
    aj["failed"] = a.failed;
    if (!a.note.empty()) aj["note"] = a.note;
    aj["failures"] = Json::array();
    for (const auto& f : a.failures) {
      Json fj;
      fj["trial"] = f.trial;
      fj["detail"] = f.detail;
      fj["instance"] = f.instance;
      aj["failures"].push_back(fj);
    }
    j["axioms"].push_back(aj);
  }
  j["ok"] = r.ok();
  return j;
}

}  // namespace entroscope
