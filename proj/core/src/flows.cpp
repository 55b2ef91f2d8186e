#include "entroscope/flows.hpp"

#include "entroscope/errors.hpp"
#include "modpoly.hpp"

namespace entroscope {

using detail::ModPoly;

namespace {

std::uint64_t word_prime(const Int& p) {
  if (!p.fits_ulong_p()) throw UnsupportedBase("prime base too large: " + p.get_str());
  return p.get_ui();
}

IntPoly reduce_coeffs(const IntPoly& f, const Int& c) { return c > 0 ? f.mod(c) : f; }

IntPoly make_monic_mod(const IntPoly& f, const Int& c) {
  Int inv;
  Int lc = mod_nonneg(f.lead(), c);
  if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), c.get_mpz_t()) == 0)
    throw DomainError("leading coefficient of " + f.to_string() + " is not a unit mod " + c.get_str());
  return (f * inv).mod(c);
}

IntPoly from_vector(const IntVector& v) { return IntPoly(v); }

void require_radical_base(const CyclicFlow& c) {
  if (c.base() > 0 && !c.prime_base())
    throw UnsupportedBase("base " + c.base().get_str() + " is not squarefree");
}

}  // namespace

FlowFG::FlowFG(FgAbGroup group, IntMatrix phi) : group_(std::move(group)), phi_(std::move(phi)) {
  if (!group_.preserves(phi_)) throw DomainError("not an endomorphism");
}

FlowFG FlowFG::companion(const IntPoly& f) {
  if (!f.is_monic()) throw DomainError("companion requires monic");
  if (f.degree() < 1) throw DomainError("companion requires degree >= 1");
  const auto n = static_cast<std::size_t>(f.degree());
  IntMatrix c(n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -f.coeff(i);
  return FlowFG(FgAbGroup(n), c);
}

FlowFG FlowFG::companion_mod(const IntPoly& f, const Int& c) {
  if (c <= 0) throw DomainError("companion_mod requires a positive modulus");
  IntPoly g = make_monic_mod(f, c);
  if (g.degree() < 1) throw DomainError("companion requires degree >= 1");
  FlowFG base = companion(g);
  const auto n = static_cast<std::size_t>(g.degree());
  IntMatrix rel = c * IntMatrix::identity(n);
  return FlowFG(FgAbGroup(n, rel), base.phi());
}

IntPoly FlowFG::free_charpoly() const { return charpoly(group_.free_quotient_matrix(phi_)); }

CyclicFlow::CyclicFlow(const Int& base, const IntPoly& f) {
  if (base < 0) throw DomainError("negative base");
  if (base == 1) {
    base_ = 0;
    poly_ = IntPoly{1};
    return;
  }
  base_ = base;
  if (base == 0) {
    poly_ = normalize_sign(f);
    return;
  }
  IntPoly r = f.mod(base);
  if (is_prime(base)) {
    poly_ = r.is_zero() ? r : ModPoly::from_int(r, word_prime(base)).monic().to_int();
    return;
  }
  if (is_squarefree(base)) throw DomainError("squarefree composite base must be split into prime parts");
  poly_ = r.is_zero() ? r : make_monic_mod(r, base);
}

IntPoly CyclicFlow::reduce(const IntPoly& x) const {
  IntPoly r = reduce_coeffs(x, base_);
  if (poly_.is_zero()) return r;
  if (poly_.is_monic()) return reduce_coeffs(rem_monic(r, poly_), base_);
  if (base_ == 0 && poly_.degree() == 0) return r.mod(poly_.lead());
  return r;
}

std::string CyclicFlow::describe() const {
  if (is_trivial()) return "0";
  std::string ring;
  if (base_ == 0)
    ring = "Z[t]";
  else if (prime_base())
    ring = "F_" + base_.get_str() + "[t]";
  else
    ring = "(Z/" + base_.get_str() + ")[t]";
  return poly_.is_zero() ? ring : ring + "/(" + poly_.to_string() + ")";
}

Flow::Flow(std::vector<FlowPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw DomainError("a flow needs at least one part");
}

Flow Flow::cyclic(const Int& base, const IntPoly& f) {
  if (base > 1 && !is_prime(base) && is_squarefree(base)) {
    std::vector<FlowPart> parts;
    for (const auto& p : prime_factors(base)) parts.emplace_back(CyclicFlow(p, f));
    return Flow(std::move(parts));
  }
  return Flow(CyclicFlow(base, f));
}

Flow Flow::operator+(const Flow& other) const {
  std::vector<FlowPart> parts = parts_;
  parts.insert(parts.end(), other.parts_.begin(), other.parts_.end());
  return Flow(std::move(parts));
}

IntPoly normalize_generator(const CyclicFlow& c, const IntPoly& g) {
  require_radical_base(c);
  const IntPoly& f = c.poly();
  if (c.base() == 0) {
    if (g.is_zero()) return f;
    if (!divides(g, f)) throw DomainError("generator " + g.to_string() + " does not divide " + f.to_string());
    return normalize_sign(g);
  }
  const std::uint64_t p = word_prime(c.base());
  ModPoly gp = ModPoly::from_int(g, p);
  if (gp.is_zero()) return f;
  if (!f.is_zero() && !divmod(ModPoly::from_int(f, p), gp).r.is_zero())
    throw DomainError("generator " + g.to_string() + " does not divide " + f.to_string() + " mod " + c.base().get_str());
  return gp.monic().to_int();
}

bool cyclic_member(const CyclicFlow& c, const IntPoly& g, const IntPoly& x) {
  require_radical_base(c);
  const IntPoly& f = c.poly();
  if (c.base() == 0) {
    if (g.is_zero()) return f.is_zero() ? x.is_zero() : divides(f, x);
    return divides(g, x);
  }
  const std::uint64_t p = word_prime(c.base());
  ModPoly xp = ModPoly::from_int(x, p);
  ModPoly gp = ModPoly::from_int(g, p);
  if (gp.is_zero()) gp = ModPoly::from_int(f, p);
  if (gp.is_zero()) return xp.is_zero();
  return divmod(xp, gp).r.is_zero();
}

namespace {

PartSubmodule part_zero(const FlowPart& part) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return {std::nullopt, Subgroup::zero(fg->group())};
  const auto& c = std::get<CyclicFlow>(part);
  return {c.poly(), std::nullopt};
}

PartSubmodule part_whole(const FlowPart& part) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return {std::nullopt, Subgroup::whole(fg->group())};
  const auto& c = std::get<CyclicFlow>(part);
  return {c.is_trivial() ? c.poly() : IntPoly{1}, std::nullopt};
}

void check_shape(const Flow& flow, const SubmoduleDesc& n) {
  if (n.parts.size() != flow.size()) throw DomainError("submodule part count mismatch");
  for (std::size_t i = 0; i < flow.size(); ++i) {
    bool fg = std::holds_alternative<FlowFG>(flow.part(i));
    if (fg != n.parts[i].subgroup.has_value() || fg == n.parts[i].generator.has_value())
      throw DomainError("submodule part " + std::to_string(i) + " has the wrong kind");
  }
}

IntPoly mod_lcm(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
  ModPoly ap = ModPoly::from_int(a, p), bp = ModPoly::from_int(b, p);
  if (ap.is_zero() || bp.is_zero()) return IntPoly();
  return divmod(ap * bp, gcd(ap, bp)).q.monic().to_int();
}

IntPoly mod_gcd(const IntPoly& a, const IntPoly& b, std::uint64_t p) {
  return gcd(ModPoly::from_int(a, p), ModPoly::from_int(b, p)).to_int();
}

}  // namespace

SubmoduleDesc make_submodule(const Flow& flow, std::vector<PartSubmodule> parts) {
  SubmoduleDesc d{std::move(parts), {}};
  check_shape(flow, d);
  for (std::size_t i = 0; i < flow.size(); ++i)
    if (const auto* c = std::get_if<CyclicFlow>(&flow.part(i)))
      d.parts[i].generator = normalize_generator(*c, *d.parts[i].generator);
  d.iso = describe(sub_quot(flow, d).first);
  return d;
}

SubmoduleDesc zero_submodule(const Flow& flow) {
  std::vector<PartSubmodule> parts;
  for (const auto& p : flow.parts()) parts.push_back(part_zero(p));
  return make_submodule(flow, std::move(parts));
}

SubmoduleDesc whole_submodule(const Flow& flow) {
  std::vector<PartSubmodule> parts;
  for (const auto& p : flow.parts()) parts.push_back(part_whole(p));
  return make_submodule(flow, std::move(parts));
}

bool is_zero(const Flow& flow, const SubmoduleDesc& n) {
  check_shape(flow, n);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (n.parts[i].subgroup) {
      if (!n.parts[i].subgroup->is_zero()) return false;
    } else if (!(normalize_generator(std::get<CyclicFlow>(flow.part(i)), *n.parts[i].generator) ==
                 *part_zero(flow.part(i)).generator)) {
      return false;
    }
  }
  return true;
}

bool is_whole(const Flow& flow, const SubmoduleDesc& n) {
  check_shape(flow, n);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (n.parts[i].subgroup) {
      if (!n.parts[i].subgroup->is_whole()) return false;
    } else {
      const auto& c = std::get<CyclicFlow>(flow.part(i));
      if (!c.is_trivial() && !(normalize_generator(c, *n.parts[i].generator) == IntPoly{1})) return false;
    }
  }
  return true;
}

bool contains(const Flow& flow, const SubmoduleDesc& n2, const SubmoduleDesc& n1) {
  check_shape(flow, n1);
  check_shape(flow, n2);
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (n1.parts[i].subgroup) {
      if (!n2.parts[i].subgroup->contains(*n1.parts[i].subgroup)) return false;
    } else {
      const auto& c = std::get<CyclicFlow>(flow.part(i));
      if (!cyclic_member(c, *n2.parts[i].generator, *n1.parts[i].generator)) return false;
    }
  }
  return true;
}

SubmoduleDesc meet(const Flow& flow, const SubmoduleDesc& a, const SubmoduleDesc& b) {
  check_shape(flow, a);
  check_shape(flow, b);
  std::vector<PartSubmodule> parts;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (a.parts[i].subgroup) {
      parts.push_back({std::nullopt, a.parts[i].subgroup->meet(*b.parts[i].subgroup)});
      continue;
    }
    const auto& c = std::get<CyclicFlow>(flow.part(i));
    IntPoly ga = normalize_generator(c, *a.parts[i].generator);
    IntPoly gb = normalize_generator(c, *b.parts[i].generator);
    IntPoly l = c.base() == 0 ? lcm(ga, gb) : mod_lcm(ga, gb, word_prime(c.base()));
    parts.push_back({l, std::nullopt});
  }
  return make_submodule(flow, std::move(parts));
}

std::string describe(const Flow& flow) {
  std::string s;
  for (const auto& part : flow.parts()) {
    if (!s.empty()) s += " | ";
    if (const auto* fg = std::get_if<FlowFG>(&part))
      s += fg->group().iso_string();
    else
      s += std::get<CyclicFlow>(part).describe();
  }
  return s;
}

MinPoly min_poly_point(const FlowFG& flow, const IntVector& x) {
  const FgAbGroup& g = flow.group();
  const IntMatrix a = g.free_quotient_matrix(flow.phi());
  const IntVector y = g.free_coordinates(x);
  const std::size_t r = y.size();
  // Krylov vectors v_j = A^j y over Q; find the first linear dependence.
  std::vector<std::vector<Rational>> krylov;
  IntVector cur = y;
  for (std::size_t j = 0; j <= r; ++j) {
    std::vector<Rational> v(cur.begin(), cur.end());
    // Solve sum_i c_i krylov[i] = v by Gaussian elimination on [K | v].
    const std::size_t m = krylov.size();
    std::vector<std::vector<Rational>> aug(r, std::vector<Rational>(m + 1));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t c = 0; c < m; ++c) aug[i][c] = krylov[c][i];
      aug[i][m] = v[i];
    }
    std::vector<std::size_t> pivot_row(m, r);
    std::size_t row = 0;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t sel = row;
      while (sel < r && aug[sel][c] == 0) ++sel;
      if (sel == r) continue;
      std::swap(aug[sel], aug[row]);
      for (std::size_t i = 0; i < r; ++i) {
        if (i == row || aug[i][c] == 0) continue;
        Rational f = aug[i][c] / aug[row][c];
        for (std::size_t k = c; k <= m; ++k) aug[i][k] -= f * aug[row][k];
      }
      pivot_row[c] = row++;
    }
    bool consistent = true;
    for (std::size_t i = row; i < r; ++i)
      if (aug[i][m] != 0) consistent = false;
    if (consistent) {
      // The Krylov vectors found so far are independent, so every column has a pivot.
      MinPoly mp;
      mp.coeffs.resize(m + 1);
      for (std::size_t c = 0; c < m; ++c) {
        Rational coef = aug[pivot_row[c]][m] / aug[pivot_row[c]][c];
        coef.canonicalize();
        mp.coeffs[c] = -coef;
      }
      mp.coeffs[m] = 1;
      mp.integral = true;
      for (const auto& c : mp.coeffs)
        if (c.get_den() != 1) mp.integral = false;
      return mp;
    }
    krylov.push_back(std::move(v));
    cur = a * cur;
  }
  throw VerificationError("Krylov sequence did not become dependent");
}

FlowFG direct_sum(const FlowFG& a, const FlowFG& b) {
  const std::size_t m = a.ambient_rank(), n = b.ambient_rank();
  const IntMatrix& ra = a.group().relations();
  const IntMatrix& rb = b.group().relations();
  IntMatrix rel(m + n, ra.cols() + rb.cols());
  IntMatrix phi(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < ra.cols(); ++j) rel(i, j) = ra(i, j);
    for (std::size_t j = 0; j < m; ++j) phi(i, j) = a.phi()(i, j);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < rb.cols(); ++j) rel(m + i, ra.cols() + j) = rb(i, j);
    for (std::size_t j = 0; j < n; ++j) phi(m + i, m + j) = b.phi()(i, j);
  }
  return FlowFG(FgAbGroup(m + n, rel), phi);
}

FlowFG power_flow(const FlowFG& flow, unsigned k) {
  if (k == 0) throw DomainError("power must be positive");
  return FlowFG(flow.group(), pow(flow.phi(), k));
}

Flow power_flow(const Flow& flow, unsigned k) {
  if (k == 0) throw DomainError("power must be positive");
  if (k == 1) return flow;
  std::vector<FlowPart> parts;
  for (const auto& part : flow.parts()) {
    if (const auto* fg = std::get_if<FlowFG>(&part)) {
      parts.emplace_back(power_flow(*fg, k));
      continue;
    }
    const auto& c = std::get<CyclicFlow>(part);
    if (c.is_trivial()) {
      parts.emplace_back(c);
    } else if (c.is_bernoulli()) {
      // Z/c[t] over Z[t^k] is free of rank k.
      for (unsigned i = 0; i < k; ++i) parts.emplace_back(c);
    } else if (c.base() == 0) {
      parts.emplace_back(CyclicFlow(Int(0), power_poly(c.poly(), k)));
    } else {
      parts.emplace_back(power_flow(FlowFG::companion_mod(c.poly(), c.base()), k));
    }
  }
  return Flow(std::move(parts));
}

bool is_invariant(const FlowFG& flow, const Subgroup& n) { return n.contains(image(flow.phi(), n)); }

Subgroup invariant_closure(const FlowFG& flow, const std::vector<IntVector>& gens) {
  Subgroup h = Subgroup::generated(flow.group(), gens);
  while (true) {
    Subgroup next = h.join(image(flow.phi(), h));
    if (next == h) return h;
    h = std::move(next);
  }
}

std::pair<FlowFG, FlowFG> sub_quot(const FlowFG& flow, const Subgroup& n) {
  if (!(n.parent() == flow.group())) throw DomainError("subgroup of a different group");
  if (!is_invariant(flow, n)) throw DomainError("subgroup is not invariant");
  const IntMatrix& b = n.basis();
  const std::size_t r = b.cols();
  IntMatrix restricted(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    IntVector c = n.coordinates(flow.phi() * b.col(j));
    for (std::size_t i = 0; i < r; ++i) restricted(i, j) = c[i];
  }
  FlowFG sub(n.as_group(), restricted);
  FlowFG quot(quotient(n), flow.phi());
  return {sub, quot};
}

std::pair<Flow, Flow> sub_quot(const Flow& flow, const SubmoduleDesc& n) {
  check_shape(flow, n);
  std::vector<FlowPart> subs, quots;
  for (std::size_t i = 0; i < flow.size(); ++i) {
    if (const auto* fg = std::get_if<FlowFG>(&flow.part(i))) {
      auto [s, q] = sub_quot(*fg, *n.parts[i].subgroup);
      subs.emplace_back(std::move(s));
      quots.emplace_back(std::move(q));
      continue;
    }
    const auto& c = std::get<CyclicFlow>(flow.part(i));
    IntPoly g = normalize_generator(c, *n.parts[i].generator);
    const IntPoly& f = c.poly();
    if (g.is_zero()) {
      // zero submodule of a Bernoulli part
      subs.emplace_back(CyclicFlow());
      quots.emplace_back(c);
      continue;
    }
    IntPoly cof;
    if (f.is_zero()) {
      cof = IntPoly();
    } else if (c.base() == 0) {
      cof = *exact_divide(f, g);
    } else {
      const std::uint64_t p = word_prime(c.base());
      cof = divmod(ModPoly::from_int(f, p), ModPoly::from_int(g, p)).q.to_int();
    }
    subs.emplace_back(CyclicFlow(c.base(), cof));
    quots.emplace_back(CyclicFlow(c.base(), g));
  }
  return {Flow(std::move(subs)), Flow(std::move(quots))};
}

Flow cyclic_subflow(const Flow& flow, std::size_t part, const IntVector& x) {
  const FlowPart& fp = flow.part(part);
  if (const auto* fg = std::get_if<FlowFG>(&fp)) return Flow(sub_quot(*fg, invariant_closure(*fg, {x})).first);
  const auto& c = std::get<CyclicFlow>(fp);
  require_radical_base(c);
  IntPoly xp = from_vector(x);
  if (cyclic_member(c, IntPoly(), xp)) return Flow(CyclicFlow());
  const IntPoly& f = c.poly();
  if (c.base() == 0) return Flow(CyclicFlow(Int(0), *exact_divide(f, gcd(f, xp))));
  const std::uint64_t p = word_prime(c.base());
  IntPoly g = mod_gcd(f, xp, p);
  ModPoly ann = divmod(ModPoly::from_int(f, p), ModPoly::from_int(g, p)).q;
  return Flow(CyclicFlow(c.base(), ann.to_int()));
}

std::optional<FlowFG> as_fg(const FlowPart& part) {
  if (const auto* fg = std::get_if<FlowFG>(&part)) return *fg;
  const auto& c = std::get<CyclicFlow>(part);
  if (c.is_trivial()) return FlowFG(FgAbGroup(0), IntMatrix(0, 0));
  if (c.is_bernoulli()) return std::nullopt;
  if (c.base() == 0) {
    if (c.poly().is_monic() && c.poly().degree() >= 1) return FlowFG::companion(c.poly());
    return std::nullopt;
  }
  return FlowFG::companion_mod(c.poly(), c.base());
}

}  // namespace entroscope
