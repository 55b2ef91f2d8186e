// Factorization over Z: squarefree reduction, Berlekamp modulo a good
// prime, linear Hensel lifting to the Mignotte bound and exhaustive subset
// recombination.

#include <algorithm>
#include <cmath>

#include "entroscope/errors.hpp"
#include "entroscope/intpoly.hpp"
#include "modpoly.hpp"

namespace entroscope {

using detail::ModPoly;

namespace {

// Symmetric residue of every coefficient modulo m.
IntPoly symmetric_mod(const IntPoly& f, const Int& m) {
  IntVector v = f.coeffs();
  Int half = m / 2;
  for (auto& c : v) {
    c = mod_nonneg(c, m);
    if (c > half) c -= m;
  }
  return IntPoly(std::move(v));
}

// f is primitive, squarefree mod p, deg >= 1. Returns (g, h) with g monic,
// lc(h) = lc(f) and f == g h (mod modulus), from f == g0 h0 (mod p).
std::pair<IntPoly, IntPoly> hensel_pair(const IntPoly& f, const ModPoly& g0, const ModPoly& h0,
                                        std::uint64_t p, const Int& modulus) {
  ModPoly g_bar(p), s(p), t(p);
  ext_gcd(g0, h0, g_bar, s, t);
  if (g_bar.degree() != 0) throw VerificationError("Hensel factors not coprime mod p");
  IntPoly g = g0.to_int();
  IntPoly h = h0.to_int();
  // Force lc(h) = lc(f) exactly; g stays monic throughout.
  {
    IntVector hv = h.coeffs();
    hv.back() = f.lead();
    h = IntPoly(std::move(hv));
  }
  // The corrections have degree below deg g and deg h respectively, so g
  // stays monic and lc(h) stays lc(f) exactly.
  Int m = static_cast<unsigned long>(p);
  while (m < modulus) {
    IntPoly err = f - g * h;
    auto q = exact_divide(err, IntPoly::constant(m));
    if (!q) throw VerificationError("Hensel step lost the congruence");
    ModPoly e = ModPoly::from_int(*q, p);
    auto qr = divmod(e * t, g0);
    ModPoly dh = e * s + h0 * qr.q;
    g += qr.r.to_int() * m;
    h += dh.to_int() * m;
    m *= static_cast<unsigned long>(p);
  }
  return {g, h};
}

// Lift f == lc(f) * prod(factors) (mod p) to monic factors modulo `modulus`.
void hensel_multi(const IntPoly& f, const std::vector<ModPoly>& factors, std::uint64_t p,
                  const Int& modulus, std::vector<IntPoly>& out) {
  if (factors.size() == 1) {
    // f == lc * F (mod modulus): F = lc^{-1} f.
    Int inv;
    Int lc = mod_nonneg(f.lead(), modulus);
    if (mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), modulus.get_mpz_t()) == 0)
      throw VerificationError("leading coefficient not invertible in Hensel lift");
    out.push_back((f * inv).mod(modulus));
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<ModPoly> left(factors.begin(), factors.begin() + static_cast<long>(half));
  std::vector<ModPoly> right(factors.begin() + static_cast<long>(half), factors.end());
  ModPoly g0(p, {1}), h0(p, {1});
  for (const auto& a : left) g0 = g0 * a;
  for (const auto& b : right) h0 = h0 * b;
  h0 = h0.scaled(ModPoly::from_int(IntPoly::constant(f.lead()), p).coeff(0));
  auto [g, h] = hensel_pair(f, g0, h0, p, modulus);
  hensel_multi(g, left, p, modulus, out);
  hensel_multi(h, right, p, modulus, out);
}

std::uint64_t choose_prime(const IntPoly& f) {
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime(Int(static_cast<unsigned long>(p)))) continue;
    if (mod_nonneg(f.lead(), Int(static_cast<unsigned long>(p))) == 0) continue;
    ModPoly fp = ModPoly::from_int(f, p);
    if (gcd(fp, derivative(fp)).degree() == 0) return p;
    if (p > 100000) throw NumericalError("no good prime found for factorization");
  }
}

// Irreducible factors of a primitive squarefree f with f(0) != 0.
void factor_squarefree(const IntPoly& f, std::vector<IntPoly>& out) {
  if (f.degree() <= 1) {
    out.push_back(f);
    return;
  }
  const std::uint64_t p = choose_prime(f);
  ModPoly fp = ModPoly::from_int(f, p).monic();
  std::vector<ModPoly> modular = detail::berlekamp(fp);
  if (modular.size() == 1) {
    out.push_back(f);
    return;
  }
  // Mignotte: any factor's coefficients are bounded by 2^deg * ||f||_2.
  Int norm2 = 0;
  for (const auto& c : f.coeffs()) norm2 += c * c;
  Int norm = sqrt(norm2) + 1;
  Int bound = (Int(1) << static_cast<unsigned long>(f.degree())) * norm * abs_int(f.lead()) * 2;
  Int modulus = p;
  while (modulus <= bound) modulus *= p;

  std::vector<IntPoly> lifted;
  hensel_multi(f, modular, p, modulus, lifted);

  IntPoly rest = f;
  std::vector<IntPoly> pool = lifted;
  std::size_t subset_size = 1;
  while (2 * subset_size <= pool.size()) {
    bool found = false;
    const std::size_t n = pool.size();
    std::vector<std::size_t> idx(subset_size);
    for (std::size_t i = 0; i < subset_size; ++i) idx[i] = i;
    while (true) {
      IntPoly cand = IntPoly::constant(rest.lead());
      for (auto i : idx) cand = (cand * pool[i]).mod(modulus);
      cand = symmetric_mod(cand, modulus);
      if (!cand.is_zero() && cand.degree() >= 1) {
        IntPoly prim = content_primitive(cand).second;
        if (auto q = exact_divide(rest, prim)) {
          out.push_back(prim);
          rest = content_primitive(*q).second;
          std::vector<IntPoly> remaining;
          for (std::size_t i = 0; i < n; ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) remaining.push_back(pool[i]);
          pool = std::move(remaining);
          found = true;
          break;
        }
      }
      // next combination
      std::size_t k = subset_size;
      while (k > 0 && idx[k - 1] == n - subset_size + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < subset_size; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++subset_size;
  }
  if (rest.degree() >= 1) out.push_back(content_primitive(rest).second);
}

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto ui = static_cast<std::size_t>(i);
    if (a.coeffs()[ui] != b.coeffs()[ui]) return a.coeffs()[ui] < b.coeffs()[ui];
  }
  return false;
}

}  // namespace

Factorization factor(const IntPoly& p) {
  if (p.is_zero()) throw DomainError("factor of the zero polynomial");
  Factorization out;
  auto [c, prim] = content_primitive(p);
  out.content = c;
  out.unit = (p.lead() < 0) ? -1 : 1;
  IntPoly work = prim;
  // Powers of t first.
  unsigned tpow = 0;
  while (work.degree() >= 1 && work.coeff(0) == 0) {
    IntVector v(work.coeffs().begin() + 1, work.coeffs().end());
    work = IntPoly(std::move(v));
    ++tpow;
  }
  if (tpow) out.factors.push_back({IntPoly::t(), tpow});
  if (work.degree() >= 1) {
    IntPoly g = gcd(work, work.derivative());
    IntPoly sqfree = content_primitive(*exact_divide(work, g)).second;
    std::vector<IntPoly> irreducibles;
    factor_squarefree(sqfree, irreducibles);
    for (auto& q : irreducibles) {
      q = normalize_sign(q);
      unsigned mult = 0;
      while (auto d = exact_divide(work, q)) {
        work = *d;
        ++mult;
      }
      if (mult == 0) throw VerificationError("factor does not divide its input");
      out.factors.push_back({q, mult});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return poly_less(a.poly, b.poly); });
  if (!(out.expand() == p)) throw VerificationError("factorization does not reconstruct its input");
  return out;
}

}  // namespace entroscope
