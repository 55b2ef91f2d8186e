#include "entroscope/intpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "entroscope/errors.hpp"

namespace entroscope {

IntPoly::IntPoly(IntVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPoly IntPoly::constant(const Int& c) { return IntPoly(IntVector{c}); }

IntPoly IntPoly::monomial(const Int& c, std::size_t degree) {
  IntVector v(degree + 1, Int(0));
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  IntVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::mod(const Int& m) const {
  IntVector v = coeffs_;
  for (auto& c : v) c = mod_nonneg(c, m);
  return IntPoly(std::move(v));
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Int(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Int(0));
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const IntPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  IntVector r(coeffs_.size() + o.coeffs_.size() - 1, Int(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

IntPoly& IntPoly::operator*=(const Int& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Int& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Int mag = abs_int(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

IntPoly pow(const IntPoly& p, unsigned k) {
  IntPoly result = IntPoly::constant(1);
  IntPoly base = p;
  while (k) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k) base *= base;
  }
  return result;
}

std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  if (a.is_zero()) return IntPoly{};
  if (a.degree() < b.degree()) return std::nullopt;
  IntVector rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  IntVector q(rem.size() - db, Int(0));
  const Int& lb = b.lead();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Int& top = rem[i + db];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
    Int c = top / lb;
    q[i] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= c * b.coeffs()[j];
  }
  for (const auto& r : rem)
    if (r != 0) return std::nullopt;
  return IntPoly(std::move(q));
}

bool divides(const IntPoly& b, const IntPoly& a) { return exact_divide(a, b).has_value(); }

IntPoly rem_monic(const IntPoly& a, const IntPoly& b) {
  if (!b.is_monic()) throw DomainError("rem_monic requires a monic divisor");
  if (a.degree() < b.degree()) return a;
  IntVector rem = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t i = rem.size() - db; i-- > 0;) {
    Int c = rem[i + db];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= c * b.coeffs()[j];
  }
  rem.resize(db);
  return IntPoly(std::move(rem));
}

IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  IntVector r = a.coeffs();
  const int db = b.degree();
  const Int& lb = b.lead();
  int dr = static_cast<int>(r.size()) - 1;
  int e = std::max(a.degree() - db + 1, 0);
  while (dr >= db && dr >= 0) {
    Int c = r[static_cast<std::size_t>(dr)];
    for (auto& x : r) x *= lb;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(dr - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    --e;
    while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) --dr;
  }
  IntPoly out(std::move(r));
  if (e > 0) {
    Int s;
    mpz_pow_ui(s.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    out *= s;
  }
  return out;
}

Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) g = gcd_int(g, c);
  return g;
}

std::pair<Int, IntPoly> content_primitive(const IntPoly& p) {
  if (p.is_zero()) throw DomainError("content_primitive of the zero polynomial");
  Int c = content(p);
  IntVector v = p.coeffs();
  for (auto& x : v) x /= c;
  IntPoly q(std::move(v));
  if (q.lead() < 0) q = -q;
  return {c, q};
}

IntPoly normalize_sign(const IntPoly& p) {
  if (!p.is_zero() && p.lead() < 0) return -p;
  return p;
}

namespace {

IntPoly primitive_of(const IntPoly& p) { return content_primitive(p).second; }

IntPoly primitive_gcd(IntPoly a, IntPoly b) {
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? IntPoly{} : primitive_of(r);
  }
  return a;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return normalize_sign(b);
  if (b.is_zero()) return normalize_sign(a);
  auto [ca, pa] = content_primitive(a);
  auto [cb, pb] = content_primitive(b);
  IntPoly g = primitive_of(primitive_gcd(pa, pb));
  return g * gcd_int(ca, cb);
}

IntPoly lcm(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  IntPoly g = gcd(a, b);
  return normalize_sign(*exact_divide(a * b, g));
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic_polynomial(unsigned n) {
  // Phi_n = (t^n - 1) / prod_{d | n, d < n} Phi_d
  IntPoly num = IntPoly::monomial(1, n) - IntPoly::constant(1);
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) num = *exact_divide(num, cyclotomic_polynomial(d));
  }
  return num;
}

unsigned cyclotomic_order(const IntPoly& g) {
  if (!g.is_monic() || g.degree() < 1) return 0;
  const auto n = static_cast<unsigned>(g.degree());
  // euler_phi(d) >= sqrt(d / 2), so d <= 2 n^2 covers every admissible order.
  const unsigned bound = 2 * n * n + 2;
  for (unsigned d = 1; d <= bound; ++d) {
    if (euler_phi(d) != n) continue;
    IntPoly td = IntPoly::monomial(1, d) - IntPoly::constant(1);
    if (rem_monic(td, g).is_zero()) {
      // g irreducible divides t^d - 1 with matching degree; find the exact order.
      for (unsigned e = 1; e <= d; ++e)
        if (d % e == 0 && euler_phi(e) == n && cyclotomic_polynomial(e) == g) return e;
    }
  }
  return 0;
}

bool is_cyclotomic(const IntPoly& g) { return cyclotomic_order(g) != 0; }

IntPoly Factorization::expand() const {
  IntPoly r = IntPoly::constant(content * unit);
  for (const auto& f : factors) r *= pow(f.poly, f.multiplicity);
  return r;
}

const char* to_string(FactorClass c) {
  switch (c) {
    case FactorClass::T: return "T";
    case FactorClass::T_MINUS_1: return "T_MINUS_1";
    case FactorClass::CYC_T: return "CYC_T";
    case FactorClass::MONIC: return "MONIC";
    case FactorClass::ALL: return "ALL";
  }
  return "?";
}

bool in_class(const IntPoly& g, FactorClass cls) {
  switch (cls) {
    case FactorClass::T: return g == IntPoly::t();
    case FactorClass::T_MINUS_1: return g == IntPoly{-1, 1};
    case FactorClass::CYC_T: return g == IntPoly::t() || is_cyclotomic(g);
    case FactorClass::MONIC: return g.is_monic();
    case FactorClass::ALL: return true;
  }
  return false;
}

SpecialSplit special_part(const IntPoly& p, FactorClass cls) {
  if (p.is_zero()) throw DomainError("special_part of the zero polynomial");
  Factorization fz = factor(p);
  SpecialSplit s{IntPoly::constant(1), IntPoly::constant(1)};
  if (cls == FactorClass::ALL)
    s.in_s = IntPoly::constant(fz.content);
  else
    s.out_s = IntPoly::constant(fz.content);
  for (const auto& f : fz.factors) {
    IntPoly part = pow(f.poly, f.multiplicity);
    if (in_class(f.poly, cls))
      s.in_s *= part;
    else
      s.out_s *= part;
  }
  return s;
}

IntPoly power_poly(const IntPoly& f, unsigned k) {
  if (f.is_zero()) throw DomainError("power_poly of the zero polynomial");
  if (k == 0) throw DomainError("power_poly requires k >= 1");
  if (k == 1) return normalize_sign(f);
  const int n = f.degree();
  Int lc = abs_int(f.lead());
  Int lck;
  mpz_pow_ui(lck.get_mpz_t(), lc.get_mpz_t(), k);
  if (n == 0) return IntPoly::constant(lck);
  // Power sums p_j of the roots of f via Newton's identities on the monic
  // rational normalization, then p_j(g) = p_{jk}(f) and back again.
  const auto un = static_cast<std::size_t>(n);
  std::vector<Rational> e(un + 1);  // elementary symmetric e_0..e_n of roots of f
  for (std::size_t i = 0; i <= un; ++i) {
    // f / lc = t^n - e1 t^{n-1} + e2 t^{n-2} - ...
    Rational a(f.coeff(un - i), f.lead());
    a.canonicalize();
    e[i] = (i % 2 == 0) ? a : Rational(-a);
  }
  const std::size_t top = un * k;
  std::vector<Rational> ps(top + 1);
  for (std::size_t m = 1; m <= top; ++m) {
    Rational acc = 0;
    for (std::size_t i = 1; i < m && i <= un; ++i) {
      Rational term = e[i] * ps[m - i];
      if (i % 2 == 1) acc += term; else acc -= term;
    }
    if (m <= un) {
      Rational term = e[m] * static_cast<long>(m);
      if (m % 2 == 1) acc += term; else acc -= term;
    }
    ps[m] = acc;
  }
  std::vector<Rational> q(un + 1);  // power sums of the k-th powers
  for (std::size_t j = 1; j <= un; ++j) q[j] = ps[j * k];
  std::vector<Rational> g(un + 1);  // elementary symmetric of the k-th powers
  g[0] = 1;
  for (std::size_t m = 1; m <= un; ++m) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      Rational term = g[m - i] * q[i];
      if (i % 2 == 1) acc += term; else acc -= term;
    }
    acc /= static_cast<long>(m);
    g[m] = acc;
  }
  IntVector out(un + 1);
  for (std::size_t i = 0; i <= un; ++i) {
    Rational c = g[i] * lck;
    if (i % 2 == 1) c = -c;
    c.canonicalize();
    if (c.get_den() != 1) throw VerificationError("power_poly produced a non-integral coefficient");
    out[un - i] = c.get_num();
  }
  return IntPoly(std::move(out));
}

}  // namespace entroscope
