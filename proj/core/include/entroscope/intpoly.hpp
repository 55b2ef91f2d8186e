#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entroscope/integer.hpp"

namespace entroscope {

/// Univariate polynomial with integer coefficients, little-endian
/// (coeffs()[i] multiplies t^i). Trailing zeros are always trimmed, so the
/// zero polynomial is the empty coefficient vector and has degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(IntVector coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly constant(const Int& c);
  static IntPoly monomial(const Int& c, std::size_t degree);
  static IntPoly t() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  bool is_monic() const { return !is_zero() && lead() == 1; }
  const Int& lead() const { return coeffs_.back(); }
  const IntVector& coeffs() const { return coeffs_; }
  // Coefficient of t^i; zero beyond the degree.
  Int coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Int(0); }

  Int eval(const Int& x) const;
  IntPoly derivative() const;
  // Coefficients reduced into [0, m).
  IntPoly mod(const Int& m) const;

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  IntPoly& operator*=(const IntPoly& o);
  IntPoly& operator*=(const Int& c);

  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(IntPoly a, const IntPoly& b) { return a *= b; }
  friend IntPoly operator*(IntPoly a, const Int& c) { return a *= c; }
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }

  // Human-readable form in t, highest degree first, e.g. "t^2 - t - 1".
  std::string to_string() const;

 private:
  void trim();
  IntVector coeffs_;
};

IntPoly pow(const IntPoly& p, unsigned k);

// Exact quotient a / b in Z[t], or nullopt when b does not divide a.
std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b);
bool divides(const IntPoly& b, const IntPoly& a);

// Remainder of a modulo a monic b (exact over Z).
IntPoly rem_monic(const IntPoly& a, const IntPoly& b);

// Pseudo-remainder prem(a, b) = lc(b)^(deg a - deg b + 1) a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b);

Int content(const IntPoly& p);

// (c, q) with p = +-c q, q primitive with positive leading coefficient.
// Throws DomainError on the zero polynomial.
std::pair<Int, IntPoly> content_primitive(const IntPoly& p);

// Sign-normalized: positive leading coefficient, content kept.
IntPoly normalize_sign(const IntPoly& p);

// gcd in Z[t] including content, normalized to positive leading coefficient.
// gcd(0, 0) = 0.
IntPoly gcd(const IntPoly& a, const IntPoly& b);
IntPoly lcm(const IntPoly& a, const IntPoly& b);

// Divisibility of t^d - 1 by g, for every d with euler_phi(d) <= deg g.
bool is_cyclotomic(const IntPoly& g);
IntPoly cyclotomic_polynomial(unsigned n);
unsigned euler_phi(unsigned n);
// Order d with g = Phi_d, or 0 when g is not cyclotomic.
unsigned cyclotomic_order(const IntPoly& g);

struct Factor {
  IntPoly poly;
  unsigned multiplicity = 1;
};

/// unit * content * prod(factor^multiplicity) reproduces the input.
struct Factorization {
  int unit = 1;
  Int content = 1;
  std::vector<Factor> factors;

  IntPoly expand() const;
};

// Complete factorization over Z: squarefree part, factorization modulo the
// smallest good prime (Berlekamp), Hensel lifting, subset recombination.
// Factors come out primitive with positive leading coefficient, sorted by
// (degree, coefficients).
Factorization factor(const IntPoly& p);

enum class FactorClass { T, T_MINUS_1, CYC_T, MONIC, ALL };

const char* to_string(FactorClass c);

// Whether the primitive irreducible g belongs to the class.
bool in_class(const IntPoly& g, FactorClass cls);

struct SpecialSplit {
  IntPoly in_s;   // S-supported part
  IntPoly out_s;  // cofactor f_S
};

// p = +-in_s * out_s with every irreducible factor of in_s in `cls` and none
// of out_s. Integer content goes to in_s only for ALL. Both parts have
// positive leading coefficient.
SpecialSplit special_part(const IntPoly& p, FactorClass cls);

// Polynomial whose roots are the k-th powers of the roots of f, i.e.
// Res_y(f(y), t - y^k), sign-normalized. Leading coefficient |lc f|^k.
IntPoly power_poly(const IntPoly& f, unsigned k);

}  // namespace entroscope
