#pragma once

// Dense polynomials over F_p for a word-sized prime p. Internal to the
// factorization engine and the base-p radical computations.

#include <cstdint>
#include <vector>

#include "entroscope/intpoly.hpp"

namespace entroscope::detail {

class ModPoly {
 public:
  ModPoly(std::uint64_t p) : p_(p) {}
  ModPoly(std::uint64_t p, std::vector<std::uint64_t> c);
  static ModPoly from_int(const IntPoly& f, std::uint64_t p);

  std::uint64_t prime() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint64_t lead() const { return c_.back(); }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  std::uint64_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  // Lift to Z with coefficients in [0, p).
  IntPoly to_int() const;
  ModPoly monic() const;

  friend ModPoly operator+(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator-(const ModPoly& a, const ModPoly& b);
  friend ModPoly operator*(const ModPoly& a, const ModPoly& b);
  ModPoly scaled(std::uint64_t s) const;
  friend bool operator==(const ModPoly& a, const ModPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

struct ModDivResult {
  ModPoly q;
  ModPoly r;
};
ModDivResult divmod(const ModPoly& a, const ModPoly& b);
ModPoly gcd(ModPoly a, ModPoly b);  // monic, or zero
// s a + t b = gcd(a, b) (monic).
void ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t);
ModPoly derivative(const ModPoly& a);

// Monic irreducible factors of a monic squarefree polynomial (Berlekamp).
std::vector<ModPoly> berlekamp(const ModPoly& f);

}  // namespace entroscope::detail
