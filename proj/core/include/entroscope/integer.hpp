#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace entroscope {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Floor division and nonnegative remainder.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_nonneg(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_prime(const Int& n) {
  return n > 1 && mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline bool is_squarefree(const Int& n) {
  if (n <= 0) return false;
  Int m = n;
  for (unsigned long p = 2; Int(p) * p <= m; ++p) {
    if (m % p == 0) {
      m /= p;
      if (m % p == 0) return false;
    }
  }
  return true;
}

// Prime factors of a positive integer (ascending, without multiplicity).
// Trial division; the moduli in this library are small.
inline std::vector<Int> prime_factors(const Int& n) {
  std::vector<Int> out;
  Int m = abs_int(n);
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

}  // namespace entroscope
