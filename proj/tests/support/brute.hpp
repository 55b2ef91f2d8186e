#pragma once

// Brute-force oracles over finite flows: plain enumeration of elements and
// direct iteration of the defining conditions, no normal forms involved
// beyond listing representatives.

#include <functional>
#include <set>
#include <vector>

#include "entroscope/flows.hpp"

namespace brute {

using namespace entroscope;

// One ambient representative per element of a finite group: the box of SNF
// coordinates mapped back through U^-1.
inline std::vector<IntVector> elements(const FgAbGroup& g) {
  std::vector<IntVector> out;
  const std::size_t k = g.ambient_rank();
  const std::size_t s = g.torsion_coords();
  std::vector<long> mod(k, 1);
  for (std::size_t i = 0; i < s; ++i) mod[i] = g.coord_modulus(i).get_si();
  std::vector<long> y(k, 0);
  while (true) {
    IntVector yv(k);
    for (std::size_t i = 0; i < k; ++i) yv[i] = y[i];
    out.push_back(g.coord_u_inv() * yv);
    std::size_t i = 0;
    while (i < k && ++y[i] == mod[i]) y[i++] = 0;
    if (i == k) break;
  }
  return out;
}

// Elements of Z/p[t]/(f), f monic: all polynomials of degree < deg f.
inline std::vector<IntPoly> elements(const CyclicFlow& c) {
  std::vector<IntPoly> out;
  const auto d = static_cast<std::size_t>(c.poly().degree());
  const long p = c.base().get_si();
  std::vector<long> a(d, 0);
  while (true) {
    IntVector v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = a[i];
    out.push_back(IntPoly(v));
    std::size_t i = 0;
    while (i < d && ++a[i] == p) a[i++] = 0;
    if (i == d) break;
  }
  return out;
}

// Whether psi^n x = 0 for some n <= bound.
inline bool eventually_zero(const FgAbGroup& g, const IntMatrix& psi, IntVector x, std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n) {
    if (g.is_zero_element(x)) return true;
    x = psi * x;
  }
  return false;
}

inline bool eventually_zero(const CyclicFlow& c, const IntPoly& s, IntPoly x, std::size_t bound) {
  for (std::size_t n = 0; n <= bound; ++n) {
    x = c.reduce(x);
    if (x.is_zero()) return true;
    x = x * s;
  }
  return false;
}

// Least (n, m), n > m, with phi^n x = phi^m x, by listing the orbit.
inline std::pair<unsigned long, unsigned long> orbit_witness(const std::function<IntVector(const IntVector&)>& step,
                                                             const std::function<IntVector(const IntVector&)>& canon,
                                                             IntVector x) {
  std::vector<IntVector> seen;
  IntVector cur = canon(x);
  while (true) {
    for (std::size_t m = 0; m < seen.size(); ++m)
      if (seen[m] == cur) return {seen.size(), m};
    seen.push_back(cur);
    x = step(x);
    cur = canon(x);
  }
}

// |F + phi F + ... + phi^{n-1} F| for a finite flow, by closing the set of
// generated elements under addition.
inline std::size_t subgroup_size(const FgAbGroup& g, const std::vector<IntVector>& gens) {
  std::set<IntVector> seen{g.canonical(IntVector(g.ambient_rank()))};
  std::vector<IntVector> frontier{IntVector(g.ambient_rank())};
  while (!frontier.empty()) {
    std::vector<IntVector> next;
    for (const auto& x : frontier)
      for (const auto& v : gens) {
        IntVector y(x.size());
        for (std::size_t i = 0; i < y.size(); ++i) y[i] = x[i] + v[i];
        if (seen.insert(g.canonical(y)).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen.size();
}

}  // namespace brute
