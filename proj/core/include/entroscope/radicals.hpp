#pragma once

#include <string>
#include <vector>

#include "entroscope/flows.hpp"

namespace entroscope {

enum class RadicalKind { O, I, Q, A, W };

const char* to_string(RadicalKind k);
// "O", "I", "Q", "A", "W"; ParseError otherwise.
RadicalKind parse_radical_kind(const std::string& s);
FactorClass factor_class(RadicalKind k);

// r_S(M) = {x : s x = 0 for some s in S}, S the multiplicative set of the kind.
// UnsupportedBase for cyclic parts over a non-squarefree base.
SubmoduleDesc radical(const Flow& flow, RadicalKind kind);
Subgroup radical(const FlowFG& flow, RadicalKind kind);
// Generator of the radical of a cyclic part.
IntPoly radical_generator(const CyclicFlow& c, RadicalKind kind);

// X_0 = 0 ⊆ X_1 ⊆ ... ⊆ X_{n_max} for kind O (ker phi^n), I (ker (phi-1)^n)
// or Q (X_{n+1}/X_n = Q_1 of M/X_n). Throws DomainError for A/W and
// VerificationError if the quotient recursion is violated.
std::vector<SubmoduleDesc> tower(const Flow& flow, RadicalKind kind, unsigned n_max);
std::vector<Subgroup> tower(const FlowFG& flow, RadicalKind kind, unsigned n_max);

// Q_1: points with phi^n x = phi^m x for some n > m.
Subgroup quasi_periodic_points(const FlowFG& flow);

struct QuasiPeriodicity {
  bool periodic = false;
  // Least n (then least m) with phi^n x = phi^m x, when periodic.
  unsigned long n = 0;
  unsigned long m = 0;
  std::string certificate;
};
QuasiPeriodicity is_quasi_periodic_point(const Flow& flow, const Element& x);

// Purification {x : k x in N for some integer k != 0}.
SubmoduleDesc istar_closure(const Flow& flow, const SubmoduleDesc& n);

enum class Invariant { LogCard, Rank };
// logcard: Q_1 of the torsion part; rank: the radical W.
SubmoduleDesc t_phi(const Flow& flow, Invariant inv);

}  // namespace entroscope
