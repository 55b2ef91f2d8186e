#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "entroscope/abgroup.hpp"
#include "entroscope/intpoly.hpp"

namespace entroscope {

/// Endomorphism phi of a finitely generated abelian group, acting on
/// ambient vectors (column convention: x -> phi x).
class FlowFG {
 public:
  FlowFG() = default;
  // Throws DomainError("not an endomorphism") unless phi preserves the relations.
  FlowFG(FgAbGroup group, IntMatrix phi);
  // (Z^n, companion matrix) for monic f of degree n >= 1.
  static FlowFG companion(const IntPoly& f);
  // ((Z/c)^n, companion matrix) for monic f, c > 0.
  static FlowFG companion_mod(const IntPoly& f, const Int& c);

  const FgAbGroup& group() const { return group_; }
  const IntMatrix& phi() const { return phi_; }
  std::size_t ambient_rank() const { return group_.ambient_rank(); }
  bool is_finite() const { return group_.is_finite(); }

  IntVector apply(const IntVector& x) const { return phi_ * x; }
  // Characteristic polynomial of the induced map on G / t(G).
  IntPoly free_charpoly() const;

  friend bool operator==(const FlowFG& a, const FlowFG& b) {
    return a.group_ == b.group_ && a.phi_ == b.phi_;
  }

 private:
  FgAbGroup group_;
  IntMatrix phi_;
};

/// Z[t]/(c, f) with t acting by multiplication. Base 0 is Z, base c > 0 is
/// Z/c. Canonical form: for base 0, f with positive leading coefficient
/// (integer content kept, it is part of the module); for prime c, f reduced
/// mod c and made monic, or 0; for non-squarefree c, f must be 0 or have a
/// leading coefficient that is a unit mod c (then made monic). Base 1 is
/// stored as the trivial module Z[t]/(1).
class CyclicFlow {
 public:
  CyclicFlow() : CyclicFlow(Int(0), IntPoly{1}) {}
  // Throws DomainError for squarefree composite c (use Flow::cyclic to
  // split it) and for unsupported (c, f) pairs.
  CyclicFlow(const Int& base, const IntPoly& f);

  const Int& base() const { return base_; }
  const IntPoly& poly() const { return poly_; }
  bool is_bernoulli() const { return poly_.is_zero(); }
  bool is_trivial() const { return !poly_.is_zero() && poly_.degree() == 0 && (base_ > 0 || abs_int(poly_.lead()) == 1); }
  // Finite as a set: base > 0 and f != 0.
  bool is_finite() const { return base_ > 0 && !poly_.is_zero(); }
  bool prime_base() const { return base_ > 0 && is_prime(base_); }

  // Canonical representative of an element (reduction mod c, and mod f
  // whenever f is monic).
  IntPoly reduce(const IntPoly& x) const;
  // "Z[t]/(t - 2)", "F_3[t]", "(Z/4)[t]/(t + 1)", "0".
  std::string describe() const;

  friend bool operator==(const CyclicFlow& a, const CyclicFlow& b) {
    return a.base_ == b.base_ && a.poly_ == b.poly_;
  }

 private:
  Int base_;
  IntPoly poly_;
};

using FlowPart = std::variant<FlowFG, CyclicFlow>;

/// Direct sum of parts.
class Flow {
 public:
  Flow() = default;
  explicit Flow(std::vector<FlowPart> parts);
  Flow(FlowFG p) : parts_{std::move(p)} {}
  Flow(CyclicFlow p) : parts_{std::move(p)} {}
  // CyclicFlow(c, f), splitting a squarefree composite c by CRT into prime parts.
  static Flow cyclic(const Int& base, const IntPoly& f);

  const std::vector<FlowPart>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  const FlowPart& part(std::size_t i) const { return parts_.at(i); }
  Flow operator+(const Flow& other) const;

 private:
  std::vector<FlowPart> parts_;
};

/// Element of a flow: one integer vector per part (ambient coordinates for
/// FlowFG parts, little-endian coefficients for cyclic parts).
using Element = std::vector<IntVector>;

/// Invariant submodule of one part.
struct PartSubmodule {
  std::optional<IntPoly> generator;  // cyclic parts: (g)/(c, f) with g | f
  std::optional<Subgroup> subgroup;  // FlowFG parts

  friend bool operator==(const PartSubmodule& a, const PartSubmodule& b) {
    return a.generator == b.generator && a.subgroup == b.subgroup;
  }
};

struct SubmoduleDesc {
  std::vector<PartSubmodule> parts;
  std::string iso;

  friend bool operator==(const SubmoduleDesc& a, const SubmoduleDesc& b) { return a.parts == b.parts; }
};

// Builds the descriptor with its iso summary (the sub flow's description).
SubmoduleDesc make_submodule(const Flow& flow, std::vector<PartSubmodule> parts);
SubmoduleDesc zero_submodule(const Flow& flow);
SubmoduleDesc whole_submodule(const Flow& flow);
bool is_zero(const Flow& flow, const SubmoduleDesc& n);
bool is_whole(const Flow& flow, const SubmoduleDesc& n);
// n1 contained in n2.
bool contains(const Flow& flow, const SubmoduleDesc& n2, const SubmoduleDesc& n1);
SubmoduleDesc meet(const Flow& flow, const SubmoduleDesc& a, const SubmoduleDesc& b);

// Canonical generator of a submodule of a cyclic part: g | f in the base
// ring, normalized (positive leading coefficient for base 0, monic mod p).
// Throws DomainError when g does not divide f.
IntPoly normalize_generator(const CyclicFlow& c, const IntPoly& g);
// Whether x lies in (g)/(c, f).
bool cyclic_member(const CyclicFlow& c, const IntPoly& g, const IntPoly& x);

// Summary of the isomorphism type: "Z(2) + Z | Z[t]/(t - 2)".
std::string describe(const Flow& flow);

struct MinPoly {
  std::vector<Rational> coeffs;  // monic, little-endian
  bool integral = false;
};
// Least-degree monic rational mu with mu(phi) x = 0 on G / t(G).
MinPoly min_poly_point(const FlowFG& flow, const IntVector& x);

// Block-diagonal coproduct as a single FlowFG.
FlowFG direct_sum(const FlowFG& a, const FlowFG& b);

Flow power_flow(const Flow& flow, unsigned k);
FlowFG power_flow(const FlowFG& flow, unsigned k);

// (N, M/N). Throws DomainError when the descriptor is not invariant or a
// generator does not divide f.
std::pair<Flow, Flow> sub_quot(const Flow& flow, const SubmoduleDesc& n);

// The flow N with the restricted map and M/N with the induced map.
std::pair<FlowFG, FlowFG> sub_quot(const FlowFG& flow, const Subgroup& n);

// Smallest invariant subgroup containing the given elements.
Subgroup invariant_closure(const FlowFG& flow, const std::vector<IntVector>& gens);
bool is_invariant(const FlowFG& flow, const Subgroup& n);

// Z[t] x inside part `part` of the flow, as a standalone flow.
Flow cyclic_subflow(const Flow& flow, std::size_t part, const IntVector& x);

// Monic cyclic parts (and base-0 monic parts) as FlowFG; other parts unchanged.
std::optional<FlowFG> as_fg(const FlowPart& part);

}  // namespace entroscope
