#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entroscope/matrix.hpp"

namespace entroscope {

/// Column Hermite normal form H = A V (V unimodular). H is lower echelon:
/// column j has its pivot in row pivots[j], pivot rows strictly increase,
/// pivots are positive, and entries left of a pivot in its row lie in
/// [0, pivot). Zero columns are dropped from `h` (and moved to the end of V).
struct HnfResult {
  IntMatrix h;   // rows x rank
  IntMatrix v;   // cols x cols, A v = [h | 0]
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
};
HnfResult hnf_with_transform(const IntMatrix& a);
IntMatrix hnf(const IntMatrix& a);

/// Smith normal form: u * a * v = diag(d) with d_1 | d_2 | ... and the zero
/// entries last; u_inv is u's inverse.
struct SnfResult {
  IntMatrix u;
  IntMatrix u_inv;
  IntMatrix v;
  IntVector diag;  // length min(rows, cols), nonnegative
};
SnfResult snf(const IntMatrix& a);

// Basis (in HNF) of the integer kernel {x : a x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

// x with h x = b for a full-column-rank lower-echelon HNF h, or nullopt
// when b is not an integer combination of its columns.
std::optional<IntVector> solve_hnf(const HnfResult& h, const IntVector& b);

/// Z^k modulo the span of the relation columns.
class FgAbGroup {
 public:
  FgAbGroup() : FgAbGroup(0) {}
  explicit FgAbGroup(std::size_t k);
  FgAbGroup(std::size_t k, const IntMatrix& relations);
  static FgAbGroup cyclic(const Int& n);  // Z/n, or Z for n == 0

  std::size_t ambient_rank() const { return k_; }
  // Relations in canonical (HNF) form.
  const IntMatrix& relations() const { return rel_.h; }
  const HnfResult& relations_hnf() const { return rel_; }

  // Invariant factors d_i > 1 in divisibility order.
  const IntVector& invariant_factors() const { return inv_; }
  std::size_t free_rank() const { return free_rank_; }
  bool is_finite() const { return free_rank_ == 0; }
  // nullopt for infinite groups.
  std::optional<Int> order() const;
  // Exponent of the torsion subgroup (1 when torsion-free).
  Int torsion_exponent() const;

  // SNF coordinates: y = U x; the first `torsion_coords()` coordinates are
  // taken modulo snf_diag()[i], the remaining free_rank() are free.
  const IntMatrix& coord_u() const { return snf_.u; }
  const IntMatrix& coord_u_inv() const { return snf_.u_inv; }
  std::size_t torsion_coords() const { return s_; }
  const Int& coord_modulus(std::size_t i) const { return snf_.diag[i]; }

  // Canonical representative of x: SNF coordinates reduced into [0, d_i).
  IntVector canonical(const IntVector& x) const;
  bool is_zero_element(const IntVector& x) const;
  bool equal(const IntVector& x, const IntVector& y) const;

  // "Z(2) + Z(6) + Z^2", "0" for the trivial group.
  std::string iso_string() const;

  // phi maps every relation into the relation lattice.
  bool preserves(const IntMatrix& phi) const;

  // Matrix of the induced map on the free quotient G / t(G) in the
  // basis given by the free SNF coordinates.
  IntMatrix free_quotient_matrix(const IntMatrix& phi) const;
  // Free SNF coordinates of x.
  IntVector free_coordinates(const IntVector& x) const;

  friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
    return a.k_ == b.k_ && a.rel_.h == b.rel_.h;
  }

 private:
  std::size_t k_;
  HnfResult rel_;
  SnfResult snf_;
  std::size_t s_ = 0;  // number of nonzero SNF entries
  IntVector inv_;
  std::size_t free_rank_ = 0;
};

/// Subgroup of a FgAbGroup, stored as the HNF of its preimage in Z^k
/// (which always contains the relations).
class Subgroup {
 public:
  Subgroup() = default;
  static Subgroup generated(const FgAbGroup& parent, const std::vector<IntVector>& gens);
  static Subgroup from_matrix(const FgAbGroup& parent, const IntMatrix& gens);
  static Subgroup zero(const FgAbGroup& parent);
  static Subgroup whole(const FgAbGroup& parent);

  const FgAbGroup& parent() const { return parent_; }
  const IntMatrix& basis() const { return basis_.h; }
  const HnfResult& basis_hnf() const { return basis_; }

  bool contains(const IntVector& x) const;
  bool contains(const Subgroup& other) const;
  bool is_zero() const;
  bool is_whole() const;

  Subgroup join(const Subgroup& other) const;
  Subgroup meet(const Subgroup& other) const;

  // |N| (nullopt = infinite) and [parent : N] (nullopt = infinite).
  std::optional<Int> order() const;
  std::optional<Int> index() const;

  // N as an abstract group: Z^rank(basis) modulo the basis coordinates of
  // the relations.
  FgAbGroup as_group() const;
  // Coordinates of x (in N) with respect to basis().
  IntVector coordinates(const IntVector& x) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.basis_.h == b.basis_.h;
  }

 private:
  Subgroup(FgAbGroup parent, HnfResult basis) : parent_(std::move(parent)), basis_(std::move(basis)) {}
  FgAbGroup parent_;
  HnfResult basis_;
};

FgAbGroup quotient(const Subgroup& n);

// {x : phi x in relations}. DomainError("not an endomorphism") when phi
// does not preserve the relations.
Subgroup kernel(const FgAbGroup& parent, const IntMatrix& phi);
// {x : phi x in target}.
Subgroup preimage(const FgAbGroup& parent, const IntMatrix& phi, const Subgroup& target);
// phi(N) + relations.
Subgroup image(const IntMatrix& phi, const Subgroup& n);
// Preimage of the torsion subgroup.
Subgroup torsion_subgroup(const FgAbGroup& g);

}  // namespace entroscope
