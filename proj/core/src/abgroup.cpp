#include "entroscope/abgroup.hpp"

#include <algorithm>

#include "entroscope/errors.hpp"

namespace entroscope {

namespace {

void col_axpy(IntMatrix& m, std::size_t dst, const Int& q, std::size_t src) {
  // col_dst -= q * col_src
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void row_axpy(IntMatrix& m, std::size_t dst, const Int& q, std::size_t src) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void negate_col(IntMatrix& m, std::size_t c) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, c) = -m(i, c);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HnfResult hnf_with_transform(const IntMatrix& a) {
  const std::size_t k = a.rows();
  const std::size_t m = a.cols();
  IntMatrix h = a;
  IntMatrix v = IntMatrix::identity(m);
  std::vector<std::size_t> pivots;
  std::size_t c = 0;
  for (std::size_t i = 0; i < k && c < m; ++i) {
    while (true) {
      std::size_t best = m;
      for (std::size_t j = c; j < m; ++j)
        if (h(i, j) != 0 && (best == m || abs_int(h(i, j)) < abs_int(h(i, best)))) best = j;
      if (best == m) break;
      swap_cols(h, c, best);
      swap_cols(v, c, best);
      bool clean = true;
      for (std::size_t j = c + 1; j < m; ++j) {
        if (h(i, j) == 0) continue;
        Int q = floor_div(h(i, j), h(i, c));
        col_axpy(h, j, q, c);
        col_axpy(v, j, q, c);
        if (h(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(i, c) == 0) continue;
    if (h(i, c) < 0) {
      negate_col(h, c);
      negate_col(v, c);
    }
    for (std::size_t j = 0; j < c; ++j) {
      Int q = floor_div(h(i, j), h(i, c));
      if (q == 0) continue;
      col_axpy(h, j, q, c);
      col_axpy(v, j, q, c);
    }
    pivots.push_back(i);
    ++c;
  }
  HnfResult out;
  out.h = h.columns(0, c);
  out.v = std::move(v);
  out.pivots = std::move(pivots);
  out.rank = c;
  return out;
}

IntMatrix hnf(const IntMatrix& a) { return hnf_with_transform(a).h; }

SnfResult snf(const IntMatrix& a) {
  const std::size_t k = a.rows();
  const std::size_t m = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(k);
  IntMatrix ui = IntMatrix::identity(k);
  IntMatrix v = IntMatrix::identity(m);
  // Row op "row_dst -= q row_src" on d and u; u_inv gets "col_src += q col_dst".
  auto row_op = [&](std::size_t dst, const Int& q, std::size_t src) {
    row_axpy(d, dst, q, src);
    row_axpy(u, dst, q, src);
    col_axpy(ui, src, -q, dst);
  };
  auto col_op = [&](std::size_t dst, const Int& q, std::size_t src) {
    col_axpy(d, dst, q, src);
    col_axpy(v, dst, q, src);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    swap_rows(d, x, y);
    swap_rows(u, x, y);
    swap_cols(ui, x, y);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    swap_cols(d, x, y);
    swap_cols(v, x, y);
  };
  const std::size_t n = std::min(k, m);
  std::size_t t = 0;
  for (; t < n; ++t) {
    // Smallest-magnitude nonzero pivot in the trailing block.
    auto pick = [&]() {
      std::size_t bi = k, bj = m;
      for (std::size_t i = t; i < k; ++i)
        for (std::size_t j = t; j < m; ++j)
          if (d(i, j) != 0 && (bi == k || abs_int(d(i, j)) < abs_int(d(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == k) return false;
      row_swap(t, bi);
      col_swap(t, bj);
      return true;
    };
    if (!pick()) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < k; ++i) {
        if (d(i, t) == 0) continue;
        row_op(i, tdiv(d(i, t), d(t, t)), t);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < m; ++j) {
        if (d(t, j) == 0) continue;
        col_op(j, tdiv(d(t, j), d(t, t)), t);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        pick();
        continue;
      }
      // Enforce divisibility of the trailing block by the pivot.
      std::size_t bad = k;
      for (std::size_t i = t + 1; i < k && bad == k; ++i)
        for (std::size_t j = t + 1; j < m; ++j)
          if (d(i, j) % d(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == k) break;
      row_op(t, Int(-1), bad);
    }
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
      negate_col(ui, t);
    }
  }
  SnfResult out;
  out.diag.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.diag[i] = d(i, i);
  out.u = std::move(u);
  out.u_inv = std::move(ui);
  out.v = std::move(v);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  HnfResult h = hnf_with_transform(a);
  return hnf(h.v.columns(h.rank, a.cols()));
}

std::optional<IntVector> solve_hnf(const HnfResult& h, const IntVector& b) {
  if (b.size() != h.h.rows()) throw DomainError("vector length mismatch");
  IntVector r = b;
  IntVector x(h.rank);
  for (std::size_t j = 0; j < h.rank; ++j) {
    const std::size_t p = h.pivots[j];
    for (std::size_t i = (j == 0 ? 0 : h.pivots[j - 1] + 1); i < p; ++i)
      if (r[i] != 0) return std::nullopt;
    if (r[p] % h.h(p, j) != 0) return std::nullopt;
    x[j] = r[p] / h.h(p, j);
    if (x[j] != 0)
      for (std::size_t i = p; i < r.size(); ++i) r[i] -= x[j] * h.h(i, j);
  }
  for (const auto& e : r)
    if (e != 0) return std::nullopt;
  return x;
}

FgAbGroup::FgAbGroup(std::size_t k) : FgAbGroup(k, IntMatrix(k, 0)) {}

FgAbGroup::FgAbGroup(std::size_t k, const IntMatrix& relations) : k_(k) {
  if (relations.rows() != k) throw DomainError("relation matrix must have one row per generator");
  rel_ = hnf_with_transform(relations);
  rel_.v = IntMatrix();  // not needed after canonicalization
  snf_ = snf(rel_.h);
  s_ = rel_.rank;
  for (std::size_t i = 0; i < s_; ++i)
    if (snf_.diag[i] > 1) inv_.push_back(snf_.diag[i]);
  free_rank_ = k_ - s_;
}

FgAbGroup FgAbGroup::cyclic(const Int& n) {
  IntMatrix r(1, 1);
  r(0, 0) = abs_int(n);
  return FgAbGroup(1, r);
}

std::optional<Int> FgAbGroup::order() const {
  if (free_rank_ > 0) return std::nullopt;
  Int o = 1;
  for (const auto& d : inv_) o *= d;
  return o;
}

Int FgAbGroup::torsion_exponent() const { return inv_.empty() ? Int(1) : inv_.back(); }

IntVector FgAbGroup::canonical(const IntVector& x) const {
  if (x.size() != k_) throw DomainError("element length mismatch");
  IntVector y = snf_.u * x;
  for (std::size_t i = 0; i < s_; ++i) y[i] = mod_nonneg(y[i], snf_.diag[i]);
  return y;
}

bool FgAbGroup::is_zero_element(const IntVector& x) const {
  for (const auto& c : canonical(x))
    if (c != 0) return false;
  return true;
}

bool FgAbGroup::equal(const IntVector& x, const IntVector& y) const { return canonical(x) == canonical(y); }

std::string FgAbGroup::iso_string() const {
  std::string s;
  for (const auto& d : inv_) {
    if (!s.empty()) s += " + ";
    s += "Z(" + d.get_str() + ")";
  }
  if (free_rank_ > 0) {
    if (!s.empty()) s += " + ";
    s += free_rank_ == 1 ? std::string("Z") : "Z^" + std::to_string(free_rank_);
  }
  return s.empty() ? "0" : s;
}

bool FgAbGroup::preserves(const IntMatrix& phi) const {
  if (phi.rows() != k_ || phi.cols() != k_) return false;
  for (std::size_t j = 0; j < rel_.rank; ++j)
    if (!solve_hnf(rel_, phi * rel_.h.col(j))) return false;
  return true;
}

IntMatrix FgAbGroup::free_quotient_matrix(const IntMatrix& phi) const {
  IntMatrix m = snf_.u * phi * snf_.u_inv;
  return m.block(s_, k_, s_, k_);
}

IntVector FgAbGroup::free_coordinates(const IntVector& x) const {
  IntVector y = snf_.u * x;
  return IntVector(y.begin() + static_cast<long>(s_), y.end());
}

Subgroup Subgroup::from_matrix(const FgAbGroup& parent, const IntMatrix& gens) {
  if (gens.rows() != parent.ambient_rank()) throw DomainError("generator length mismatch");
  HnfResult h = hnf_with_transform(hconcat(gens, parent.relations()));
  h.v = IntMatrix();
  return Subgroup(parent, std::move(h));
}

Subgroup Subgroup::generated(const FgAbGroup& parent, const std::vector<IntVector>& gens) {
  for (const auto& g : gens)
    if (g.size() != parent.ambient_rank()) throw DomainError("generator length mismatch");
  return from_matrix(parent, IntMatrix::from_columns(gens, parent.ambient_rank()));
}

Subgroup Subgroup::zero(const FgAbGroup& parent) { return generated(parent, {}); }

Subgroup Subgroup::whole(const FgAbGroup& parent) {
  return from_matrix(parent, IntMatrix::identity(parent.ambient_rank()));
}

bool Subgroup::contains(const IntVector& x) const { return solve_hnf(basis_, x).has_value(); }

bool Subgroup::contains(const Subgroup& other) const {
  for (std::size_t j = 0; j < other.basis_.rank; ++j)
    if (!contains(other.basis_.h.col(j))) return false;
  return true;
}

bool Subgroup::is_zero() const { return basis_.h == parent_.relations(); }

bool Subgroup::is_whole() const { return basis_.h == IntMatrix::identity(parent_.ambient_rank()); }

Subgroup Subgroup::join(const Subgroup& other) const {
  return from_matrix(parent_, hconcat(basis_.h, other.basis_.h));
}

Subgroup Subgroup::meet(const Subgroup& other) const {
  const std::size_t r1 = basis_.rank;
  IntMatrix neg = Int(-1) * other.basis_.h;
  IntMatrix ker = integer_kernel(hconcat(basis_.h, neg));
  return from_matrix(parent_, basis_.h * ker.block(0, r1, 0, ker.cols()));
}

std::optional<Int> Subgroup::order() const { return as_group().order(); }

std::optional<Int> Subgroup::index() const { return quotient(*this).order(); }

IntVector Subgroup::coordinates(const IntVector& x) const {
  auto c = solve_hnf(basis_, x);
  if (!c) throw DomainError("element not in subgroup");
  return *c;
}

FgAbGroup Subgroup::as_group() const {
  const IntMatrix& rel = parent_.relations();
  IntMatrix coords(basis_.rank, rel.cols());
  for (std::size_t j = 0; j < rel.cols(); ++j) {
    IntVector c = coordinates(rel.col(j));
    for (std::size_t i = 0; i < basis_.rank; ++i) coords(i, j) = c[i];
  }
  return FgAbGroup(basis_.rank, coords);
}

FgAbGroup quotient(const Subgroup& n) { return FgAbGroup(n.parent().ambient_rank(), n.basis()); }

Subgroup preimage(const FgAbGroup& parent, const IntMatrix& phi, const Subgroup& target) {
  const std::size_t k = parent.ambient_rank();
  if (phi.rows() != k || phi.cols() != k) throw DomainError("matrix size does not match the group");
  IntMatrix ker = integer_kernel(hconcat(phi, Int(-1) * target.basis()));
  return Subgroup::from_matrix(parent, ker.block(0, k, 0, ker.cols()));
}

Subgroup kernel(const FgAbGroup& parent, const IntMatrix& phi) {
  if (!parent.preserves(phi)) throw DomainError("not an endomorphism");
  return preimage(parent, phi, Subgroup::zero(parent));
}

Subgroup image(const IntMatrix& phi, const Subgroup& n) {
  return Subgroup::from_matrix(n.parent(), phi * n.basis());
}

Subgroup torsion_subgroup(const FgAbGroup& g) {
  return Subgroup::from_matrix(g, g.coord_u_inv().columns(0, g.torsion_coords()));
}

}  // namespace entroscope
