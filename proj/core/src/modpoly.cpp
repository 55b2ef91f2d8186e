#include "modpoly.hpp"

#include <utility>

#include "entroscope/errors.hpp"

namespace entroscope::detail {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw DomainError("inverse of zero modulo p");
  return powmod(a, p - 2, p);
}

ModPoly::ModPoly(std::uint64_t p, std::vector<std::uint64_t> c) : p_(p), c_(std::move(c)) {
  for (auto& x : c_) x %= p_;
  trim();
}

ModPoly ModPoly::from_int(const IntPoly& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  c.reserve(f.coeffs().size());
  Int pp(static_cast<unsigned long>(p));
  for (const auto& x : f.coeffs()) c.push_back(mod_nonneg(x, pp).get_ui());
  return ModPoly(p, std::move(c));
}

IntPoly ModPoly::to_int() const {
  IntVector v;
  v.reserve(c_.size());
  for (auto x : c_) v.emplace_back(static_cast<unsigned long>(x));
  return IntPoly(std::move(v));
}

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(invmod(lead(), p_));
}

ModPoly ModPoly::scaled(std::uint64_t s) const {
  std::vector<std::uint64_t> c = c_;
  for (auto& x : c) x = mulmod(x, s, p_);
  return ModPoly(p_, std::move(c));
}

ModPoly operator+(const ModPoly& a, const ModPoly& b) {
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + b.coeff(i)) % a.p_;
  return ModPoly(a.p_, std::move(c));
}

ModPoly operator-(const ModPoly& a, const ModPoly& b) {
  std::vector<std::uint64_t> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a.coeff(i) + a.p_ - b.coeff(i)) % a.p_;
  return ModPoly(a.p_, std::move(c));
}

ModPoly operator*(const ModPoly& a, const ModPoly& b) {
  if (a.is_zero() || b.is_zero()) return ModPoly(a.p_);
  std::vector<std::uint64_t> c(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = (c[i + j] + mulmod(a.c_[i], b.c_[j], a.p_)) % a.p_;
  return ModPoly(a.p_, std::move(c));
}

ModDivResult divmod(const ModPoly& a, const ModPoly& b) {
  if (b.is_zero()) throw DomainError("division by zero polynomial mod p");
  const std::uint64_t p = a.prime();
  if (a.degree() < b.degree()) return {ModPoly(p), a};
  std::vector<std::uint64_t> r = a.coeffs();
  const auto db = static_cast<std::size_t>(b.degree());
  std::vector<std::uint64_t> q(r.size() - db, 0);
  const std::uint64_t inv = invmod(b.lead(), p);
  for (std::size_t i = q.size(); i-- > 0;) {
    std::uint64_t c = mulmod(r[i + db], inv, p);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) r[i + j] = (r[i + j] + p - mulmod(c, b.coeffs()[j], p)) % p;
  }
  r.resize(db);
  return {ModPoly(p, std::move(q)), ModPoly(p, std::move(r))};
}

ModPoly gcd(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = divmod(a, b).r;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

void ext_gcd(const ModPoly& a, const ModPoly& b, ModPoly& g, ModPoly& s, ModPoly& t) {
  const std::uint64_t p = a.prime();
  ModPoly r0 = a, r1 = b;
  ModPoly s0(p, {1}), s1(p);
  ModPoly t0(p), t1(p, {1});
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    ModPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    ModPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  std::uint64_t inv = invmod(r0.lead(), p);
  g = r0.scaled(inv);
  s = s0.scaled(inv);
  t = t0.scaled(inv);
}

ModPoly derivative(const ModPoly& a) {
  const std::uint64_t p = a.prime();
  if (a.degree() < 1) return ModPoly(p);
  std::vector<std::uint64_t> c(a.coeffs().size() - 1);
  for (std::size_t i = 1; i < a.coeffs().size(); ++i) c[i - 1] = mulmod(a.coeffs()[i], i % p, p);
  return ModPoly(p, std::move(c));
}

namespace {

// Basis of the null space of the n x n matrix m (row vectors v with v m = 0).
std::vector<std::vector<std::uint64_t>> left_null_space(std::vector<std::vector<std::uint64_t>> m,
                                                        std::uint64_t p) {
  const std::size_t n = m.size();
  // Transpose so that we solve m^T x = 0 by column reduction.
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i];
  std::vector<int> pivot_col_of_row(n, -1);
  std::vector<bool> is_pivot(n, false);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    std::uint64_t inv = invmod(a[row][col], p);
    for (auto& x : a[row]) x = mulmod(x, inv, p);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      std::uint64_t f = a[r][col];
      for (std::size_t c = 0; c < n; ++c) a[r][c] = (a[r][c] + p - mulmod(f, a[row][c], p)) % p;
    }
    pivot_col_of_row[row] = static_cast<int>(col);
    is_pivot[col] = true;
    ++row;
  }
  std::vector<std::vector<std::uint64_t>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint64_t> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < row; ++r) {
      auto pc = static_cast<std::size_t>(pivot_col_of_row[r]);
      v[pc] = (p - a[r][free]) % p;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

std::vector<ModPoly> berlekamp(const ModPoly& f) {
  const std::uint64_t p = f.prime();
  const int n = f.degree();
  if (n <= 1) return {f.monic()};
  const auto un = static_cast<std::size_t>(n);
  // Rows: t^{ip} mod f, minus the identity.
  std::vector<std::vector<std::uint64_t>> q(un, std::vector<std::uint64_t>(un, 0));
  ModPoly tp(p, {0, 1});
  {
    // t^p mod f by square-and-multiply
    ModPoly base = tp;
    ModPoly acc(p, {1});
    std::uint64_t e = p;
    while (e) {
      if (e & 1U) acc = divmod(acc * base, f).r;
      base = divmod(base * base, f).r;
      e >>= 1U;
    }
    tp = acc;
  }
  ModPoly cur(p, {1});
  for (std::size_t i = 0; i < un; ++i) {
    for (std::size_t j = 0; j < un; ++j) q[i][j] = cur.coeff(j);
    q[i][i] = (q[i][i] + p - 1) % p;
    cur = divmod(cur * tp, f).r;
  }
  auto basis = left_null_space(std::move(q), p);
  const std::size_t r = basis.size();
  std::vector<ModPoly> factors{f.monic()};
  if (r == 1) return factors;
  for (const auto& vec : basis) {
    ModPoly v(p, vec);
    if (v.degree() < 1) continue;
    for (std::size_t i = 0; i < factors.size() && factors.size() < r; ++i) {
      for (std::uint64_t s = 0; s < p && factors[i].degree() > 1; ++s) {
        ModPoly d = gcd(factors[i], v - ModPoly(p, {s}));
        if (d.degree() > 0 && d.degree() < factors[i].degree()) {
          ModPoly other = divmod(factors[i], d).q.monic();
          factors[i] = d;
          factors.push_back(std::move(other));
        }
      }
    }
    if (factors.size() == r) break;
  }
  if (factors.size() != r) throw VerificationError("Berlekamp split count mismatch");
  return factors;
}

}  // namespace entroscope::detail
