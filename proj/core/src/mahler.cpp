// Certified Mahler measure. Roots of each irreducible, non-cyclotomic factor
// are approximated by Aberth-Ehrlich iteration in MPFR and enclosed in
// inclusion discs of radius n |p(z_i)| / (|lc| prod |z_i - z_j|); pairwise
// disjoint discs each hold exactly one root.

#include "entroscope/mahler.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

#include "entroscope/errors.hpp"

namespace entroscope {

namespace {

constexpr mpfr_prec_t kStartPrec = 128;
constexpr int kMaxDoublings = 64;
constexpr mpfr_prec_t kPrecCap = mpfr_prec_t{1} << 17;

class Real {
 public:
  explicit Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(mpfr_prec_t prec, double d) : Real(prec) { mpfr_set_d(v_, d, MPFR_RNDN); }
  Real(mpfr_prec_t prec, const Int& z) : Real(prec) { mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN); }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Re-round into a new precision.
  Real with_prec(mpfr_prec_t prec) const {
    Real r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(a.prec());
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
Real rlog(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.get(), a.get(), MPFR_RNDN);
  return r;
}
Real rmax(const Real& a, const Real& b) { return a < b ? b : a; }

struct Cx {
  Real re, im;
  explicit Cx(mpfr_prec_t prec) : re(prec), im(prec) {}
  Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return re.prec(); }
};

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator/(const Cx& a, const Cx& b) {
  Real den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
Real cabs(const Cx& a) {
  Real r(a.prec());
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), MPFR_RNDN);
  return r;
}
bool is_zero(const Cx& a) { return mpfr_zero_p(a.re.get()) && mpfr_zero_p(a.im.get()); }

// Simultaneous root refinement for one squarefree polynomial.
class Aberth {
 public:
  explicit Aberth(const IntPoly& f) : f_(f), n_(f.degree()) {}

  // Refine at `prec` bits; returns false when the iteration stalls.
  bool refine(mpfr_prec_t prec) {
    load(prec);
    const Real tol = Real(prec, std::ldexp(1.0, -static_cast<int>(std::min<mpfr_prec_t>(prec * 9 / 10, 1000))));
    const Real one(prec, 1.0);
    const int cap = 200 + 20 * n_;
    for (int it = 0; it < cap; ++it) {
      Real worst(prec);
      for (int i = 0; i < n_; ++i) {
        Cx p(prec), dp(prec);
        horner(z_[idx(i)], p, dp);
        if (is_zero(p)) continue;
        Cx ratio = p / dp;
        Cx s(prec);
        for (int j = 0; j < n_; ++j) {
          if (j == i) continue;
          Cx diff = z_[idx(i)] - z_[idx(j)];
          if (is_zero(diff)) diff.re = Real(prec, 1e-30);
          s = s + Cx(one, Real(prec)) / diff;
        }
        Cx corr = ratio / (Cx(one, Real(prec)) - ratio * s);
        z_[idx(i)] = z_[idx(i)] - corr;
        Real rel = cabs(corr) / rmax(one, cabs(z_[idx(i)]));
        worst = rmax(worst, rel);
      }
      if (worst < tol) return true;
    }
    return false;
  }

  // Inclusion radii, or empty if the discs are not pairwise disjoint.
  std::vector<Real> radii(mpfr_prec_t prec) const {
    std::vector<Real> r;
    const Real lc = cabs(Cx(Real(prec, f_.lead()), Real(prec)));
    // Horner rounding: at most (2n + 2) u sum |a_k| |z|^k.
    Real u(prec, 1.0);
    mpfr_mul_2si(u.get(), u.get(), -static_cast<long>(prec) + 1, MPFR_RNDN);
    const Real margin(prec, 1.001);
    for (int i = 0; i < n_; ++i) {
      Cx p(prec), dp(prec);
      horner(z_[idx(i)], p, dp);
      Real az = cabs(z_[idx(i)]);
      Real absum(prec);
      for (int k = n_; k >= 0; --k) {
        Real ak(prec, abs_int(f_.coeff(static_cast<std::size_t>(k))));
        absum = absum * az + ak;
      }
      Real num = cabs(p) + Real(prec, 2.0 * n_ + 2) * u * absum;
      Real den = lc;
      for (int j = 0; j < n_; ++j)
        if (j != i) den = den * cabs(z_[idx(i)] - z_[idx(j)]);
      if (mpfr_zero_p(den.get())) return {};
      r.push_back(Real(prec, static_cast<double>(n_)) * num / den * margin);
    }
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j)
        if (!(r[idx(i)] + r[idx(j)] < cabs(z_[idx(i)] - z_[idx(j)]))) return {};
    return r;
  }

  const Cx& root(int i) const { return z_[idx(i)]; }
  int degree() const { return n_; }

 private:
  static std::size_t idx(int i) { return static_cast<std::size_t>(i); }

  void load(mpfr_prec_t prec) {
    coeffs_.clear();
    for (const auto& c : f_.coeffs()) coeffs_.emplace_back(prec, c);
    if (z_.empty()) {
      // Start on a circle sized by the Fujiwara bound, at a skewed angle.
      double bound = 0;
      const double lc = std::fabs(mpz_get_d(f_.lead().get_mpz_t()));
      for (int k = 0; k < n_; ++k) {
        double ak = std::fabs(mpz_get_d(f_.coeff(idx(k)).get_mpz_t()));
        if (ak == 0) continue;
        bound = std::max(bound, std::pow(ak / lc, 1.0 / (n_ - k)));
      }
      const double radius = std::max(bound, 0.5);
      for (int k = 0; k < n_; ++k) {
        double ang = 2 * M_PI * k / n_ + 0.7;
        z_.emplace_back(Real(prec, radius * std::cos(ang)), Real(prec, radius * std::sin(ang)));
      }
    } else {
      for (auto& z : z_) z = Cx(z.re.with_prec(prec), z.im.with_prec(prec));
    }
  }

  void horner(const Cx& x, Cx& p, Cx& dp) const {
    const mpfr_prec_t prec = x.prec();
    p = Cx(coeffs_.back(), Real(prec));
    dp = Cx(prec);
    for (int k = n_ - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + Cx(coeffs_[idx(k)], Real(prec));
    }
  }

  IntPoly f_;
  int n_;
  std::vector<Real> coeffs_;
  std::vector<Cx> z_;
};

struct Estimate {
  double value;
  double err;
};

// m(g) for an irreducible non-cyclotomic g of degree >= 2.
Estimate measure_irreducible(const IntPoly& g, double budget) {
  Aberth engine(g);
  mpfr_prec_t prec = kStartPrec;
  for (int attempt = 0; attempt < kMaxDoublings && prec <= kPrecCap; ++attempt, prec *= 2) {
    if (!engine.refine(prec)) continue;
    std::vector<Real> r = engine.radii(prec);
    if (r.empty()) continue;
    const Real one(prec, 1.0);
    Real sum = rlog(cabs(Cx(Real(prec, g.lead()), Real(prec))));
    Real half_width(prec);
    for (int i = 0; i < engine.degree(); ++i) {
      Real az = cabs(engine.root(i));
      Real lo = rlog(rmax(one, az - r[static_cast<std::size_t>(i)]));
      Real hi = rlog(rmax(one, az + r[static_cast<std::size_t>(i)]));
      sum = sum + (lo + hi) * Real(prec, 0.5);
      half_width = half_width + (hi - lo) * Real(prec, 0.5);
    }
    double value = sum.to_double();
    double err = half_width.to_double() + 4e-16 * std::max(1.0, std::fabs(value));
    if (err <= budget) return {value, err};
  }
  throw NumericalError("Mahler root refinement did not certify for " + g.to_string());
}

}  // namespace

EntropyValue mahler(const IntPoly& p, double abs_err) {
  if (p.is_zero()) throw DomainError("Mahler measure of the zero polynomial");
  if (!(abs_err > 0)) throw DomainError("abs_err must be positive");
  Factorization fac = factor(p);
  Int exact = fac.content;
  unsigned weight = 0;
  std::vector<const Factor*> hard;
  for (const auto& f : fac.factors) {
    const IntPoly& g = f.poly;
    if (g == IntPoly::t() || is_cyclotomic(g)) continue;
    if (g.degree() == 1) {
      Int m = std::max(abs_int(g.coeff(0)), abs_int(g.coeff(1)));
      Int mp;
      mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), f.multiplicity);
      exact *= mp;
      continue;
    }
    hard.push_back(&f);
    weight += f.multiplicity;
  }
  EntropyValue out = EntropyValue::log_of(exact);
  if (hard.empty()) return out;
  double value = 0;
  double err = 0;
  const double budget = 0.5 * abs_err / weight;
  for (const Factor* f : hard) {
    Estimate e = measure_irreducible(f->poly, budget);
    value += f->multiplicity * e.value;
    err += f->multiplicity * e.err;
  }
  return out + EntropyValue::finite(value, err);
}

std::vector<RootDisc> isolate_roots(const IntPoly& squarefree, double max_radius) {
  if (squarefree.degree() < 1) throw DomainError("isolate_roots needs degree >= 1");
  if (squarefree.degree() == 1) {
    Rational r(-squarefree.coeff(0), squarefree.coeff(1));
    r.canonicalize();
    return {RootDisc{r.get_d(), 0.0, 0.0}};
  }
  Aberth engine(squarefree);
  mpfr_prec_t prec = kStartPrec;
  for (int attempt = 0; attempt < kMaxDoublings && prec <= kPrecCap; ++attempt, prec *= 2) {
    if (!engine.refine(prec)) continue;
    std::vector<Real> r = engine.radii(prec);
    if (r.empty()) continue;
    std::vector<RootDisc> out;
    bool ok = true;
    for (int i = 0; i < engine.degree(); ++i) {
      double rad = r[static_cast<std::size_t>(i)].to_double();
      ok = ok && rad <= max_radius;
      out.push_back({engine.root(i).re.to_double(), engine.root(i).im.to_double(), rad});
    }
    if (ok) return out;
  }
  throw NumericalError("root isolation did not certify for " + squarefree.to_string());
}

}  // namespace entroscope
