#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <complex>

#include "entroscope/errors.hpp"
#include "entroscope/harness.hpp"
#include "entroscope/mahler.hpp"

using namespace entroscope;

namespace {

// Reference values computed once with mpmath.polyroots at 40 digits.
constexpr double kLehmer = 0.16235761200773813943;
constexpr double kGolden = 0.48121182505960344750;
constexpr double kPisot = 0.28119957432296184651;      // t^3 - t - 1
constexpr double kNonMonic = 1.57982411372771313889;  // 3t^3 + t^2 - 5t + 2

// Quadratic formula oracle.
double quadratic_mahler(const IntPoly& f) {
  const double a = f.coeff(2).get_d(), b = f.coeff(1).get_d(), c = f.coeff(0).get_d();
  std::complex<double> d = std::sqrt(std::complex<double>(b * b - 4 * a * c));
  double m = std::log(std::abs(a));
  for (auto r : {(-b + d) / (2 * a), (-b - d) / (2 * a)}) m += std::log(std::max(1.0, std::abs(r)));
  return m;
}

}  // namespace

TEST(Mahler, ReferenceValues) {
  IntPoly lehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
  EntropyValue v = mahler(lehmer);
  ASSERT_TRUE(v.is_finite());
  EXPECT_NEAR(v.value(), kLehmer, 1e-9);
  EXPECT_LE(v.err(), 1e-9);
  EXPECT_NEAR(mahler(IntPoly{-1, -1, 1}).value(), kGolden, 1e-9);
  EXPECT_NEAR(mahler(IntPoly{-1, -1, 0, 1}).value(), kPisot, 1e-9);
  EXPECT_NEAR(mahler(IntPoly{2, -5, 1, 3}).value(), kNonMonic, 1e-9);
}

TEST(Mahler, ExactCases) {
  EXPECT_EQ(mahler(IntPoly{-1, 2}).render(), "log 2 (exact)");
  EXPECT_EQ(mahler(IntPoly{-2, 1}).render(), "log 2 (exact)");
  EXPECT_EQ(mahler(IntPoly{3}).render(), "log 3 (exact)");
  EXPECT_TRUE(mahler(IntPoly{1, 0, 1}).is_zero());
  EXPECT_TRUE(mahler(IntPoly{0, 0, 1} * IntPoly{1, 1, 1}).is_zero());
  EXPECT_EQ(mahler(IntPoly{-1, 2} * IntPoly{3, 1}).render(), "log 6 (exact)");
  EXPECT_THROW(mahler(IntPoly()), DomainError);
}

TEST(Mahler, QuadraticOracle) {
  for (unsigned trial = 0; trial < 100; ++trial) {
    Rng rng(derive_seed(21, 0, trial));
    IntPoly f = random_poly(rng, 2, 2, 9);
    if (f.coeff(0) == 0) continue;
    EntropyValue v = mahler(f);
    const double expect = quadratic_mahler(f);
    const double got = v.is_zero() ? 0.0 : v.value();
    EXPECT_NEAR(got, expect, 1e-8) << f.to_string();
  }
}

TEST(Mahler, Multiplicative) {
  for (unsigned trial = 0; trial < 50; ++trial) {
    Rng rng(derive_seed(22, 0, trial));
    IntPoly f = random_poly(rng, 1, 5, 9), g = random_poly(rng, 1, 5, 9);
    EntropyValue sum = mahler(f, 5e-10) + mahler(g, 5e-10);
    EntropyValue prod = mahler(f * g, 5e-10);
    EXPECT_TRUE(approx_equal(prod, sum)) << f.to_string() << " * " << g.to_string();
  }
}

TEST(Mahler, RepeatedFactorsAndRoots) {
  IntPoly g{-1, -1, 0, 1};
  EXPECT_NEAR(mahler(g * g * g).value(), 3 * kPisot, 1e-9);
  auto discs = isolate_roots(IntPoly{-2, 0, 1}, 1e-12);
  ASSERT_EQ(discs.size(), 2u);
  for (const auto& d : discs) {
    EXPECT_NEAR(std::abs(d.re), std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(d.im, 0.0, 1e-10);
  }
}

TEST(Mahler, LehmerIsFast) {
  auto t0 = std::chrono::steady_clock::now();
  mahler(IntPoly{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1}, 1e-12);
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 1.0);
}
