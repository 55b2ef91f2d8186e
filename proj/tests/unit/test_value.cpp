#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "entroscope/value.hpp"

using namespace entroscope;

namespace {

std::vector<EntropyValue> samples() {
  return {EntropyValue::zero(),       EntropyValue::finite(0.25, 1e-12), EntropyValue::finite(3.5, 0.0),
          EntropyValue::log_of(2),    EntropyValue::log_of(1000003),      EntropyValue::count(1),
          EntropyValue::count(7),     EntropyValue::infinity()};
}

}  // namespace

TEST(EntropyValue, Render) {
  EXPECT_EQ(EntropyValue::zero().render(), "0 (exact)");
  EXPECT_EQ(EntropyValue::log_of(3).render(), "log 3 (exact)");
  EXPECT_EQ(EntropyValue::count(2).render(), "2 (exact)");
  EXPECT_EQ(EntropyValue::finite(0.48121182505960344, 1e-12).render(), "0.4812118251");
  EXPECT_EQ(EntropyValue::infinity().render(), "inf");
  EXPECT_TRUE(EntropyValue::log_of(1).is_zero());
  EXPECT_TRUE(EntropyValue::count(0).is_zero());
}

TEST(EntropyValue, SumAndSup) {
  EntropyValue s = EntropyValue::log_of(2) + EntropyValue::log_of(3);
  EXPECT_EQ(s.render(), "log 6 (exact)");
  EXPECT_NEAR(s.value(), std::log(6.0), 1e-15);
  EXPECT_EQ((EntropyValue::count(2) + EntropyValue::count(3)).render(), "5 (exact)");

  std::vector<EntropyValue> v{EntropyValue::zero(), EntropyValue::finite(0.7, 1e-10)};
  EntropyValue sup = combine(v, CombineOp::Sup);
  EXPECT_DOUBLE_EQ(sup.value(), 0.7);
  EXPECT_DOUBLE_EQ(sup.err(), 1e-10);

  std::vector<EntropyValue> e;
  EXPECT_TRUE(combine(e, CombineOp::Sum).is_zero());
  EXPECT_TRUE(combine(e, CombineOp::Sup).is_zero());

  EntropyValue a = EntropyValue::finite(1.0, 1e-9), b = EntropyValue::finite(2.0, 2e-9);
  EntropyValue ab = a + b;
  EXPECT_DOUBLE_EQ(ab.value(), 3.0);
  EXPECT_NEAR(ab.err(), 3e-9, 1e-14);  // plus rounding slack
}

TEST(EntropyValue, InfinityAbsorbs) {
  for (const auto& v : samples()) {
    EXPECT_TRUE((v + EntropyValue::infinity()).is_infinite());
    EXPECT_TRUE((EntropyValue::infinity() + v).is_infinite());
    std::vector<EntropyValue> pair{v, EntropyValue::infinity()};
    EXPECT_TRUE(combine(pair, CombineOp::Sup).is_infinite());
  }
}

TEST(BinaryHull, ExhaustiveOverVariants) {
  for (const auto& v : samples()) {
    EntropyValue h = binary_hull(v);
    EXPECT_TRUE(h.is_zero() || h.is_infinite());
    EXPECT_EQ(h.is_zero(), v.is_zero());
    // idempotent
    EXPECT_EQ(binary_hull(h).kind(), h.kind());
    // order preserving and above v
    EXPECT_TRUE(approx_leq(v, h));
    for (const auto& w : samples())
      if (approx_leq(v, w)) EXPECT_TRUE(approx_leq(binary_hull(v), binary_hull(w)));
  }
}

TEST(EntropyValue, Tolerance) {
  EXPECT_TRUE(approx_equal(EntropyValue::finite(1.0, 1e-9), EntropyValue::finite(1.0 + 5e-10, 0.0)));
  EXPECT_FALSE(approx_equal(EntropyValue::finite(1.0, 1e-12), EntropyValue::finite(1.0 + 1e-9, 0.0)));
  EXPECT_TRUE(approx_equal(EntropyValue::log_of(2), EntropyValue::finite(std::log(2.0), 1e-12)));
  EXPECT_FALSE(approx_equal(EntropyValue::zero(), EntropyValue::finite(1e-3, 0.0)));
  EXPECT_TRUE(approx_equal(EntropyValue::infinity(), EntropyValue::infinity()));
  EXPECT_EQ(EntropyValue::log_of(2).scaled(3).render(), "log 8 (exact)");
  EXPECT_TRUE(EntropyValue::infinity().scaled(2).is_infinite());
}
