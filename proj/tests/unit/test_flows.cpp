#include <gtest/gtest.h>

#include "entroscope/entropy.hpp"
#include "entroscope/errors.hpp"
#include "entroscope/flow_json.hpp"
#include "entroscope/harness.hpp"
#include "entroscope/radicals.hpp"

using namespace entroscope;

TEST(CyclicFlow, CanonicalForms) {
  EXPECT_EQ(CyclicFlow(Int(3), IntPoly{4, 2}).poly(), IntPoly({2, 1}));  // 2t + 1 -> t + 2 mod 3
  EXPECT_EQ(CyclicFlow(Int(0), IntPoly{1, -2}).poly(), IntPoly({-1, 2}));
  EXPECT_EQ(CyclicFlow(Int(0), IntPoly{4, 6}).poly(), IntPoly({4, 6}));
  EXPECT_TRUE(CyclicFlow(Int(5), IntPoly{5}).is_bernoulli());
  EXPECT_TRUE(CyclicFlow(Int(1), IntPoly{}).is_trivial());
  EXPECT_THROW(CyclicFlow(Int(6), IntPoly{}), DomainError);
  EXPECT_THROW(CyclicFlow(Int(4), IntPoly{1, 2}), DomainError);
  EXPECT_EQ(CyclicFlow(Int(4), IntPoly{1, 3}).poly(), IntPoly({3, 1}));
  EXPECT_EQ(CyclicFlow(Int(3), IntPoly{}).describe(), "F_3[t]");
  EXPECT_EQ(CyclicFlow(Int(0), IntPoly{-1, 2}).describe(), "Z[t]/(2t - 1)");
}

TEST(Flow, CrtSplit) {
  Flow f = Flow::cyclic(Int(6), IntPoly{1, 1});
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(std::get<CyclicFlow>(f.part(0)).base(), 2);
  EXPECT_EQ(std::get<CyclicFlow>(f.part(1)).base(), 3);
}

TEST(FlowFG, RejectsNonEndomorphisms) {
  FgAbGroup z2 = FgAbGroup::cyclic(2);
  EXPECT_NO_THROW(FlowFG(z2, IntMatrix::from_rows({{Int(3)}})));
  FgAbGroup g(2, IntMatrix::from_columns({{Int(2), Int(0)}}, 2));  // Z/2 + Z
  EXPECT_THROW(FlowFG(g, IntMatrix::from_rows({{Int(1), Int(0)}, {Int(1), Int(1)}})), DomainError);
}

TEST(FlowFG, CompanionAndCharpoly) {
  FlowFG fib = FlowFG::companion(IntPoly{-1, -1, 1});
  EXPECT_EQ(fib.phi(), IntMatrix::from_rows({{Int(0), Int(1)}, {Int(1), Int(1)}}));
  EXPECT_EQ(fib.free_charpoly(), IntPoly({-1, -1, 1}));
  // companion(f) and Z[t]/(f) agree for every backend
  for (unsigned trial = 0; trial < 20; ++trial) {
    Rng rng(derive_seed(41, 0, trial));
    IntPoly f = random_poly(rng, 1, 4, 5);
    IntVector c = f.coeffs();
    c.back() = 1;
    IntPoly monic(c);
    Flow a(FlowFG::companion(monic)), b(CyclicFlow(Int(0), monic));
    for (auto k : {EntropyKind::Ha, EntropyKind::Ent, EntropyKind::Rank})
      EXPECT_TRUE(approx_equal(entropy(a, k), entropy(b, k))) << monic.to_string();
    for (auto r : {RadicalKind::O, RadicalKind::I, RadicalKind::Q, RadicalKind::A, RadicalKind::W}) {
      SubmoduleDesc ra = radical(a, r), rb = radical(b, r);
      EXPECT_EQ(is_zero(a, ra), is_zero(b, rb)) << monic.to_string() << " " << to_string(r);
      EXPECT_EQ(is_whole(a, ra), is_whole(b, rb)) << monic.to_string() << " " << to_string(r);
      EXPECT_TRUE(approx_equal(entropy(sub_quot(a, ra).first, EntropyKind::Ha), entropy(sub_quot(b, rb).first, EntropyKind::Ha)));
    }
  }
}

TEST(FlowJson, RoundTrip) {
  for (unsigned trial = 0; trial < 40; ++trial) {
    Rng rng(derive_seed(42, 0, trial));
    Flow f = random_flow(rng, false);
    Json j = serialize_flow(f);
    Flow g = parse_flow_text(j.dump());
    EXPECT_EQ(serialize_flow(g), j);
    EXPECT_EQ(describe(g), describe(f));
  }
}

TEST(FlowJson, SchemaErrors) {
  auto where = [](const std::string& text) {
    try {
      parse_flow_text(text);
    } catch (const ParseError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  EXPECT_EQ(where(R"({"type":"fg","rank":2,"relations":[],"matrix":[[1,0]]})"), "/matrix");
  EXPECT_EQ(where(R"({"type":"cyclic","base":3})"), "");
  EXPECT_EQ(where(R"({"type":"sum","parts":[{"type":"cyclic","base":-1,"poly":[]}]})"), "/parts/0/base");
  EXPECT_EQ(where(R"({"type":"bogus"})"), "/type");
  EXPECT_EQ(where(R"({"type":"fg","rank":1,"relations":[[2]],"matrix":[["x"]]})"), "/matrix/0/0");
  EXPECT_THROW(parse_flow_text("not json"), ParseError);
  Flow big = parse_flow_text(R"({"type":"cyclic","base":0,"poly":["123456789012345678901234567890",1]})");
  EXPECT_EQ(std::get<CyclicFlow>(big.part(0)).poly().coeff(0).get_str(), "123456789012345678901234567890");
}

TEST(SubQuot, CyclicAndFg) {
  Flow m(CyclicFlow(Int(0), IntPoly{-2, 1} * IntPoly{1, 1}));
  auto [sub, quot] = sub_quot(m, make_submodule(m, {{IntPoly{1, 1}, std::nullopt}}));
  EXPECT_EQ(describe(sub), "Z[t]/(t - 2)");
  EXPECT_EQ(describe(quot), "Z[t]/(t + 1)");
  EXPECT_THROW(sub_quot(m, make_submodule(m, {{IntPoly{1, 2}, std::nullopt}})), DomainError);

  FlowFG d(FgAbGroup(2), IntMatrix::from_rows({{Int(1), Int(0)}, {Int(0), Int(2)}}));
  Subgroup n = Subgroup::generated(d.group(), {{Int(1), Int(0)}});
  auto [s, q] = sub_quot(d, n);
  EXPECT_EQ(s.phi(), IntMatrix::from_rows({{Int(1)}}));
  EXPECT_EQ(q.free_charpoly(), IntPoly({-2, 1}));
  Subgroup bad = Subgroup::generated(d.group(), {{Int(1), Int(1)}});
  EXPECT_FALSE(is_invariant(d, bad));
  EXPECT_THROW(sub_quot(d, bad), DomainError);
}

TEST(PowerFlow, Shapes) {
  Flow b(CyclicFlow(Int(3), IntPoly{}));
  EXPECT_EQ(power_flow(b, 2).size(), 2u);
  Flow h(CyclicFlow(Int(0), IntPoly{-1, 2}));
  EXPECT_EQ(describe(power_flow(h, 2)), "Z[t]/(4t - 1)");
  FlowFG fib = FlowFG::companion(IntPoly{-1, -1, 1});
  EXPECT_EQ(power_flow(fib, 2).phi(), fib.phi() * fib.phi());
  EXPECT_THROW(power_flow(h, 0), DomainError);
}

TEST(MinPoly, PointMinimalPolynomial) {
  FlowFG d(FgAbGroup(2), IntMatrix::from_rows({{Int(1), Int(0)}, {Int(0), Int(2)}}));
  MinPoly m = min_poly_point(d, {Int(1), Int(1)});
  ASSERT_EQ(m.coeffs.size(), 3u);
  EXPECT_EQ(m.coeffs[0], 2);
  EXPECT_EQ(m.coeffs[1], -3);
  EXPECT_TRUE(m.integral);
  MinPoly e = min_poly_point(d, {Int(1), Int(0)});
  EXPECT_EQ(e.coeffs.size(), 2u);
}

TEST(CyclicSubflow, Annihilator) {
  Flow m(CyclicFlow(Int(0), IntPoly{-2, 1} * IntPoly{1, 1}));
  EXPECT_EQ(describe(cyclic_subflow(m, 0, {Int(1), Int(1)})), "Z[t]/(t - 2)");
  Flow b(CyclicFlow(Int(2), IntPoly{}));
  EXPECT_EQ(describe(cyclic_subflow(b, 0, {Int(0), Int(1)})), "F_2[t]");
}
