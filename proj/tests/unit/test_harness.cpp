#include <gtest/gtest.h>

#include "entroscope/errors.hpp"
#include "entroscope/harness.hpp"

using namespace entroscope;

TEST(Harness, AxiomNames) {
  EXPECT_EQ(parse_axiom_list("AT,A4*"), (std::vector<Axiom>{Axiom::AT, Axiom::A4Star}));
  EXPECT_EQ(parse_axiom("A2"), Axiom::A2Star);
  EXPECT_EQ(parse_axiom("SANDWICH"), Axiom::Sandwich);
  EXPECT_THROW(parse_axiom_list("A0,B7"), ParseError);
  for (Axiom a : all_axioms()) EXPECT_EQ(parse_axiom(to_string(a)), a);
  EXPECT_EQ(all_axioms().size(), 8u);
}

TEST(Harness, SeedsAreIndependentOfOrder) {
  EXPECT_EQ(derive_seed(7, 2, 3), derive_seed(7, 2, 3));
  EXPECT_NE(derive_seed(7, 2, 3), derive_seed(7, 3, 2));
  EXPECT_NE(derive_seed(7, 2, 3), derive_seed(8, 2, 3));
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) {
    const long x = a.range(-3, 9);
    EXPECT_EQ(x, b.range(-3, 9));
    EXPECT_GE(x, -3);
    EXPECT_LE(x, 9);
  }
}

TEST(Harness, RandomInstancesAreValid) {
  for (unsigned trial = 0; trial < 50; ++trial) {
    Rng rng(derive_seed(71, 0, trial));
    Flow f = random_flow(rng, trial % 2 == 0);
    if (trial % 2 == 0) EXPECT_TRUE(is_torsion_flow(f));
    SubmoduleDesc n = random_invariant_submodule(rng, f);
    EXPECT_NO_THROW(sub_quot(f, n)) << describe(f);
    Flow g = random_conjugate(rng, f);
    for (auto kind : {EntropyKind::Ha, EntropyKind::Ent, EntropyKind::Rank})
      EXPECT_TRUE(approx_equal(entropy(g, kind), entropy(f, kind))) << describe(f);
    IntMatrix inv;
    IntMatrix u = random_unimodular(rng, 3, &inv);
    EXPECT_EQ(u * inv, IntMatrix::identity(3));
  }
}

TEST(Harness, DeterministicReports) {
  for (auto kind : {EntropyKind::Ha, EntropyKind::Ent, EntropyKind::Rank}) {
    VerifyReport a = verify_axioms(kind, all_axioms(), 15, 3);
    VerifyReport b = verify_axioms(kind, all_axioms(), 15, 3);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
    EXPECT_TRUE(a.ok()) << to_json(a).dump(2);
    for (const auto& r : a.axioms) EXPECT_EQ(r.passed + r.failed, 15u);
  }
}
