#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "entroscope/entropy.hpp"
#include "entroscope/errors.hpp"
#include "entroscope/harness.hpp"
#include "entroscope/mahler.hpp"
#include "entroscope/radicals.hpp"
#include "support/brute.hpp"

using namespace entroscope;

namespace {

Flow bernoulli(long p) { return Flow(CyclicFlow(Int(p), IntPoly{})); }

}  // namespace

TEST(Entropy, ClosedFormExamples) {
  for (long p : {2, 3, 5, 7}) {
    EXPECT_EQ(entropy(bernoulli(p), EntropyKind::Ent).render(), "log " + std::to_string(p) + " (exact)");
    EXPECT_EQ(entropy(bernoulli(p), EntropyKind::Ha).render(), "log " + std::to_string(p) + " (exact)");
    EXPECT_TRUE(entropy(bernoulli(p), EntropyKind::Rank).is_zero());
  }
  Flow fib(FlowFG::companion(IntPoly{-1, -1, 1}));
  EXPECT_NEAR(entropy(fib, EntropyKind::Ha).value(), std::log((1 + std::sqrt(5.0)) / 2), 1e-9);
  EXPECT_TRUE(entropy(fib, EntropyKind::Ent).is_zero());
  EXPECT_TRUE(entropy(fib, EntropyKind::Rank).is_zero());

  Flow half(CyclicFlow(Int(0), IntPoly{-1, 2}));
  EXPECT_EQ(entropy(half, EntropyKind::Ha).render(), "log 2 (exact)");
  EXPECT_TRUE(entropy(half, EntropyKind::Ent).is_zero());

  Flow bz(CyclicFlow(Int(0), IntPoly{}));
  EXPECT_TRUE(entropy(bz, EntropyKind::Ha).is_infinite());
  EXPECT_TRUE(entropy(bz, EntropyKind::Ent).is_zero());
  EXPECT_EQ(entropy(bz, EntropyKind::Rank).render(), "1 (exact)");
  EXPECT_EQ(entropy(bz + bz, EntropyKind::Rank).render(), "2 (exact)");

  Flow c(CyclicFlow(Int(0), IntPoly{4, 6}));  // 6t + 4, content 2
  EXPECT_EQ(entropy(c, EntropyKind::Ent).render(), "log 2 (exact)");
  EXPECT_EQ(entropy(c, EntropyKind::Ha).render(), "log 6 (exact)");

  EXPECT_TRUE(entropy(bernoulli(2) + fib, EntropyKind::Ha).is_finite());
  EXPECT_THROW(parse_entropy_kind("bogus"), ParseError);
  EXPECT_EQ(parse_entropy_kind("ent_rank"), EntropyKind::Rank);
}

TEST(Entropy, RankVanishesOnTorsionFlows) {
  for (unsigned trial = 0; trial < 50; ++trial) {
    Rng rng(derive_seed(61, 0, trial));
    Flow f = random_flow(rng, true);
    ASSERT_TRUE(is_torsion_flow(f));
    EXPECT_TRUE(entropy(f, EntropyKind::Rank).is_zero()) << describe(f);
  }
}

TEST(Entropy, TrajectoryAgreesWithClosedForm) {
  for (unsigned trial = 0; trial < 40; ++trial) {
    Rng rng(derive_seed(62, 0, trial));
    Flow f = random_flow(rng, true);
    for (auto k : {EntropyKind::Ha, EntropyKind::Ent}) {
      EntropyValue closed = entropy(f, k, Method::ClosedForm);
      EntropyValue traj = entropy(f, k, Method::Trajectory);
      EXPECT_TRUE(approx_equal(closed, traj)) << describe(f) << " " << to_string(k) << ": " << closed.render()
                                              << " vs " << traj.render();
    }
  }
  Flow bz(CyclicFlow(Int(0), IntPoly{}));
  EXPECT_EQ(entropy(bz, EntropyKind::Rank, Method::Trajectory).render(), "1 (exact)");
  EXPECT_EQ(entropy(Flow(CyclicFlow(Int(0), IntPoly{4, 6})), EntropyKind::Ent, Method::Trajectory).render(),
            "log 2 (exact)");
}

TEST(Trajectory, TauMatchesBruteForce) {
  for (unsigned trial = 0; trial < 30; ++trial) {
    Rng rng(derive_seed(63, 0, trial));
    FlowFG f = random_fg(rng, true);
    const FgAbGroup& g = f.group();
    std::vector<Element> gens;
    IntVector x(g.ambient_rank());
    for (auto& v : x) v = rng.range(-3, 3);
    gens.push_back({x});
    TrajectoryOptions opt;
    opt.steps = 6;
    TrajectoryReport rep = trajectory(Flow(f), gens, opt);
    ASSERT_EQ(rep.tau.size(), 7u);
    std::vector<IntVector> orbit;
    IntVector y = x;
    for (std::size_t k = 1; k <= 6; ++k) {
      orbit.push_back(y);
      y = f.phi() * y;
      EXPECT_EQ(rep.tau[k], Int(static_cast<unsigned long>(brute::subgroup_size(g, orbit)))) << k;
    }
  }
}

TEST(Trajectory, SubsetModeOracle) {
  // x2 on Z with F = {0, 1}: T_n = {0, ..., 2^n - 1}
  Flow dbl(FlowFG(FgAbGroup(1), IntMatrix::from_rows({{Int(2)}})));
  TrajectoryOptions opt;
  opt.mode = TrajectoryMode::Subset;
  opt.steps = 12;
  auto rep = trajectory(dbl, {{{Int(0)}}, {{Int(1)}}}, opt);
  EXPECT_EQ(rep.tau.back(), 4096);
  EXPECT_EQ(rep.estimate.render(), "log 2 (exact)");

  // Fibonacci: direct sumset enumeration
  FlowFG fib = FlowFG::companion(IntPoly{-1, -1, 1});
  std::vector<Element> f{{{Int(0), Int(0)}}, {{Int(1), Int(0)}}};
  opt.steps = 10;
  rep = trajectory(Flow(fib), f, opt);
  std::set<IntVector> t{IntVector{Int(0), Int(0)}};
  for (std::size_t n = 1; n <= 10; ++n) {
    std::set<IntVector> next;
    for (const auto& y : t) {
      IntVector py = n == 1 ? y : fib.phi() * y;
      for (const auto& e : f) next.insert({py[0] + e[0][0], py[1] + e[0][1]});
    }
    t = std::move(next);
    EXPECT_EQ(rep.tau[n], Int(static_cast<unsigned long>(t.size()))) << n;
  }
  opt.steps = 40;
  EXPECT_THROW(trajectory(dbl, {{{Int(1)}}}, opt), ResourceError);
}

TEST(Trajectory, SubgroupCertificates) {
  TrajectoryOptions opt;
  auto rep = trajectory(bernoulli(3), {{{Int(1)}}}, opt);
  EXPECT_EQ(rep.estimate.render(), "log 3 (exact)");
  for (std::size_t k = 1; k < rep.tau.size(); ++k) EXPECT_EQ(rep.ratio(k), 3);
  Flow fib(FlowFG::companion(IntPoly{-1, -1, 1}));
  EXPECT_THROW(trajectory(fib, module_generators(fib), opt), DomainError);
  std::string csv = rep.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,tau,log_tau_over_n,ratio");
}

TEST(Pinsker, RadicalsAndClassification) {
  Flow half(CyclicFlow(Int(0), IntPoly{-1, 2}));
  EXPECT_EQ(classify(half, EntropyKind::Ha).cls, TorsionClass::TorsionFree);
  EXPECT_EQ(classify(half, EntropyKind::Rank).cls, TorsionClass::Torsion);
  EXPECT_EQ(classify(bernoulli(2), EntropyKind::Ent).cls, TorsionClass::TorsionFree);
  Flow fin(CyclicFlow(Int(3), IntPoly{1, 1, 1}));
  EXPECT_EQ(classify(fin, EntropyKind::Ent).cls, TorsionClass::Torsion);

  FlowFG d(FgAbGroup(2), IntMatrix::from_rows({{Int(1), Int(0)}, {Int(0), Int(2)}}));
  Classification c = classify(Flow(d), EntropyKind::Ha);
  EXPECT_EQ(c.cls, TorsionClass::Mixed);
  EXPECT_EQ(*c.pinsker.parts[0].subgroup, Subgroup::generated(d.group(), {{Int(1), Int(0)}}));
  EXPECT_TRUE(entropy(c.sub, EntropyKind::Ha).is_zero());
  EXPECT_EQ(entropy(c.quot, EntropyKind::Ha).render(), "log 2 (exact)");

  // ha: the quasi-periodic radical; rank: the W radical
  for (unsigned trial = 0; trial < 30; ++trial) {
    Rng rng(derive_seed(64, 0, trial));
    Flow m = random_flow(rng, false);
    EXPECT_EQ(pinsker(m, EntropyKind::Ha), radical(m, RadicalKind::Q)) << describe(m);
    EXPECT_EQ(pinsker(m, EntropyKind::Rank), radical(m, RadicalKind::W)) << describe(m);
  }
}
