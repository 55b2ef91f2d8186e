#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "entroscope/entropy.hpp"
#include "entroscope/flow_json.hpp"

namespace entroscope {

enum class Axiom { A0, A1, A2Star, A3, A4Star, A5, AT, Sandwich };

const char* to_string(Axiom a);  // "A0", "A2*", "SANDWICH", ...
Axiom parse_axiom(const std::string& s);
// Comma-separated list, e.g. "AT,A4*". ParseError on unknown names.
std::vector<Axiom> parse_axiom_list(const std::string& s);
const std::vector<Axiom>& all_axioms();

// Seed of trial `trial` of stream `stream`: independent of evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

/// Deterministic draws on top of mt19937_64 (no std distributions, whose
/// output differs between standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next() { return gen_(); }
  long range(long lo, long hi) { return lo + static_cast<long>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool chance(unsigned num, unsigned den) { return gen_() % den < num; }

 private:
  std::mt19937_64 gen_;
};

// Random instances over the representable class (small ranks, degrees and
// coefficients so every backend stays fast).
IntPoly random_poly(Rng& rng, int min_deg, int max_deg, long max_coeff);
IntMatrix random_unimodular(Rng& rng, std::size_t n, IntMatrix* inverse);
// Z^a + sum Z/d_i with a random endomorphism, hidden by a unimodular change of basis.
FlowFG random_fg(Rng& rng, bool finite_only, std::size_t max_rank = 3);
// 1 or 2 parts; torsion_only restricts to torsion parts.
Flow random_flow(Rng& rng, bool torsion_only);
SubmoduleDesc random_invariant_submodule(Rng& rng, const Flow& flow);
// Conjugate by random unimodular matrices (parts without a matrix form are kept).
Flow random_conjugate(Rng& rng, const Flow& flow);

struct AxiomFailure {
  unsigned trial = 0;
  std::string detail;
  Json instance;
};

struct AxiomReport {
  Axiom axiom = Axiom::A0;
  unsigned passed = 0;
  unsigned failed = 0;
  std::vector<AxiomFailure> failures;
  std::string note;
};

struct VerifyReport {
  EntropyKind kind = EntropyKind::Ha;
  std::uint64_t seed = 0;
  unsigned trials = 0;
  std::vector<AxiomReport> axioms;

  bool ok() const;
};

VerifyReport verify_axioms(EntropyKind kind, const std::vector<Axiom>& axioms, unsigned trials, std::uint64_t seed);

Json to_json(const VerifyReport& r);

}  // namespace entroscope
