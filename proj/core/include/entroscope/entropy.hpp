#pragma once

#include <string>
#include <vector>

#include "entroscope/flows.hpp"
#include "entroscope/trajectory.hpp"
#include "entroscope/value.hpp"

namespace entroscope {

// ha: algebraic entropy; ent: log-cardinality entropy of the torsion part;
// rank: the entropy built on the torsion-free rank.
enum class EntropyKind { Ha, Ent, Rank };
enum class Method { Auto, ClosedForm, Trajectory };

const char* to_string(EntropyKind k);
const char* to_string(Method m);
// "ha", "ent", "rank" (also "ent_rank"); ParseError otherwise.
EntropyKind parse_entropy_kind(const std::string& s);
Method parse_method(const std::string& s);

// Every part is torsion as an abelian group.
bool is_torsion_flow(const Flow& flow);

// precision is the absolute error budget for the whole flow. Trajectory
// method: ha needs a torsion flow; ent runs on torsion generators; rank on
// module generators.
EntropyValue entropy(const Flow& flow, EntropyKind kind, Method method = Method::Auto, double precision = 1e-9);

// Module generators (one element per generator) and generators of the
// torsion part, as used by the trajectory method.
std::vector<Element> module_generators(const Flow& flow);
std::vector<Element> torsion_generators(const Flow& flow);

// The radical P_h without verification: the quasi-periodic radical for ha,
// the content-generated submodule for ent, the W radical for rank.
SubmoduleDesc pinsker_radical(const Flow& flow, EntropyKind kind);

// pinsker_radical followed by two checks: h(P) is Zero, and h is positive
// on the cyclic subflows of up to 32 small nonzero elements of M/P.
// VerificationError if either fails.
SubmoduleDesc pinsker(const Flow& flow, EntropyKind kind);

enum class TorsionClass { Torsion, TorsionFree, Mixed };
const char* to_string(TorsionClass c);

struct Classification {
  TorsionClass cls = TorsionClass::Mixed;
  SubmoduleDesc pinsker;
  Flow sub;   // P
  Flow quot;  // M / P
};
Classification classify(const Flow& flow, EntropyKind kind);

}  // namespace entroscope
