#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entroscope/flows.hpp"
#include "entroscope/value.hpp"

namespace entroscope {

enum class TrajectoryMode { Subgroup, Subset };
// Size measure of T_k: log-cardinality (tau = |T_k|) or torsion-free rank.
enum class TrajectoryInvariant { LogCard, Rank };

struct TrajectoryOptions {
  TrajectoryMode mode = TrajectoryMode::Subgroup;
  TrajectoryInvariant invariant = TrajectoryInvariant::LogCard;
  // Fixed number of steps; by default the engine runs until the ratio
  // certificate holds.
  std::optional<unsigned> steps;
  unsigned max_steps = 256;
  // Subset mode limits.
  unsigned max_subset_steps = 25;
  std::size_t max_ambient_rank = 3;
  std::size_t max_set_size = std::size_t{1} << 23;
};

/// tau[k] = |T_k| with T_k = F + phi F + ... + phi^{k-1} F (T_0 = {0}),
/// or rank(T_k) for the rank invariant.
struct TrajectoryReport {
  TrajectoryMode mode = TrajectoryMode::Subgroup;
  TrajectoryInvariant invariant = TrajectoryInvariant::LogCard;
  std::vector<Int> tau;
  bool stabilized = false;
  // Subgroup mode: log of the stable ratio tau_{k+1} / tau_k (the stable
  // increment for ranks). Subset mode: log(tau_n) / n.
  EntropyValue estimate;
  std::string method;
  // Consecutive equal ratios required by the certificate (subgroup mode).
  unsigned window = 0;

  Rational ratio(std::size_t k) const;  // tau[k] / tau[k-1], k >= 1
  // Columns n, tau, log_tau_over_n, ratio for n >= 1 (n, rank,
  // rank_over_n, increment for ranks).
  std::string csv() const;
};

// Ratio-window length used by the subgroup certificate for this flow.
unsigned default_window(const Flow& flow, const std::vector<Element>& generators);

TrajectoryReport trajectory(const Flow& flow, const std::vector<Element>& generators,
                            const TrajectoryOptions& options = {});

}  // namespace entroscope
