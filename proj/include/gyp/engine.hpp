#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gyp/extended_real.hpp"
#include "gyp/measure.hpp"
#include "gyp/partition.hpp"
#include "gyp/quadrature.hpp"

namespace gyp {

enum class SplitStrategy { Midpoint, PhiLevel, MassMedian };

struct RefinementConfig {
  int max_cells = 4096;
  /// Stop when (oracle - current) / max(|oracle|, 1) < rel_gap_tol.
  double rel_gap_tol = 1e-4;
  /// Stop when the best single split gains less than this.
  double min_gain = 1e-14;
  SplitStrategy strategy = SplitStrategy::PhiLevel;
  /// Candidates evaluated per cell before ranking.
  int candidate_count = 3;
  QuadratureConfig quad;
};

struct TraceStep {
  int step = 0;
  int cells = 1;
  ExtendedReal value;
  ExtendedReal oracle;
  double gap = 0.0;
};

/// Monotone sequence of certified lower bounds, one row per refinement step.
struct RefinementTrace {
  std::vector<TraceStep> steps;
  Partition final_partition;
};

struct CertifiedEstimate {
  ExtendedReal lower_bound;
  ExtendedReal oracle;
  double gap = 0.0;
  bool converged = false;
  RefinementTrace trace;
  /// Present exactly when P is not absolutely continuous w.r.t. R.
  std::optional<Cell> witness;
};

struct SplitCandidate {
  double gain = 0.0;
  SplitSpec split;
};

/// Candidate splits of cell k, ranked by functional gain (descending), ties
/// broken by smallest split coordinate. Truncated to cfg.candidate_count.
/// Gains are the increase of the partition functional (in the family's own
/// value space) from applying that split alone to pi.
/// Throws NoValidSplit when the cell cannot be split.
std::vector<SplitCandidate> propose_splits(const ProbabilityMeasure& P,
                                           const ProbabilityMeasure& R,
                                           const Partition& pi, std::size_t k,
                                           const OrderParam& order,
                                           const RefinementConfig& cfg);

/// Greedy gain-maximizing partition refinement from the trivial partition.
/// Short-circuits to +inf with a witness when P is not absolutely continuous
/// w.r.t. R. Order must be KL, Renyi alpha > 1 or Tsallis q > 1; for Tsallis
/// the engine maximizes the Renyi functional and transforms at the end.
CertifiedEstimate supremum_estimate(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R,
                                    const OrderParam& order,
                                    const RefinementConfig& cfg = {});

/// One estimate per order; every order must be > 1.
std::vector<CertifiedEstimate> run_alpha_sweep(const ProbabilityMeasure& P,
                                               const ProbabilityMeasure& R,
                                               const std::vector<double>& alphas,
                                               const RefinementConfig& cfg = {});

/// CSV rendering: "step,cells,partition_value,oracle_value,gap",
/// 17 significant digits, +inf as "inf".
std::string trace_to_csv(const RefinementTrace& trace);

}  // namespace gyp
