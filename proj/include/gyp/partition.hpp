#pragma once

#include <vector>

#include "gyp/extended_real.hpp"
#include "gyp/measure.hpp"
#include "gyp/quadrature.hpp"

namespace gyp {

/// Finite measurable partition: ordered disjoint cells covering the support.
/// Immutable value; splits and refinements return new partitions.
struct Partition {
  std::vector<Cell> cells;

  std::size_t size() const { return cells.size(); }
  static Partition trivial(const Cell& support) { return Partition{{support}}; }
  /// Continuous partition of the support cut at the given interior points.
  static Partition from_breakpoints(const std::vector<Interval>& support,
                                    std::vector<double> breakpoints);
};

/// Per-cell masses (P(E_k), R(E_k)).
struct PartitionStats {
  std::vector<double> p_masses;
  std::vector<double> r_masses;
};

/// Exact cell masses; verifies that the cells tile the support (both mass
/// vectors sum to 1 within 1e-9). Throws InvalidPartition otherwise.
PartitionStats partition_stats(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                               const Partition& pi);

/// sum_k P_k ln(P_k / R_k); 0-mass cells contribute 0, and a cell with
/// P_k > 0 = R_k yields +inf.
ExtendedReal partition_kl(const PartitionStats& stats);

/// (1/(alpha-1)) ln sum_k P_k^alpha / R_k^(alpha-1) for alpha > 1.
/// Throws OrderOutOfRange for alpha <= 1 (no certified functional there).
ExtendedReal partition_renyi(const PartitionStats& stats, double alpha);

/// Monotone transform of the Renyi functional at the same order, q > 1.
ExtendedReal partition_tsallis(const PartitionStats& stats, double q);

/// How to split one cell: an interior point (continuous) or a proper
/// nonempty atom subset (discrete).
struct SplitSpec {
  double point = 0.0;
  std::vector<std::size_t> atoms;
  bool is_discrete() const { return !atoms.empty(); }
};

/// New partition with cell k replaced by the two halves of the split.
/// Throws InvalidSplit on boundary points / improper subsets.
Partition split_cell(const Partition& pi, std::size_t k, const SplitSpec& split);

/// True iff every cell of fine lies inside exactly one cell of coarse.
bool is_refinement(const Partition& fine, const Partition& coarse);

/// All nonempty pairwise intersections, ordered by (cell of a, cell of b).
Partition common_refinement(const Partition& a, const Partition& b);

/// Lemma check for one cell: returns (P(E)^alpha / R(E)^(alpha-1), int_E phi^alpha dR).
/// Both are 0 when R(E) = 0 (P << R assumed).
std::pair<double, double> holder_cell_check(const ProbabilityMeasure& P,
                                            const ProbabilityMeasure& R,
                                            const Cell& cell, double alpha,
                                            QuadratureConfig cfg = {});

}  // namespace gyp
