#include "gyp/partition.hpp"

#include <algorithm>
#include <cmath>

namespace gyp {

namespace {
constexpr double kGeomEps = 1e-12;
}

Partition Partition::from_breakpoints(const std::vector<Interval>& support,
                                      std::vector<double> breakpoints) {
  std::sort(breakpoints.begin(), breakpoints.end());
  std::vector<Cell> cells;
  // Walk the support left to right; each breakpoint must be interior.
  std::vector<double> cuts;
  for (const Interval& s : support) {
    cuts.push_back(s.lo);
    for (double b : breakpoints)
      if (b > s.lo + kGeomEps && b < s.hi - kGeomEps) cuts.push_back(b);
    cuts.push_back(s.hi);
  }
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] > cuts[i])
      cells.push_back(Cell::of_intervals({{cuts[i], cuts[i + 1]}}));
  }
  return Partition{std::move(cells)};
}

PartitionStats partition_stats(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                               const Partition& pi) {
  if (pi.cells.empty()) throw InvalidPartition("partition has no cells");
  PartitionStats st;
  st.p_masses.reserve(pi.size());
  st.r_masses.reserve(pi.size());
  for (const Cell& c : pi.cells) {
    // antiderivative cancellation can leave a mass a few ulps below zero,
    // which would poison the log/power terms downstream
    st.p_masses.push_back(std::max(cell_mass(P, c), 0.0));
    st.r_masses.push_back(std::max(cell_mass(R, c), 0.0));
  }
  double pt = compensated_sum(st.p_masses), rt = compensated_sum(st.r_masses);
  if (std::abs(pt - 1.0) > 1e-9 || std::abs(rt - 1.0) > 1e-9)
    throw InvalidPartition("cells do not tile the support (P-mass " +
                           std::to_string(pt) + ", R-mass " + std::to_string(rt) + ")");
  return st;
}

ExtendedReal partition_kl(const PartitionStats& stats) {
  std::vector<double> terms;
  for (std::size_t k = 0; k < stats.p_masses.size(); ++k) {
    double p = stats.p_masses[k], r = stats.r_masses[k];
    if (p == 0.0) continue;
    if (r == 0.0) return ExtendedReal::infinity();
    terms.push_back(p * std::log(p / r));
  }
  return ExtendedReal(compensated_sum(terms));
}

ExtendedReal partition_renyi(const PartitionStats& stats, double alpha) {
  if (!(alpha > 1.0))
    throw OrderOutOfRange(alpha, "partition functional is certified for alpha > 1 only");
  std::vector<double> terms;
  for (std::size_t k = 0; k < stats.p_masses.size(); ++k) {
    double p = stats.p_masses[k], r = stats.r_masses[k];
    if (p == 0.0) continue;  // P^alpha dominates for alpha > 1
    if (r == 0.0) return ExtendedReal::infinity();
    terms.push_back(std::pow(p, alpha) / std::pow(r, alpha - 1.0));
  }
  double s = compensated_sum(terms);
  return ExtendedReal::log(s) * ExtendedReal(1.0 / (alpha - 1.0));
}

ExtendedReal partition_tsallis(const PartitionStats& stats, double q) {
  return renyi_to_tsallis(partition_renyi(stats, q), q);
}

Partition split_cell(const Partition& pi, std::size_t k, const SplitSpec& split) {
  if (k >= pi.cells.size()) throw InvalidSplit("cell index out of range");
  const Cell& cell = pi.cells[k];
  Cell left, right;
  if (split.is_discrete()) {
    if (cell.atoms.empty()) throw InvalidSplit("discrete split of a continuous cell");
    std::vector<std::size_t> inside, outside;
    for (std::size_t a : cell.atoms) {
      bool in = std::binary_search(split.atoms.begin(), split.atoms.end(), a);
      (in ? inside : outside).push_back(a);
    }
    if (inside.size() != split.atoms.size())
      throw InvalidSplit("split atoms not contained in the cell");
    if (inside.empty() || outside.empty())
      throw InvalidSplit("split must be a proper nonempty subset");
    left = Cell::of_atoms(std::move(inside));
    right = Cell::of_atoms(std::move(outside));
  } else {
    if (cell.intervals.empty()) throw InvalidSplit("interval split of a discrete cell");
    double x = split.point;
    bool interior = false;
    std::vector<Interval> lo_ivs, hi_ivs;
    for (const Interval& iv : cell.intervals) {
      if (x > iv.lo + kGeomEps && x < iv.hi - kGeomEps) {
        interior = true;
        lo_ivs.push_back({iv.lo, x});
        hi_ivs.push_back({x, iv.hi});
      } else if (iv.hi <= x) {
        lo_ivs.push_back(iv);
      } else {
        hi_ivs.push_back(iv);
      }
    }
    if (!interior) throw InvalidSplit("split point not strictly interior to the cell");
    left = Cell::of_intervals(std::move(lo_ivs));
    right = Cell::of_intervals(std::move(hi_ivs));
  }
  Partition out;
  out.cells.reserve(pi.cells.size() + 1);
  for (std::size_t i = 0; i < pi.cells.size(); ++i) {
    if (i == k) {
      out.cells.push_back(std::move(left));
      out.cells.push_back(std::move(right));
    } else {
      out.cells.push_back(pi.cells[i]);
    }
  }
  return out;
}

namespace {

bool cell_contains(const Cell& outer, const Cell& inner) {
  if (!inner.atoms.empty() || !outer.atoms.empty()) {
    for (std::size_t a : inner.atoms)
      if (!std::binary_search(outer.atoms.begin(), outer.atoms.end(), a)) return false;
    return true;
  }
  for (const Interval& iv : inner.intervals) {
    double covered = iv.lo;
    for (const Interval& o : outer.intervals) {
      if (o.lo <= covered + kGeomEps && o.hi > covered)
        covered = std::max(covered, o.hi);
    }
    if (covered < iv.hi - kGeomEps) return false;
  }
  return true;
}

Cell cell_intersection(const Cell& a, const Cell& b) {
  Cell out;
  if (!a.atoms.empty() || !b.atoms.empty()) {
    std::set_intersection(a.atoms.begin(), a.atoms.end(), b.atoms.begin(),
                          b.atoms.end(), std::back_inserter(out.atoms));
    return out;
  }
  for (const Interval& ia : a.intervals)
    for (const Interval& ib : b.intervals) {
      double lo = std::max(ia.lo, ib.lo), hi = std::min(ia.hi, ib.hi);
      if (hi > lo + kGeomEps) out.intervals.push_back({lo, hi});
    }
  std::sort(out.intervals.begin(), out.intervals.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  return out;
}

bool cell_empty(const Cell& c) { return c.atoms.empty() && c.intervals.empty(); }

}  // namespace

bool is_refinement(const Partition& fine, const Partition& coarse) {
  for (const Cell& f : fine.cells) {
    int hits = 0;
    for (const Cell& c : coarse.cells)
      if (cell_contains(c, f)) ++hits;
    if (hits != 1) return false;
  }
  return true;
}

Partition common_refinement(const Partition& a, const Partition& b) {
  Partition out;
  for (const Cell& ca : a.cells)
    for (const Cell& cb : b.cells) {
      Cell c = cell_intersection(ca, cb);
      if (!cell_empty(c)) out.cells.push_back(std::move(c));
    }
  if (out.cells.empty()) throw MismatchedReference();
  return out;
}

std::pair<double, double> holder_cell_check(const ProbabilityMeasure& P,
                                            const ProbabilityMeasure& R,
                                            const Cell& cell, double alpha,
                                            QuadratureConfig cfg) {
  double rm = cell_mass(R, cell);
  if (rm == 0.0) return {0.0, 0.0};
  double pm = cell_mass(P, cell);
  double lhs = std::pow(pm, alpha) / std::pow(rm, alpha - 1.0);
  double rhs = power_ratio_integral(P, R, alpha, cell, cfg);
  return {lhs, rhs};
}

}  // namespace gyp
