#include "gyp/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>

namespace gyp {

namespace {

constexpr double kGeomEps = 1e-12;
constexpr double kMassFloor = 1e-15;

// Functional term of one cell in "argument space": the KL sum term, or the
// Renyi inner-sum term P^a / R^(a-1). Greedy gain comparisons happen here;
// the ln / transform is applied only when reporting values.
double cell_term(double p, double r, const OrderParam& order) {
  if (p <= 0.0) return 0.0;
  if (order.family == Family::KL) return p * std::log(p / r);
  return std::pow(p, order.order) / std::pow(r, order.order - 1.0);
}

ExtendedReal arg_to_value(double arg_sum, const OrderParam& order) {
  if (order.family == Family::KL) return ExtendedReal(arg_sum);
  return ExtendedReal::log(arg_sum) * ExtendedReal(1.0 / (order.order - 1.0));
}

double left_coordinate(const Cell& c) {
  if (!c.atoms.empty()) return static_cast<double>(c.atoms.front());
  return c.intervals.front().lo;
}

double split_coordinate(const SplitSpec& s) {
  if (s.is_discrete()) return static_cast<double>(s.atoms.front());
  return s.point;
}

// Candidate split points for a continuous cell under one strategy.
std::vector<double> candidate_points(const ProbabilityMeasure& P,
                                     const ProbabilityMeasure& R, const Cell& cell,
                                     double p_mass, double r_mass,
                                     const RefinementConfig& cfg) {
  std::vector<double> pts;
  auto push = [&](double x) {
    for (const Interval& iv : cell.intervals)
      if (x > iv.lo + kGeomEps && x < iv.hi - kGeomEps) {
        pts.push_back(x);
        return;
      }
  };
  switch (cfg.strategy) {
    case SplitStrategy::Midpoint:
      for (const Interval& iv : cell.intervals) push(0.5 * (iv.lo + iv.hi));
      break;
    case SplitStrategy::MassMedian: {
      // R-mass quantiles within the cell, i/(candidate_count+1)
      int cc = std::max(1, cfg.candidate_count);
      for (int i = 1; i <= cc; ++i) {
        double target = r_mass * static_cast<double>(i) / (cc + 1);
        // walk intervals, bisect inside the one containing the quantile
        double acc = 0.0;
        for (const Interval& iv : cell.intervals) {
          double m = cell_mass(R, Cell::of_intervals({iv}));
          if (acc + m < target) {
            acc += m;
            continue;
          }
          double lo = iv.lo, hi = iv.hi;
          for (int it = 0; it < 100 && hi - lo > 1e-13; ++it) {
            double mid = 0.5 * (lo + hi);
            double mm = cell_mass(R, Cell::of_intervals({{iv.lo, mid}}));
            (acc + mm < target ? lo : hi) = mid;
          }
          push(0.5 * (lo + hi));
          break;
        }
      }
      break;
    }
    case SplitStrategy::PhiLevel: {
      // crossings of phi with the cell's mean level P(E)/R(E)
      if (r_mass > 0.0) {
        double level = p_mass / r_mass;
        for (const auto& ap : align_pieces(P, R)) {
          if (ap.r.is_zero()) continue;
          Polynomial g = ap.p - ap.r.scaled(level);
          for (const Interval& iv : cell.intervals) {
            double lo = std::max(iv.lo, ap.iv.lo), hi = std::min(iv.hi, ap.iv.hi);
            if (hi <= lo) continue;
            for (double x : g.roots_in(lo, hi)) push(x);
          }
        }
      }
      // geometric midpoint of the longest interval as a fallback candidate
      const Interval* longest = &cell.intervals.front();
      for (const Interval& iv : cell.intervals)
        if (iv.length() > longest->length()) longest = &iv;
      push(0.5 * (longest->lo + longest->hi));
      break;
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a <= 1e-13; }),
            pts.end());
  return pts;
}

// Candidates for one cell with gains in argument space (additive across
// cells, so entries stay comparable between refinement steps).
std::vector<SplitCandidate> arg_gain_candidates(const ProbabilityMeasure& P,
                                                const ProbabilityMeasure& R,
                                                const Cell& cell,
                                                const OrderParam& order,
                                                const RefinementConfig& cfg) {
  double r_mass = cell_mass(R, cell);
  if (r_mass <= 0.0) throw NoValidSplit();
  double p_mass = cell_mass(P, cell);
  double base = cell_term(p_mass, r_mass, order);

  std::vector<SplitCandidate> out;
  if (P.kind == MeasureKind::Discrete) {
    if (cell.atoms.size() < 2) throw NoValidSplit();
    for (std::size_t a : cell.atoms) {
      double p1 = P.masses[a], r1 = R.masses[a];
      double gain = cell_term(p1, r1, order) +
                    cell_term(p_mass - p1, r_mass - r1, order) - base;
      out.push_back({gain, SplitSpec{0.0, {a}}});
    }
  } else {
    if (cell.intervals.empty()) throw NoValidSplit();
    for (double x : candidate_points(P, R, cell, p_mass, r_mass, cfg)) {
      std::vector<Interval> lo_ivs, hi_ivs;
      for (const Interval& iv : cell.intervals) {
        if (x > iv.lo && x < iv.hi) {
          lo_ivs.push_back({iv.lo, x});
          hi_ivs.push_back({x, iv.hi});
        } else if (iv.hi <= x) {
          lo_ivs.push_back(iv);
        } else {
          hi_ivs.push_back(iv);
        }
      }
      double p1 = cell_mass(P, Cell::of_intervals(lo_ivs));
      double r1 = cell_mass(R, Cell::of_intervals(lo_ivs));
      // splits that shave off an R-null sliver gain nothing and pollute traces
      if (r1 < kMassFloor || r_mass - r1 < kMassFloor) continue;
      double gain = cell_term(p1, r1, order) +
                    cell_term(p_mass - p1, r_mass - r1, order) - base;
      out.push_back({gain, SplitSpec{x, {}}});
    }
    if (out.empty()) throw NoValidSplit();
  }
  std::sort(out.begin(), out.end(), [](const SplitCandidate& a, const SplitCandidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return split_coordinate(a.split) < split_coordinate(b.split);
  });
  if (out.size() > static_cast<std::size_t>(std::max(1, cfg.candidate_count)))
    out.resize(static_cast<std::size_t>(std::max(1, cfg.candidate_count)));
  return out;
}

}  // namespace

std::vector<SplitCandidate> propose_splits(const ProbabilityMeasure& P,
                                           const ProbabilityMeasure& R,
                                           const Partition& pi, std::size_t k,
                                           const OrderParam& order,
                                           const RefinementConfig& cfg) {
  if (k >= pi.cells.size()) throw InvalidSplit("cell index out of range");
  const bool tsallis = (order.family == Family::Tsallis);
  OrderParam search = tsallis ? OrderParam::renyi(order.order) : order;
  auto cands = arg_gain_candidates(P, R, pi.cells[k], search, cfg);

  // Report gains in value space: what the functional of the whole partition
  // gains from applying this split alone.
  std::vector<double> terms;
  for (const Cell& c : pi.cells)
    terms.push_back(cell_term(std::max(cell_mass(P, c), 0.0),
                              std::max(cell_mass(R, c), 0.0), search));
  double total = compensated_sum(terms);
  auto value_of = [&](double arg_sum) {
    ExtendedReal v = arg_to_value(arg_sum, search);
    if (tsallis) v = renyi_to_tsallis(v, order.order);
    return v.is_pos_inf() ? std::numeric_limits<double>::infinity() : v.value();
  };
  double base_value = value_of(total);
  for (SplitCandidate& c : cands) c.gain = value_of(total + c.gain) - base_value;
  return cands;
}

namespace {

struct ActiveCell {
  Cell cell;
  double p_mass = 0.0;
  double r_mass = 0.0;
  double term = 0.0;
  bool alive = true;
};

struct HeapEntry {
  double gain;
  double left;
  double coord;
  std::size_t cell_id;
  SplitSpec split;
};

struct HeapCmp {
  // max-heap on gain; ties by leftmost cell, then smallest split coordinate
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.gain != b.gain) return a.gain < b.gain;
    if (a.left != b.left) return a.left > b.left;
    return a.coord > b.coord;
  }
};

}  // namespace

CertifiedEstimate supremum_estimate(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R,
                                    const OrderParam& order,
                                    const RefinementConfig& cfg) {
  if (order.family != Family::KL && !(order.order > 1.0))
    throw OrderOutOfRange(order.order, "engine requires KL or order > 1");

  const bool tsallis = (order.family == Family::Tsallis);
  // The search runs on the Renyi functional; Tsallis is its monotone
  // transform, applied to values when reporting.
  OrderParam search = tsallis ? OrderParam::renyi(order.order) : order;
  auto report = [&](ExtendedReal v) {
    return tsallis ? renyi_to_tsallis(v, order.order) : v;
  };

  CertifiedEstimate est;
  if (auto w = check_absolute_continuity(P, R)) {
    est.witness = *w;
    est.lower_bound = est.oracle = ExtendedReal::infinity();
    est.gap = 0.0;
    est.converged = true;
    // the 2-cell partition {E, X - E} already realizes +inf
    std::size_t atom_count = P.kind == MeasureKind::Discrete ? P.masses.size() : 0;
    std::vector<Interval> sup =
        P.kind == MeasureKind::Density ? union_support(P, R) : std::vector<Interval>{};
    Partition pi{{*w, complement_cell(sup, *w, atom_count)}};
    est.trace.final_partition = pi;
    est.trace.steps.push_back(
        {0, 2, ExtendedReal::infinity(), ExtendedReal::infinity(), 0.0});
    return est;
  }

  ExtendedReal oracle_search = divergence(P, R, search, cfg.quad);
  est.oracle = report(oracle_search);

  Cell full = (P.kind == MeasureKind::Discrete)
                  ? P.support_cell()
                  : Cell::of_intervals(union_support(P, R));
  std::vector<ActiveCell> cells;
  cells.push_back({full, total_mass(P), total_mass(R), 0.0, true});
  cells[0].term = cell_term(cells[0].p_mass, cells[0].r_mass, search);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCmp> heap;
  auto push_candidates = [&](std::size_t id) {
    try {
      auto cand = arg_gain_candidates(P, R, cells[id].cell, search, cfg);
      if (!cand.empty())
        heap.push({cand[0].gain, left_coordinate(cells[id].cell),
                   split_coordinate(cand[0].split), id, cand[0].split});
    } catch (const NoValidSplit&) {
    }
  };
  push_candidates(0);

  auto current_value = [&]() {
    std::vector<double> terms;
    for (const ActiveCell& c : cells)
      if (c.alive) terms.push_back(c.term);
    return arg_to_value(compensated_sum(terms), search);
  };
  auto gap_of = [&](ExtendedReal v) {
    ExtendedReal o = est.oracle;
    if (o.is_pos_inf()) return std::numeric_limits<double>::infinity();
    return o.value() - report(v).value();
  };

  int m = 1;
  ExtendedReal value = current_value();
  est.trace.steps.push_back({0, m, report(value), est.oracle, gap_of(value)});
  double gap_tol = cfg.rel_gap_tol *
                   std::max(est.oracle.finite() ? std::abs(est.oracle.value()) : 1.0, 1.0);
  est.converged = gap_of(value) <= gap_tol;

  // Discrete suprema are attained exactly at the singleton partition, so the
  // search ignores the gap rule and peels atoms until nothing is splittable.
  const bool exhaustive = (P.kind == MeasureKind::Discrete);

  int step = 0;
  while ((exhaustive || !est.converged) && m < cfg.max_cells && !heap.empty()) {
    HeapEntry top = heap.top();
    heap.pop();
    if (!cells[top.cell_id].alive) continue;
    if (!exhaustive && top.gain < cfg.min_gain) break;

    const ActiveCell& parent = cells[top.cell_id];
    Partition one{{parent.cell}};
    Partition halves = split_cell(one, 0, top.split);
    cells[top.cell_id].alive = false;
    for (const Cell& half : halves.cells) {
      ActiveCell ac;
      ac.cell = half;
      ac.p_mass = cell_mass(P, half);
      ac.r_mass = cell_mass(R, half);
      ac.term = cell_term(ac.p_mass, ac.r_mass, search);
      cells.push_back(std::move(ac));
      push_candidates(cells.size() - 1);
    }
    ++m;
    ++step;
    value = current_value();
    double gap = gap_of(value);
    est.trace.steps.push_back({step, m, report(value), est.oracle, gap});
    if (gap <= gap_tol) est.converged = true;
  }

  est.lower_bound = report(value);
  est.gap = gap_of(value);
  if (exhaustive) est.converged = est.gap <= gap_tol;
  // final cells in left-to-right support order for reproducible traces
  std::vector<const ActiveCell*> alive;
  for (const ActiveCell& c : cells)
    if (c.alive) alive.push_back(&c);
  std::sort(alive.begin(), alive.end(), [](const ActiveCell* a, const ActiveCell* b) {
    return left_coordinate(a->cell) < left_coordinate(b->cell);
  });
  for (const ActiveCell* c : alive) est.trace.final_partition.cells.push_back(c->cell);
  return est;
}

std::vector<CertifiedEstimate> run_alpha_sweep(const ProbabilityMeasure& P,
                                               const ProbabilityMeasure& R,
                                               const std::vector<double>& alphas,
                                               const RefinementConfig& cfg) {
  std::vector<CertifiedEstimate> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    if (!(a > 1.0)) throw OrderOutOfRange(a, "sweep orders must exceed 1");
    out.push_back(supremum_estimate(P, R, OrderParam::renyi(a), cfg));
  }
  return out;
}

std::string trace_to_csv(const RefinementTrace& trace) {
  std::string out = "step,cells,partition_value,oracle_value,gap\n";
  char buf[128];
  for (const TraceStep& s : trace.steps) {
    std::string gap = std::isinf(s.gap) ? "inf" : [&] {
      std::snprintf(buf, sizeof buf, "%.17g", s.gap);
      return std::string(buf);
    }();
    std::snprintf(buf, sizeof buf, "%d,%d,", s.step, s.cells);
    out += buf;
    out += s.value.str() + "," + s.oracle.str() + "," + gap + "\n";
  }
  return out;
}

}  // namespace gyp
