#include "gyp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gyp {

namespace {

constexpr double kGeomEps = 1e-12;

void check_sorted_disjoint(const std::vector<Interval>& ivs) {
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    if (!(ivs[i].hi > ivs[i].lo))
      throw InputError("interval with non-positive length");
    if (i > 0 && ivs[i].lo < ivs[i - 1].hi - kGeomEps)
      throw InputError("intervals overlap");
  }
}

}  // namespace

double compensated_sum(const std::vector<double>& xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

Cell Cell::of_atoms(std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  Cell c;
  c.atoms = std::move(idx);
  return c;
}

Cell Cell::of_intervals(std::vector<Interval> ivs) {
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  check_sorted_disjoint(ivs);
  Cell c;
  c.intervals = std::move(ivs);
  return c;
}

ProbabilityMeasure ProbabilityMeasure::discrete(std::vector<std::string> labels,
                                                std::vector<double> masses) {
  if (labels.size() != masses.size())
    throw InputError("label/mass count mismatch");
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) throw InputError("duplicate atom label " + labels[i]);
  ProbabilityMeasure m;
  m.kind = MeasureKind::Discrete;
  m.labels = std::move(labels);
  m.masses = std::move(masses);
  return m;
}

ProbabilityMeasure ProbabilityMeasure::density(std::vector<PolyPiece> pieces) {
  std::sort(pieces.begin(), pieces.end(),
            [](const PolyPiece& a, const PolyPiece& b) { return a.iv.lo < b.iv.lo; });
  std::vector<Interval> ivs;
  ivs.reserve(pieces.size());
  for (const auto& p : pieces) ivs.push_back(p.iv);
  check_sorted_disjoint(ivs);
  ProbabilityMeasure m;
  m.kind = MeasureKind::Density;
  m.pieces = std::move(pieces);
  return m;
}

ProbabilityMeasure ProbabilityMeasure::uniform(double lo, double hi) {
  if (!(hi > lo)) throw InputError("uniform: empty interval");
  return density({{Interval{lo, hi}, Polynomial::constant(1.0 / (hi - lo))}});
}

ProbabilityMeasure ProbabilityMeasure::beta(int a, int b) {
  if (a < 1 || b < 1) throw InputError("beta: parameters must be positive integers");
  // x^(a-1) * (1-x)^(b-1) / B(a,b)
  Polynomial x({0.0, 1.0});
  Polynomial one_minus_x({1.0, -1.0});
  Polynomial p = x.pow(static_cast<unsigned>(a - 1)) *
                 one_minus_x.pow(static_cast<unsigned>(b - 1));
  // 1/B(a,b) = (a+b-1)! / ((a-1)! (b-1)!) is an exact integer for integer
  // parameters; scaling by it keeps small coefficients exactly representable
  double inv_mass = 1.0;
  for (int k = 1; k <= a + b - 1; ++k) inv_mass *= k;
  for (int k = 1; k <= a - 1; ++k) inv_mass /= k;
  for (int k = 1; k <= b - 1; ++k) inv_mass /= k;
  return density({{Interval{0.0, 1.0}, p.scaled(inv_mass)}});
}

ProbabilityMeasure ProbabilityMeasure::truncated_gaussian(double mu, double sigma,
                                                          double lo, double hi) {
  if (!(hi > lo) || !(sigma > 0)) throw InputError("truncated_gaussian: bad parameters");
  // Per-piece Taylor expansion of exp(-z^2/2), z = (x - mu)/sigma, around the
  // piece midpoint; degree 10 on pieces of width <= sigma/2 keeps the residual
  // far below the normalization tolerance.
  int n_pieces = std::max(4, static_cast<int>(std::ceil((hi - lo) / (sigma / 2.0))));
  std::vector<PolyPiece> pieces;
  double h = (hi - lo) / n_pieces;
  for (int k = 0; k < n_pieces; ++k) {
    double a = lo + k * h, b = (k == n_pieces - 1) ? hi : lo + (k + 1) * h;
    double z0 = (0.5 * (a + b) - mu) / sigma;
    // Taylor of f(z) = exp(-z^2/2) about z0 via the recurrence
    // f' = -z f  =>  (n+1) c_{n+1} = -(z0 c_n + c_{n-1}) with c in powers of (z - z0).
    constexpr int deg = 10;
    double c[deg + 1];
    c[0] = std::exp(-0.5 * z0 * z0);
    c[1] = -z0 * c[0];
    for (int n = 1; n < deg; ++n)
      c[n + 1] = -(z0 * c[n] + c[n - 1]) / static_cast<double>(n + 1);
    // Convert to powers of x: z - z0 = (x - x0)/sigma with x0 the midpoint.
    double x0 = 0.5 * (a + b);
    Polynomial shifted({-x0 / sigma, 1.0 / sigma});  // (x - x0)/sigma
    Polynomial poly;
    Polynomial term = Polynomial::constant(1.0);
    for (int n = 0; n <= deg; ++n) {
      poly = poly + term.scaled(c[n]);
      term = term * shifted;
    }
    pieces.push_back({Interval{a, b}, poly});
  }
  double mass = 0.0;
  for (const auto& pc : pieces) mass += pc.poly.integral(pc.iv.lo, pc.iv.hi);
  for (auto& pc : pieces) pc.poly = pc.poly.scaled(1.0 / mass);
  return density(std::move(pieces));
}

std::vector<Interval> ProbabilityMeasure::support() const {
  std::vector<Interval> ivs;
  for (const auto& p : pieces) {
    if (!ivs.empty() && p.iv.lo <= ivs.back().hi + kGeomEps)
      ivs.back().hi = std::max(ivs.back().hi, p.iv.hi);
    else
      ivs.push_back(p.iv);
  }
  return ivs;
}

Cell ProbabilityMeasure::support_cell() const {
  Cell c;
  if (kind == MeasureKind::Discrete) {
    c.atoms.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) c.atoms[i] = i;
  } else {
    c.intervals = support();
  }
  return c;
}

double ProbabilityMeasure::density_at(double x) const {
  for (const auto& p : pieces) {
    bool last = (&p == &pieces.back());
    if (x >= p.iv.lo && (x < p.iv.hi || (last && x <= p.iv.hi))) return p.poly(x);
  }
  return 0.0;
}

ProbabilityMeasure validate_measure(const ProbabilityMeasure& m) {
  if (m.kind == MeasureKind::Discrete) {
    std::vector<double> xs;
    for (std::size_t i = 0; i < m.masses.size(); ++i) {
      if (m.masses[i] < 0.0) throw NegativeDensity(static_cast<double>(i));
      xs.push_back(m.masses[i]);
    }
    double mass = compensated_sum(xs);
    if (std::abs(mass - 1.0) > m.normalization_tolerance) throw NotNormalized(mass);
  } else {
    if (m.pieces.empty()) throw InputError("density measure with no pieces");
    std::vector<double> xs;
    for (const auto& pc : m.pieces) {
      // nonnegativity on a dense grid plus the piece endpoints
      const int grid = 256;
      for (int i = 0; i <= grid; ++i) {
        double x = pc.iv.lo + (pc.iv.hi - pc.iv.lo) * i / grid;
        if (pc.poly(x) < -1e-12) throw NegativeDensity(x);
      }
      xs.push_back(pc.poly.integral(pc.iv.lo, pc.iv.hi));
    }
    double mass = compensated_sum(xs);
    if (std::abs(mass - 1.0) > m.normalization_tolerance) throw NotNormalized(mass);
  }
  return m;
}

double total_mass(const ProbabilityMeasure& m) {
  std::vector<double> xs;
  if (m.kind == MeasureKind::Discrete) {
    xs = m.masses;
  } else {
    for (const auto& pc : m.pieces) xs.push_back(pc.poly.integral(pc.iv.lo, pc.iv.hi));
  }
  return compensated_sum(xs);
}

double cell_mass(const ProbabilityMeasure& m, const Cell& c) {
  std::vector<double> xs;
  if (m.kind == MeasureKind::Discrete) {
    if (!c.intervals.empty()) throw CellOutsideSupport();
    for (std::size_t i : c.atoms) {
      if (i >= m.masses.size()) throw CellOutsideSupport();
      xs.push_back(m.masses[i]);
    }
  } else {
    if (!c.atoms.empty()) throw CellOutsideSupport();
    // intervals may extend beyond the support (pair operations run over the
    // union support); the density is 0 there and contributes nothing
    for (const Interval& iv : c.intervals) {
      for (const auto& pc : m.pieces) {
        double lo = std::max(iv.lo, pc.iv.lo), hi = std::min(iv.hi, pc.iv.hi);
        if (hi > lo) xs.push_back(pc.poly.integral(lo, hi));
      }
    }
  }
  return compensated_sum(xs);
}

std::vector<Interval> union_support(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R) {
  std::vector<Interval> all;
  for (const auto& pc : P.pieces) all.push_back(pc.iv);
  for (const auto& pc : R.pieces) all.push_back(pc.iv);
  std::sort(all.begin(), all.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  for (const Interval& iv : all) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kGeomEps)
      merged.back().hi = std::max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  return merged;
}

std::vector<AlignedPiece> align_pieces(const ProbabilityMeasure& P,
                                       const ProbabilityMeasure& R) {
  if (P.kind != MeasureKind::Density || R.kind != MeasureKind::Density)
    throw MismatchedReference();
  std::vector<double> brk;
  for (const auto& pc : P.pieces) {
    brk.push_back(pc.iv.lo);
    brk.push_back(pc.iv.hi);
  }
  for (const auto& pc : R.pieces) {
    brk.push_back(pc.iv.lo);
    brk.push_back(pc.iv.hi);
  }
  std::sort(brk.begin(), brk.end());
  brk.erase(std::unique(brk.begin(), brk.end(),
                        [](double a, double b) { return b - a <= kGeomEps; }),
            brk.end());
  auto poly_at = [](const ProbabilityMeasure& m, double mid) -> Polynomial {
    for (const auto& pc : m.pieces)
      if (mid >= pc.iv.lo && mid <= pc.iv.hi) return pc.poly;
    return Polynomial();  // zero off-support
  };
  std::vector<AlignedPiece> out;
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    Interval iv{brk[i], brk[i + 1]};
    double mid = 0.5 * (iv.lo + iv.hi);
    Polynomial p = poly_at(P, mid), r = poly_at(R, mid);
    if (p.is_zero() && r.is_zero()) continue;  // gap between supports
    out.push_back({iv, p, r});
  }
  return out;
}

std::optional<Cell> check_absolute_continuity(const ProbabilityMeasure& P,
                                              const ProbabilityMeasure& R) {
  if (P.kind != R.kind) throw MismatchedReference();
  if (P.kind == MeasureKind::Discrete) {
    if (P.labels != R.labels) throw MismatchedReference();
    std::vector<std::size_t> bad;
    for (std::size_t i = 0; i < P.masses.size(); ++i)
      if (R.masses[i] == 0.0 && P.masses[i] > 0.0) bad.push_back(i);
    if (bad.empty()) return std::nullopt;
    return Cell::of_atoms(std::move(bad));
  }
  std::vector<Interval> bad;
  for (const auto& ap : align_pieces(P, R)) {
    if (ap.r.is_zero() && ap.p.integral(ap.iv.lo, ap.iv.hi) > 0.0)
      bad.push_back(ap.iv);
  }
  if (bad.empty()) return std::nullopt;
  // merge adjacent witness intervals into a maximal cell
  std::vector<Interval> merged;
  for (const Interval& iv : bad) {
    if (!merged.empty() && iv.lo <= merged.back().hi + kGeomEps)
      merged.back().hi = iv.hi;
    else
      merged.push_back(iv);
  }
  return Cell::of_intervals(std::move(merged));
}

Cell complement_cell(const std::vector<Interval>& support, const Cell& c,
                     std::size_t atom_count) {
  if (!c.atoms.empty() || (c.intervals.empty() && atom_count > 0)) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < atom_count; ++i)
      if (!std::binary_search(c.atoms.begin(), c.atoms.end(), i)) rest.push_back(i);
    return Cell::of_atoms(std::move(rest));
  }
  std::vector<Interval> rest;
  for (const Interval& s : support) {
    double cursor = s.lo;
    for (const Interval& iv : c.intervals) {
      double lo = std::max(iv.lo, s.lo), hi = std::min(iv.hi, s.hi);
      if (hi <= lo) continue;
      if (lo > cursor + kGeomEps) rest.push_back({cursor, lo});
      cursor = std::max(cursor, hi);
    }
    if (s.hi > cursor + kGeomEps) rest.push_back({cursor, s.hi});
  }
  return Cell::of_intervals(std::move(rest));
}

double DensityEvaluator::operator()(double x) const {
  for (const auto& rp : pieces_) {
    bool last = (&rp == &pieces_.back());
    if (x >= rp.iv.lo && (x < rp.iv.hi || (last && x <= rp.iv.hi))) {
      double num = rp.num(x), den = rp.den(x);
      if (den == 0.0) {
        if (num == 0.0) return 0.0;  // R-null set, convention
        return std::numeric_limits<double>::infinity();
      }
      return num / den;
    }
  }
  return 0.0;
}

DensityEvaluator rn_derivative(const ProbabilityMeasure& P,
                               const ProbabilityMeasure& R) {
  if (auto w = check_absolute_continuity(P, R)) throw NotAbsolutelyContinuous(*w);
  DensityEvaluator ev;
  if (P.kind == MeasureKind::Discrete) {
    ev.discrete_ = true;
    ev.atom_ratios_.resize(P.masses.size());
    for (std::size_t i = 0; i < P.masses.size(); ++i)
      ev.atom_ratios_[i] = (R.masses[i] == 0.0) ? 0.0 : P.masses[i] / R.masses[i];
  } else {
    for (auto& ap : align_pieces(P, R))
      ev.pieces_.push_back({ap.iv, ap.p, ap.r});
  }
  return ev;
}

}  // namespace gyp
