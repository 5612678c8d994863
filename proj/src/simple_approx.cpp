#include "gyp/simple_approx.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gyp {

namespace {

double quantize_value(double phi, int n) {
  double scale = std::ldexp(1.0, n);  // 2^n
  double v = std::floor(phi * scale) / scale;
  return std::min(v, static_cast<double>(n));
}

constexpr double kMassFloor = 1e-15;

}  // namespace

double SimpleFunction::value_at(double x) const {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const Cell& c = cells.cells[k];
    for (const Interval& iv : c.intervals) {
      bool last = (k + 1 == cells.size() && &iv == &c.intervals.back());
      if (x >= iv.lo && (x < iv.hi || (last && x <= iv.hi))) return levels[k];
    }
  }
  // right edge of the support may live in any cell; retry closed
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (const Interval& iv : cells.cells[k].intervals)
      if (x >= iv.lo && x <= iv.hi) return levels[k];
  return 0.0;
}

double SimpleFunction::value_at_atom(std::size_t i) const {
  for (std::size_t k = 0; k < cells.size(); ++k)
    if (std::binary_search(cells.cells[k].atoms.begin(), cells.cells[k].atoms.end(), i))
      return levels[k];
  return 0.0;
}

SimpleFunction quantize_rn_derivative(const DensityEvaluator& phi,
                                      const ProbabilityMeasure& R, int n) {
  if (n < 1) throw InputError("quantization level parameter must be >= 1");
  (void)R;  // masses come from the evaluator's own denominator polynomials
  SimpleFunction s;
  if (phi.discrete()) {
    // group atoms by quantized level, first-occurrence order
    std::vector<double> level_of(phi.atom_ratios().size());
    for (std::size_t i = 0; i < level_of.size(); ++i)
      level_of[i] = quantize_value(phi.at_atom(i), n);
    std::map<double, std::size_t> index_of;
    for (std::size_t i = 0; i < level_of.size(); ++i) {
      auto [it, fresh] = index_of.try_emplace(level_of[i], s.cells.size());
      if (fresh) {
        s.levels.push_back(level_of[i]);
        s.cells.cells.push_back({});
      }
      s.cells.cells[it->second].atoms.push_back(i);
    }
    for (auto& c : s.cells.cells) std::sort(c.atoms.begin(), c.atoms.end());
    return s;
  }

  double scale = std::ldexp(1.0, n);
  double cap_threshold = static_cast<double>(n) + 1.0 / scale;  // band [n, n+2^-n)
  // Elementary intervals: piece boundaries plus every dyadic level crossing.
  struct Elem {
    Interval iv;
    double level;
    double r_mass;
  };
  std::vector<Elem> elems;
  for (const auto& rp : phi.ratio_pieces()) {
    std::vector<double> brk{rp.iv.lo, rp.iv.hi};
    if (rp.den.is_zero()) {
      // R-null piece: phi is 0 there by convention; single elementary interval
    } else {
      // bracket the phi range on the piece by sampling (roots are exact below)
      double mx = 0.0;
      const int grid = 128;
      for (int i = 0; i <= grid; ++i) {
        double x = rp.iv.lo + (rp.iv.hi - rp.iv.lo) * i / grid;
        double den = rp.den(x);
        if (den > 0.0) mx = std::max(mx, rp.num(x) / den);
      }
      mx = std::min(mx * 1.25 + 1.0 / scale, cap_threshold);
      long jmax = static_cast<long>(std::ceil(mx * scale));
      for (long j = 1; j <= jmax; ++j) {
        double t = static_cast<double>(j) / scale;
        Polynomial g = rp.num - rp.den.scaled(std::min(t, cap_threshold));
        for (double x : g.roots_in(rp.iv.lo, rp.iv.hi)) brk.push_back(x);
        if (t >= cap_threshold) break;
      }
    }
    std::sort(brk.begin(), brk.end());
    brk.erase(std::unique(brk.begin(), brk.end(),
                          [](double a, double b) { return b - a <= 1e-13; }),
              brk.end());
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
      Interval iv{brk[i], brk[i + 1]};
      double mid = 0.5 * (iv.lo + iv.hi);
      double den = rp.den(mid);
      double lvl = (den > 0.0) ? quantize_value(rp.num(mid) / den, n) : 0.0;
      double rm = rp.den.is_zero() ? 0.0 : rp.den.integral(iv.lo, iv.hi);
      elems.push_back({iv, lvl, rm});
    }
  }
  if (elems.empty()) throw LevelSetResolutionFailure();
  // merge negligible-R-mass slivers into the left neighbor
  for (std::size_t i = 1; i < elems.size(); ++i)
    if (elems[i].r_mass < kMassFloor) elems[i].level = elems[i - 1].level;
  if (elems[0].r_mass < kMassFloor && elems.size() > 1) elems[0].level = elems[1].level;

  std::map<double, std::size_t> index_of;
  for (const Elem& e : elems) {
    auto [it, fresh] = index_of.try_emplace(e.level, s.cells.size());
    if (fresh) {
      s.levels.push_back(e.level);
      s.cells.cells.push_back({});
    }
    std::size_t k = it->second;
    auto& ivs = s.cells.cells[k].intervals;
    if (!ivs.empty() && e.iv.lo - ivs.back().hi <= 1e-13)
      ivs.back().hi = e.iv.hi;
    else
      ivs.push_back(e.iv);
  }
  return s;
}

InducedMeasure::InducedMeasure(const SimpleFunction& s, ProbabilityMeasure R)
    : s_(s), r_(std::move(R)) {}

double InducedMeasure::mass(const Cell& e) const {
  std::vector<double> terms;
  for (std::size_t k = 0; k < s_.cells.size(); ++k) {
    if (s_.levels[k] == 0.0) continue;
    const Cell& ek = s_.cells.cells[k];
    if (!e.atoms.empty() || !ek.atoms.empty()) {
      std::vector<std::size_t> common;
      std::set_intersection(e.atoms.begin(), e.atoms.end(), ek.atoms.begin(),
                            ek.atoms.end(), std::back_inserter(common));
      if (!common.empty())
        terms.push_back(s_.levels[k] * cell_mass(r_, Cell::of_atoms(common)));
    } else {
      std::vector<Interval> common;
      for (const Interval& a : e.intervals)
        for (const Interval& b : ek.intervals) {
          double lo = std::max(a.lo, b.lo), hi = std::min(a.hi, b.hi);
          if (hi > lo) common.push_back({lo, hi});
        }
      if (!common.empty())
        terms.push_back(s_.levels[k] * cell_mass(r_, Cell::of_intervals(common)));
    }
  }
  return compensated_sum(terms);
}

double InducedMeasure::total_mass() const {
  std::vector<double> terms;
  for (std::size_t k = 0; k < s_.cells.size(); ++k)
    terms.push_back(s_.levels[k] * cell_mass(r_, s_.cells.cells[k]));
  return compensated_sum(terms);
}

InducedMeasure induced_measure(const SimpleFunction& s, const ProbabilityMeasure& R) {
  return InducedMeasure(s, R);
}

ExtendedReal simple_divergence(const SimpleFunction& s, const ProbabilityMeasure& R,
                               double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0)
    throw OrderOutOfRange(alpha, "simple divergence needs alpha > 0, alpha != 1");
  std::vector<double> terms;
  for (std::size_t k = 0; k < s.cells.size(); ++k) {
    double a = s.levels[k];
    if (a <= 0.0) continue;
    terms.push_back(std::pow(a, alpha) * cell_mass(R, s.cells.cells[k]));
  }
  double sum = compensated_sum(terms);
  return ExtendedReal::log(sum) * ExtendedReal(1.0 / (alpha - 1.0));
}

ExtendedReal simple_divergence_mass_ratio_form(const SimpleFunction& s,
                                               const ProbabilityMeasure& R,
                                               double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0)
    throw OrderOutOfRange(alpha, "simple divergence needs alpha > 0, alpha != 1");
  InducedMeasure pn = induced_measure(s, R);
  std::vector<double> terms;
  for (std::size_t k = 0; k < s.cells.size(); ++k) {
    double rk = cell_mass(R, s.cells.cells[k]);
    if (rk <= 0.0) continue;
    double pk = pn.mass(s.cells.cells[k]);
    if (pk <= 0.0) continue;
    terms.push_back(std::pow(pk, alpha) / std::pow(rk, alpha - 1.0));
  }
  double sum = compensated_sum(terms);
  return ExtendedReal::log(sum) * ExtendedReal(1.0 / (alpha - 1.0));
}

}  // namespace gyp
