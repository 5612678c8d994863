#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gyp/errors.hpp"
#include "gyp/polynomial.hpp"

namespace gyp {

enum class MeasureKind { Discrete, Density };

/// Half-open interval [lo, hi); the rightmost interval of a support is
/// treated as closed at hi. Single points are Lebesgue-null so the
/// convention only matters for bookkeeping, not for masses.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct PolyPiece {
  Interval iv;
  Polynomial poly;
};

/// A measurable set the representation can express: an atom subset in the
/// discrete case, a finite disjoint interval union in the continuous case.
struct Cell {
  std::vector<std::size_t> atoms;   // indices into the atom label list
  std::vector<Interval> intervals;  // sorted, pairwise disjoint

  static Cell of_atoms(std::vector<std::size_t> idx);
  static Cell of_intervals(std::vector<Interval> ivs);
};

struct NotAbsolutelyContinuous : Error {
  Cell witness;
  explicit NotAbsolutelyContinuous(Cell w)
      : Error("P is not absolutely continuous w.r.t. R"), witness(std::move(w)) {}
};

/// Probability measure over a counting reference (labeled atoms) or a
/// Lebesgue reference (piecewise-polynomial density on bounded intervals).
/// Immutable after validation; all operations on it are pure.
struct ProbabilityMeasure {
  MeasureKind kind = MeasureKind::Discrete;

  // Discrete representation.
  std::vector<std::string> labels;
  std::vector<double> masses;

  // Continuous representation: pieces sorted by interval, pairwise disjoint.
  // The support is the union of the piece intervals.
  std::vector<PolyPiece> pieces;

  double normalization_tolerance = 1e-9;

  static ProbabilityMeasure discrete(std::vector<std::string> labels,
                                     std::vector<double> masses);
  static ProbabilityMeasure density(std::vector<PolyPiece> pieces);
  static ProbabilityMeasure uniform(double lo, double hi);
  /// Beta(a, b) with integer parameters on [0, 1]; the density is the exact
  /// polynomial x^(a-1) (1-x)^(b-1) / B(a, b).
  static ProbabilityMeasure beta(int a, int b);
  /// Gaussian restricted to [lo, hi], compiled to a piecewise-polynomial
  /// approximation (per-piece Taylor expansions) and renormalized exactly.
  static ProbabilityMeasure truncated_gaussian(double mu, double sigma, double lo,
                                               double hi);

  /// Support intervals (continuous) in ascending order.
  std::vector<Interval> support() const;
  /// The whole support as a single cell.
  Cell support_cell() const;
  /// Pointwise density (continuous) or atom mass by index lookup.
  double density_at(double x) const;
};

/// Checks invariants and recomputes the total mass exactly.
/// Throws NotNormalized or NegativeDensity.
ProbabilityMeasure validate_measure(const ProbabilityMeasure& m);

double total_mass(const ProbabilityMeasure& m);

/// Exact mass of a cell: atom summation or closed-form polynomial
/// integration over the cell's intervals. Throws CellOutsideSupport.
double cell_mass(const ProbabilityMeasure& m, const Cell& c);

/// A piece of the common grid of two continuous measures: both densities
/// restricted to one interval. Pieces outside a measure's own support carry
/// the zero polynomial.
struct AlignedPiece {
  Interval iv;
  Polynomial p;
  Polynomial r;
};

/// Refines the piece grids of two continuous measures onto the union of
/// their supports. Throws MismatchedReference on kind mismatch.
std::vector<AlignedPiece> align_pieces(const ProbabilityMeasure& P,
                                       const ProbabilityMeasure& R);

/// nullopt iff P << R on the representable sigma-algebra; otherwise a
/// maximal witness cell with P(cell) > 0 and R(cell) = 0 exactly.
std::optional<Cell> check_absolute_continuity(const ProbabilityMeasure& P,
                                              const ProbabilityMeasure& R);

/// Pointwise Radon-Nikodym derivative phi = dP/dR, defined R-a.e.
/// On {r = 0, p = 0} the evaluator returns 0.
class DensityEvaluator {
 public:
  struct RatioPiece {
    Interval iv;
    Polynomial num;
    Polynomial den;
  };

  bool discrete() const { return discrete_; }
  const std::vector<double>& atom_ratios() const { return atom_ratios_; }
  const std::vector<RatioPiece>& ratio_pieces() const { return pieces_; }

  double operator()(double x) const;
  double at_atom(std::size_t i) const { return atom_ratios_.at(i); }

 private:
  friend DensityEvaluator rn_derivative(const ProbabilityMeasure&,
                                        const ProbabilityMeasure&);
  bool discrete_ = false;
  std::vector<double> atom_ratios_;
  std::vector<RatioPiece> pieces_;
};

/// Throws NotAbsolutelyContinuous (with witness) or MismatchedReference.
DensityEvaluator rn_derivative(const ProbabilityMeasure& P,
                               const ProbabilityMeasure& R);

/// Union of the two supports as an interval list (continuous pairs).
std::vector<Interval> union_support(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R);

/// Complement of a cell within the given support intervals.
Cell complement_cell(const std::vector<Interval>& support, const Cell& c,
                     std::size_t atom_count = 0);

/// Kahan-compensated sum.
double compensated_sum(const std::vector<double>& xs);

}  // namespace gyp
