#pragma once

#include "gyp/extended_real.hpp"
#include "gyp/measure.hpp"
#include "gyp/partition.hpp"

namespace gyp {

/// Nonnegative simple function: one level per partition cell,
/// s(x) = sum_k a_k chi_{E_k}(x).
struct SimpleFunction {
  std::vector<double> levels;
  Partition cells;

  double value_at(double x) const;
  double value_at_atom(std::size_t i) const;
};

/// Dyadic quantization of a Radon-Nikodym derivative:
/// s_n(x) = min(floor(2^n phi(x)) / 2^n, n).
/// Cells are phi-preimages of the dyadic level bands, located by polynomial
/// root isolation; cells of R-mass below 1e-15 are merged into a neighbor
/// (R supplies the mass; pass the reference measure the evaluator was built
/// against). Guarantees 0 <= s_n <= s_{n+1} <= phi pointwise.
SimpleFunction quantize_rn_derivative(const DensityEvaluator& phi,
                                      const ProbabilityMeasure& R, int n);

/// Measure induced by a simple function against R: E -> sum_k a_k R(E o E_k).
/// Subnormalized for finite n; not a ProbabilityMeasure.
class InducedMeasure {
 public:
  InducedMeasure(const SimpleFunction& s, ProbabilityMeasure R);
  double mass(const Cell& e) const;
  double total_mass() const;

 private:
  SimpleFunction s_;
  ProbabilityMeasure r_;
};

InducedMeasure induced_measure(const SimpleFunction& s, const ProbabilityMeasure& R);

/// Exact Renyi integral of a simple function:
/// (1/(alpha-1)) ln sum_k a_k^alpha R(E_k). alpha > 0, alpha != 1.
ExtendedReal simple_divergence(const SimpleFunction& s, const ProbabilityMeasure& R,
                               double alpha);

/// The same value through the mass-ratio form
/// (1/(alpha-1)) ln sum_k P_n(E_k)^alpha / R(E_k)^(alpha-1); a second
/// algebraic route for consistency checks.
ExtendedReal simple_divergence_mass_ratio_form(const SimpleFunction& s,
                                               const ProbabilityMeasure& R,
                                               double alpha);

}  // namespace gyp
