#pragma once

#include <functional>

#include "gyp/extended_real.hpp"
#include "gyp/measure.hpp"

namespace gyp {

enum class Family { KL, Renyi, Tsallis };

/// Divergence family plus order. KL carries no order; Renyi/Tsallis require
/// order > 0 and != 1 (the order-1 limit is the KL family, explicitly).
struct OrderParam {
  Family family = Family::KL;
  double order = 1.0;

  static OrderParam kl() { return {Family::KL, 1.0}; }
  static OrderParam renyi(double alpha);
  static OrderParam tsallis(double q);
};

struct QuadratureConfig {
  double abs_tol = 1e-10;
  int max_depth = 40;
};

/// Adaptive Simpson integration of f over [a, b].
/// Throws QuadratureDidNotConverge past max_depth.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth);

/// S(p) = -int p ln p dmu (counting or Lebesgue base); p ln p -> 0 at p = 0.
ExtendedReal shannon_entropy(const ProbabilityMeasure& p, QuadratureConfig cfg = {});

/// I(P||R) = int p ln(p/r) dmu if P << R, else +inf.
ExtendedReal kl_divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                           QuadratureConfig cfg = {});

/// Same value through the phi-form int phi ln phi dR; a second algebraic
/// route kept for consistency checks.
ExtendedReal kl_divergence_phi_form(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R,
                                    QuadratureConfig cfg = {});

/// S_alpha(p) = (1/(1-alpha)) ln int p^alpha dmu.
ExtendedReal renyi_entropy(const ProbabilityMeasure& p, double alpha,
                           QuadratureConfig cfg = {});

/// I_alpha(P||R) = (1/(alpha-1)) ln int p^alpha / r^(alpha-1) dmu if P << R,
/// else +inf.
ExtendedReal renyi_divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                              double alpha, QuadratureConfig cfg = {});

/// S_q(p) = (1 - int p^q dmu) / (q - 1).
ExtendedReal tsallis_entropy(const ProbabilityMeasure& p, double q,
                             QuadratureConfig cfg = {});

/// I_q(P||R) = (int p^q / r^(q-1) dmu - 1) / (q - 1) if P << R, else +inf.
ExtendedReal tsallis_divergence(const ProbabilityMeasure& P,
                                const ProbabilityMeasure& R, double q,
                                QuadratureConfig cfg = {});

/// Dispatch on the order parameter.
ExtendedReal divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                        const OrderParam& order, QuadratureConfig cfg = {});

/// q-logarithm: (x^(1-q) - 1)/(1-q) for q != 1, ln x at q = 1. Requires x > 0.
double q_log(double x, double q);

/// (e^((q-1) v) - 1)/(q - 1); maps +inf to +inf.
ExtendedReal renyi_to_tsallis(ExtendedReal v, double q);
/// Inverse transform: (1/(q-1)) ln(1 + (q-1) v). Throws DomainError when
/// 1 + (q-1) v <= 0.
ExtendedReal tsallis_to_renyi(ExtendedReal v, double q);

/// |S(P) + I(P||mu)| with mu a validated probability measure and the entropy
/// computed relative to mu through the dP-side integral form. S = -I holds
/// for every family when mu is a probability measure.
double entropy_divergence_identity_check(const ProbabilityMeasure& P,
                                         const ProbabilityMeasure& mu,
                                         const OrderParam& order,
                                         QuadratureConfig cfg = {});

/// int_E phi^alpha dR = int_E p^alpha r^(1-alpha) dmu over a cell.
/// Exact closed form when alpha is a positive integer and r is piecewise
/// constant; adaptive Simpson otherwise. +inf when the cell meets an R-null
/// set of positive P-mass.
double power_ratio_integral(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                            double alpha, const Cell& cell, QuadratureConfig cfg = {});

/// int_c phi dR by adaptive Simpson on the pointwise evaluator; an
/// independent route to cell_mass(P, c) used by consistency checks.
double phi_integral_over_cell(const DensityEvaluator& phi, const ProbabilityMeasure& R,
                              const Cell& c, QuadratureConfig cfg = {});

}  // namespace gyp
