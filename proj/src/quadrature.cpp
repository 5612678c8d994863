#include "gyp/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace gyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double env_abs_tol(double fallback) {
  if (const char* s = std::getenv("GYP_QUAD_TOL")) {
    char* end = nullptr;
    double v = std::strtod(s, &end);
    if (end != s && v > 0) return v;
  }
  return fallback;
}

struct SimpsonCtx {
  const std::function<double(double)>* f;
  int max_depth;
};

double simpson_rec(const SimpsonCtx& ctx, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = (*ctx.f)(lm), frm = (*ctx.f)(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (!std::isfinite(delta) || std::abs(delta) > 15.0 * tol) {
    if (depth >= ctx.max_depth) throw QuadratureDidNotConverge(depth);
    return simpson_rec(ctx, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           simpson_rec(ctx, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }
  return left + right + delta / 15.0;
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (b <= a) return 0.0;
  // Sample half an ulp inside the endpoints: piece boundaries may sit exactly
  // on density roots where the convention value differs from the limit.
  double ai = std::nextafter(a, b), bi = std::nextafter(b, a);
  double fa = f(ai), fb = f(bi), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  SimpsonCtx ctx{&f, max_depth};
  return simpson_rec(ctx, a, b, fa, fm, fb, whole, abs_tol, 0);
}

OrderParam OrderParam::renyi(double alpha) {
  if (!(alpha > 0.0)) throw OrderOutOfRange(alpha, "Renyi order must be positive");
  if (alpha == 1.0)
    throw OrderOutOfRange(alpha, "order 1 is the KL family; use it explicitly");
  return {Family::Renyi, alpha};
}

OrderParam OrderParam::tsallis(double q) {
  if (!(q > 0.0)) throw OrderOutOfRange(q, "Tsallis order must be positive");
  if (q == 1.0)
    throw OrderOutOfRange(q, "order 1 is the KL family; use it explicitly");
  return {Family::Tsallis, q};
}

namespace {

bool is_positive_integer(double a) {
  return a > 0.0 && a == std::floor(a) && a < 64.0;
}

// int p^alpha dmu over the measure's own pieces / atoms.
double power_integral(const ProbabilityMeasure& m, double alpha, QuadratureConfig cfg) {
  if (m.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (double p : m.masses)
      if (p > 0.0) terms.push_back(std::pow(p, alpha));
    return compensated_sum(terms);
  }
  double tol = env_abs_tol(cfg.abs_tol) / static_cast<double>(m.pieces.size());
  std::vector<double> terms;
  for (const auto& pc : m.pieces) {
    if (is_positive_integer(alpha)) {
      terms.push_back(
          pc.poly.pow(static_cast<unsigned>(alpha)).integral(pc.iv.lo, pc.iv.hi));
    } else {
      const Polynomial& poly = pc.poly;
      auto f = [&](double x) {
        double p = poly(x);
        return p > 0.0 ? std::pow(p, alpha) : 0.0;
      };
      terms.push_back(adaptive_simpson(f, pc.iv.lo, pc.iv.hi, tol, cfg.max_depth));
    }
  }
  return compensated_sum(terms);
}

}  // namespace

ExtendedReal shannon_entropy(const ProbabilityMeasure& p, QuadratureConfig cfg) {
  if (p.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (double m : p.masses)
      if (m > 0.0) terms.push_back(m * std::log(m));
    return ExtendedReal(-compensated_sum(terms));
  }
  double tol = env_abs_tol(cfg.abs_tol) / static_cast<double>(p.pieces.size());
  std::vector<double> terms;
  for (const auto& pc : p.pieces) {
    const Polynomial& poly = pc.poly;
    auto f = [&](double x) {
      double v = poly(x);
      return v > 0.0 ? v * std::log(v) : 0.0;
    };
    terms.push_back(adaptive_simpson(f, pc.iv.lo, pc.iv.hi, tol, cfg.max_depth));
  }
  return ExtendedReal(-compensated_sum(terms));
}

ExtendedReal kl_divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                           QuadratureConfig cfg) {
  if (check_absolute_continuity(P, R)) return ExtendedReal::infinity();
  if (P.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < P.masses.size(); ++i) {
      double p = P.masses[i];
      if (p > 0.0) terms.push_back(p * std::log(p / R.masses[i]));
    }
    return ExtendedReal(compensated_sum(terms));
  }
  auto pieces = align_pieces(P, R);
  double tol = env_abs_tol(cfg.abs_tol) / static_cast<double>(pieces.size());
  std::vector<double> terms;
  for (const auto& ap : pieces) {
    auto f = [&](double x) {
      double p = ap.p(x);
      if (p <= 0.0) return 0.0;
      double r = ap.r(x);
      if (r <= 0.0) return kInf;
      return p * std::log(p / r);
    };
    terms.push_back(adaptive_simpson(f, ap.iv.lo, ap.iv.hi, tol, cfg.max_depth));
  }
  return ExtendedReal(compensated_sum(terms));
}

ExtendedReal kl_divergence_phi_form(const ProbabilityMeasure& P,
                                    const ProbabilityMeasure& R,
                                    QuadratureConfig cfg) {
  if (check_absolute_continuity(P, R)) return ExtendedReal::infinity();
  if (P.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < P.masses.size(); ++i) {
      double r = R.masses[i];
      if (r <= 0.0) continue;
      double phi = P.masses[i] / r;
      if (phi > 0.0) terms.push_back(r * phi * std::log(phi));
    }
    return ExtendedReal(compensated_sum(terms));
  }
  auto pieces = align_pieces(P, R);
  double tol = env_abs_tol(cfg.abs_tol) / static_cast<double>(pieces.size());
  std::vector<double> terms;
  for (const auto& ap : pieces) {
    auto f = [&](double x) {
      double r = ap.r(x);
      if (r <= 0.0) return 0.0;
      double phi = ap.p(x) / r;
      if (phi <= 0.0) return 0.0;
      return r * phi * std::log(phi);
    };
    terms.push_back(adaptive_simpson(f, ap.iv.lo, ap.iv.hi, tol, cfg.max_depth));
  }
  return ExtendedReal(compensated_sum(terms));
}

ExtendedReal renyi_entropy(const ProbabilityMeasure& p, double alpha,
                           QuadratureConfig cfg) {
  OrderParam::renyi(alpha);  // validate
  double a = power_integral(p, alpha, cfg);
  return ExtendedReal::log(a) * ExtendedReal(1.0 / (1.0 - alpha));
}

double power_ratio_integral(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                            double alpha, const Cell& cell, QuadratureConfig cfg) {
  if (P.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (std::size_t i : cell.atoms) {
      if (i >= P.masses.size()) throw CellOutsideSupport();
      double p = P.masses[i], r = R.masses[i];
      if (p == 0.0) continue;
      if (r == 0.0) return kInf;
      terms.push_back(std::pow(p, alpha) * std::pow(r, 1.0 - alpha));
    }
    return compensated_sum(terms);
  }
  auto pieces = align_pieces(P, R);
  double tol = env_abs_tol(cfg.abs_tol) /
               static_cast<double>(pieces.size() * std::max<std::size_t>(cell.intervals.size(), 1));
  std::vector<double> terms;
  for (const Interval& iv : cell.intervals) {
    for (const auto& ap : pieces) {
      double lo = std::max(iv.lo, ap.iv.lo), hi = std::min(iv.hi, ap.iv.hi);
      if (hi <= lo) continue;
      if (ap.r.is_zero()) {
        if (ap.p.integral(lo, hi) > 0.0) return kInf;
        continue;
      }
      if (is_positive_integer(alpha) && ap.r.degree() <= 0) {
        double r0 = ap.r.coeffs().empty() ? 0.0 : ap.r.coeffs()[0];
        terms.push_back(std::pow(r0, 1.0 - alpha) *
                        ap.p.pow(static_cast<unsigned>(alpha)).integral(lo, hi));
      } else {
        const Polynomial &pp = ap.p, &rr = ap.r;
        // phi^alpha * r rather than p^alpha * r^(1-alpha): the direct power
        // form makes 0 * inf = NaN where both densities underflow near a
        // shared root, while phi = p/r stays bounded there
        auto f = [&](double x) {
          double p = pp(x);
          if (p <= 0.0) return 0.0;
          double r = rr(x);
          if (r <= 0.0) return kInf;
          return std::pow(p / r, alpha) * r;
        };
        terms.push_back(adaptive_simpson(f, lo, hi, tol, cfg.max_depth));
      }
    }
  }
  return compensated_sum(terms);
}

ExtendedReal renyi_divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                              double alpha, QuadratureConfig cfg) {
  OrderParam::renyi(alpha);  // validate
  if (check_absolute_continuity(P, R)) return ExtendedReal::infinity();
  Cell full = (P.kind == MeasureKind::Discrete)
                  ? P.support_cell()
                  : Cell::of_intervals(union_support(P, R));
  double a = power_ratio_integral(P, R, alpha, full, cfg);
  if (std::isinf(a)) return ExtendedReal::infinity();
  return ExtendedReal::log(a) * ExtendedReal(1.0 / (alpha - 1.0));
}

ExtendedReal tsallis_entropy(const ProbabilityMeasure& p, double q,
                             QuadratureConfig cfg) {
  OrderParam::tsallis(q);  // validate
  double a = power_integral(p, q, cfg);
  return ExtendedReal((1.0 - a) / (q - 1.0));
}

ExtendedReal tsallis_divergence(const ProbabilityMeasure& P,
                                const ProbabilityMeasure& R, double q,
                                QuadratureConfig cfg) {
  OrderParam::tsallis(q);  // validate
  if (check_absolute_continuity(P, R)) return ExtendedReal::infinity();
  Cell full = (P.kind == MeasureKind::Discrete)
                  ? P.support_cell()
                  : Cell::of_intervals(union_support(P, R));
  double a = power_ratio_integral(P, R, q, full, cfg);
  if (std::isinf(a)) return ExtendedReal::infinity();
  return ExtendedReal((a - 1.0) / (q - 1.0));
}

ExtendedReal divergence(const ProbabilityMeasure& P, const ProbabilityMeasure& R,
                        const OrderParam& order, QuadratureConfig cfg) {
  switch (order.family) {
    case Family::KL:
      return kl_divergence(P, R, cfg);
    case Family::Renyi:
      return renyi_divergence(P, R, order.order, cfg);
    case Family::Tsallis:
      return tsallis_divergence(P, R, order.order, cfg);
  }
  throw Error("unreachable");
}

double q_log(double x, double q) {
  if (!(x > 0.0)) throw NonPositiveArgument();
  if (q == 1.0) return std::log(x);
  return (std::pow(x, 1.0 - q) - 1.0) / (1.0 - q);
}

ExtendedReal renyi_to_tsallis(ExtendedReal v, double q) {
  if (q <= 0.0 || q == 1.0) throw OrderOutOfRange(q, "transform requires q > 0, q != 1");
  if (v.is_pos_inf()) return ExtendedReal::infinity();
  return ExtendedReal(std::expm1((q - 1.0) * v.value()) / (q - 1.0));
}

ExtendedReal tsallis_to_renyi(ExtendedReal v, double q) {
  if (q <= 0.0 || q == 1.0) throw OrderOutOfRange(q, "transform requires q > 0, q != 1");
  if (v.is_pos_inf()) return ExtendedReal::infinity();
  double arg = 1.0 + (q - 1.0) * v.value();
  if (arg <= 0.0) throw DomainError("tsallis_to_renyi: 1 + (q-1)v <= 0");
  return ExtendedReal(std::log(arg) / (q - 1.0));
}

namespace {

// Entropy of P relative to the probability measure mu, through the dP-side
// integral forms (int ... dP), as opposed to the dmu-side divergence route.
ExtendedReal entropy_wrt(const ProbabilityMeasure& P, const ProbabilityMeasure& mu,
                         const OrderParam& order, QuadratureConfig cfg) {
  if (P.kind == MeasureKind::Discrete) {
    std::vector<double> terms;
    for (std::size_t i = 0; i < P.masses.size(); ++i) {
      double p = P.masses[i];
      if (p <= 0.0) continue;
      double phi = p / mu.masses[i];
      switch (order.family) {
        case Family::KL:
          terms.push_back(-p * std::log(phi));
          break;
        case Family::Renyi:
          terms.push_back(p * std::pow(phi, order.order - 1.0));
          break;
        case Family::Tsallis:
          terms.push_back(p * q_log(1.0 / phi, order.order));
          break;
      }
    }
    double s = compensated_sum(terms);
    if (order.family == Family::Renyi)
      return ExtendedReal::log(s) * ExtendedReal(1.0 / (1.0 - order.order));
    return ExtendedReal(s);
  }
  auto pieces = align_pieces(P, mu);
  double tol = env_abs_tol(cfg.abs_tol) / static_cast<double>(pieces.size());
  std::vector<double> terms;
  for (const auto& ap : pieces) {
    auto f = [&](double x) {
      double p = ap.p(x);
      if (p <= 0.0) return 0.0;
      double m = ap.r(x);
      if (m <= 0.0) return kInf;
      double phi = p / m;
      switch (order.family) {
        case Family::KL:
          return -p * std::log(phi);
        case Family::Renyi:
          return p * std::pow(phi, order.order - 1.0);
        case Family::Tsallis:
          return p * q_log(1.0 / phi, order.order);
      }
      return 0.0;
    };
    terms.push_back(adaptive_simpson(f, ap.iv.lo, ap.iv.hi, tol, cfg.max_depth));
  }
  double s = compensated_sum(terms);
  if (order.family == Family::Renyi)
    return ExtendedReal::log(s) * ExtendedReal(1.0 / (1.0 - order.order));
  return ExtendedReal(s);
}

}  // namespace

double entropy_divergence_identity_check(const ProbabilityMeasure& P,
                                         const ProbabilityMeasure& mu,
                                         const OrderParam& order,
                                         QuadratureConfig cfg) {
  validate_measure(mu);
  ExtendedReal S = entropy_wrt(P, mu, order, cfg);
  ExtendedReal I = divergence(P, mu, order, cfg);
  // Relative to a probability measure mu, every family satisfies S = -I:
  // the dP-side entropy forms are the negated dmu-side divergence integrals.
  ExtendedReal resid = S + I;
  return std::abs(resid.value());
}

double phi_integral_over_cell(const DensityEvaluator& phi, const ProbabilityMeasure& R,
                              const Cell& c, QuadratureConfig cfg) {
  if (phi.discrete()) {
    std::vector<double> terms;
    for (std::size_t i : c.atoms) terms.push_back(phi.at_atom(i) * R.masses.at(i));
    return compensated_sum(terms);
  }
  // integrate piece by piece: phi may jump at its ratio-piece boundaries,
  // and adaptive Simpson does not terminate across a step discontinuity
  std::vector<double> terms;
  const auto& pieces = phi.ratio_pieces();
  double tol = env_abs_tol(cfg.abs_tol) /
               static_cast<double>(std::max<std::size_t>(
                   c.intervals.size() * std::max<std::size_t>(pieces.size(), 1), 1));
  auto f = [&](double x) {
    double r = R.density_at(x);
    if (r <= 0.0) return 0.0;
    return phi(x) * r;
  };
  for (const Interval& iv : c.intervals) {
    for (const auto& rp : pieces) {
      double lo = std::max(iv.lo, rp.iv.lo), hi = std::min(iv.hi, rp.iv.hi);
      if (hi <= lo) continue;
      terms.push_back(adaptive_simpson(f, lo, hi, tol, cfg.max_depth));
    }
  }
  return compensated_sum(terms);
}

}  // namespace gyp
