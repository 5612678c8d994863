#pragma once

#include <vector>

namespace gyp {

/// Dense univariate polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }

  /// Degree of the trimmed polynomial; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<double>& coeffs() const { return c_; }

  double operator()(double x) const;

  Polynomial derivative() const;
  Polynomial antiderivative() const;
  /// Exact definite integral over [lo, hi].
  double integral(double lo, double hi) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(double s) const;
  Polynomial pow(unsigned n) const;

  /// Real roots inside the open interval (lo, hi), ascending, deduplicated.
  /// Uses derivative recursion: bisection on each monotone segment.
  std::vector<double> roots_in(double lo, double hi, double xtol = 1e-13) const;

  /// Max and min of the polynomial over [lo, hi] (via critical points).
  std::pair<double, double> range_on(double lo, double hi) const;

 private:
  void trim();
  std::vector<double> c_;
};

}  // namespace gyp
