#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace gyp {

/// Extended real line: finite values plus +inf / -inf.
///
/// Arithmetic follows the conventions used throughout the library:
/// ln 0 = -inf, ln(a/0) = +inf for a > 0, and 0 * (+-inf) = 0.
class ExtendedReal {
 public:
  constexpr ExtendedReal() : v_(0.0) {}
  constexpr ExtendedReal(double v) : v_(v) {}

  static constexpr ExtendedReal infinity() {
    return ExtendedReal(std::numeric_limits<double>::infinity());
  }
  static constexpr ExtendedReal neg_infinity() {
    return ExtendedReal(-std::numeric_limits<double>::infinity());
  }

  constexpr double value() const { return v_; }
  bool finite() const { return std::isfinite(v_); }
  bool is_pos_inf() const { return std::isinf(v_) && v_ > 0; }
  bool is_neg_inf() const { return std::isinf(v_) && v_ < 0; }

  ExtendedReal operator-() const { return ExtendedReal(-v_); }

  friend ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    return ExtendedReal(a.v_ + b.v_);
  }
  friend ExtendedReal operator-(ExtendedReal a, ExtendedReal b) {
    return ExtendedReal(a.v_ - b.v_);
  }
  /// Multiplication with the 0 * inf = 0 convention.
  friend ExtendedReal operator*(ExtendedReal a, ExtendedReal b) {
    if ((a.v_ == 0.0 && std::isinf(b.v_)) || (b.v_ == 0.0 && std::isinf(a.v_)))
      return ExtendedReal(0.0);
    return ExtendedReal(a.v_ * b.v_);
  }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

  /// ln x with ln 0 = -inf.
  static ExtendedReal log(double x) {
    if (x == 0.0) return neg_infinity();
    return ExtendedReal(std::log(x));
  }

  /// ln(a/b) with ln(a/0) = +inf for a > 0 and ln(0/b) = -inf for b > 0.
  static ExtendedReal log_ratio(double a, double b) {
    if (b == 0.0) {
      if (a == 0.0) return ExtendedReal(0.0);  // unused by convention (mass 0 term)
      return infinity();
    }
    if (a == 0.0) return neg_infinity();
    return ExtendedReal(std::log(a / b));
  }

  /// 17 significant digits; infinities render as "inf" / "-inf".
  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v_);
    return buf;
  }

 private:
  double v_;
};

}  // namespace gyp
