#include "gyp/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gyp {

namespace {
constexpr double kTrimEps = 0.0;  // exact zeros only; callers decide tolerances
}

Polynomial::Polynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!c_.empty() && std::abs(c_.back()) <= kTrimEps) c_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<double> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  std::vector<double> a(c_.size() + 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) a[i + 1] = c_[i] / static_cast<double>(i + 1);
  return Polynomial(std::move(a));
}

double Polynomial::integral(double lo, double hi) const {
  Polynomial f = antiderivative();
  return f(hi) - f(lo);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  std::vector<double> r(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (c_.empty() || o.c_.empty()) return Polynomial();
  std::vector<double> r(c_.size() + o.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(r));
}

Polynomial Polynomial::scaled(double s) const {
  std::vector<double> r(c_);
  for (double& x : r) x *= s;
  return Polynomial(std::move(r));
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial r = constant(1.0);
  Polynomial b = *this;
  while (n > 0) {
    if (n & 1u) r = r * b;
    b = b * b;
    n >>= 1u;
  }
  return r;
}

namespace {

// Bisection on a monotone bracket [a, b] with f(a), f(b) of opposite sign.
double bisect(const Polynomial& p, double a, double b, double fa, double xtol) {
  for (int it = 0; it < 200; ++it) {
    double m = 0.5 * (a + b);
    if (b - a <= xtol) return m;
    double fm = p(m);
    if (fm == 0.0) return m;
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::vector<double> Polynomial::roots_in(double lo, double hi, double xtol) const {
  std::vector<double> roots;
  if (degree() <= 0 || lo >= hi) return roots;
  if (degree() == 1) {
    double r = -c_[0] / c_[1];
    if (r > lo && r < hi) roots.push_back(r);
    return roots;
  }
  std::vector<double> brk = derivative().roots_in(lo, hi, xtol);
  brk.insert(brk.begin(), lo);
  brk.push_back(hi);
  for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
    double a = brk[i], b = brk[i + 1];
    double fa = (*this)(a), fb = (*this)(b);
    if (fa == 0.0 && a > lo) {
      if (roots.empty() || a - roots.back() > xtol) roots.push_back(a);
      continue;
    }
    if ((fa < 0) != (fb < 0) && fa != 0.0 && fb != 0.0) {
      double r = bisect(*this, a, b, fa, xtol);
      if (r > lo && r < hi && (roots.empty() || r - roots.back() > xtol)) roots.push_back(r);
    }
  }
  return roots;
}

std::pair<double, double> Polynomial::range_on(double lo, double hi) const {
  double mx = (*this)(lo), mn = mx;
  auto consider = [&](double x) {
    double v = (*this)(x);
    mx = std::max(mx, v);
    mn = std::min(mn, v);
  };
  consider(hi);
  for (double x : derivative().roots_in(lo, hi)) consider(x);
  return {mx, mn};
}

}  // namespace gyp
