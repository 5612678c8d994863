#include <doctest.h>

#include <cmath>

#include "gyp/polynomial.hpp"

using gyp::Polynomial;

TEST_CASE("evaluation and arithmetic") {
  Polynomial p({0.0, 6.0, -6.0});  // 6x(1-x)
  CHECK(p(0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(p(0.0) == 0.0);
  CHECK(p(1.0) == doctest::Approx(0.0).epsilon(1e-15));

  Polynomial q = p + Polynomial::constant(1.0);
  CHECK(q(0.5) == doctest::Approx(2.5));
  Polynomial r = p * p;
  CHECK(r(0.5) == doctest::Approx(2.25));
  CHECK(r.degree() == 4);
  CHECK(p.pow(3)(0.5) == doctest::Approx(std::pow(1.5, 3)));
  CHECK((p - p).is_zero());
}

TEST_CASE("exact integration") {
  Polynomial p({0.0, 6.0, -6.0});
  // antiderivative 3x^2 - 2x^3
  CHECK(p.integral(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.integral(0.25, 0.75) == doctest::Approx(11.0 / 16.0).epsilon(1e-15));
  CHECK(p.integral(0.0, 0.25) == doctest::Approx(5.0 / 32.0).epsilon(1e-15));
  Polynomial sq = p * p;
  CHECK(sq.integral(0.0, 1.0) == doctest::Approx(6.0 / 5.0).epsilon(1e-14));
  Polynomial cube = p.pow(3);
  CHECK(cube.integral(0.0, 1.0) == doctest::Approx(216.0 / 140.0).epsilon(1e-14));
}

TEST_CASE("derivative") {
  Polynomial p({1.0, 2.0, 3.0});
  Polynomial d = p.derivative();
  CHECK(d.coeffs() == std::vector<double>{2.0, 6.0});
  CHECK(Polynomial::constant(5.0).derivative().is_zero());
}

TEST_CASE("roots on monotone segments") {
  Polynomial p({0.0, 6.0, -6.0});
  // 6x(1-x) = 0.5 at x = (3 +- sqrt(6)) / 6
  Polynomial g = p - Polynomial::constant(0.5);
  auto roots = g.roots_in(0.0, 1.0);
  REQUIRE(roots.size() == 2);
  double lo = (3.0 - std::sqrt(6.0)) / 6.0;
  double hi = (3.0 + std::sqrt(6.0)) / 6.0;
  CHECK(roots[0] == doctest::Approx(lo).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(hi).epsilon(1e-12));

  // no roots of 6x(1-x) = 2 (max is 1.5)
  CHECK((p - Polynomial::constant(2.0)).roots_in(0.0, 1.0).empty());

  // cubic with three known roots
  Polynomial c({0.0, -0.25, 0.0, 1.0});  // x^3 - x/4 = x(x-1/2)(x+1/2)
  auto cr = c.roots_in(-1.0, 1.0);
  REQUIRE(cr.size() == 3);
  CHECK(cr[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(cr[1] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cr[2] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("range over an interval") {
  Polynomial p({0.0, 6.0, -6.0});
  auto [mx, mn] = p.range_on(0.0, 1.0);
  CHECK(mx == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mn == doctest::Approx(0.0).epsilon(1e-12));
}
