#include <doctest.h>

#include <cmath>
#include <random>

#include "gyp/fixtures.hpp"
#include "gyp/quadrature.hpp"
#include "gyp/simple_approx.hpp"

using namespace gyp;

TEST_CASE("quantizer recovers a simple phi exactly") {
  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  DensityEvaluator phi = rn_derivative(half, u);
  SimpleFunction s = quantize_rn_derivative(phi, u, 2);
  CHECK(s.value_at(0.25) == doctest::Approx(2.0));
  CHECK(s.value_at(0.75) == doctest::Approx(0.0));
  // induced measure equals P
  InducedMeasure pn = induced_measure(s, u);
  CHECK(pn.total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pn.mass(Cell::of_intervals({{0.0, 0.25}})) == doctest::Approx(0.5));
}

TEST_CASE("quantizer is the identity on phi == 1") {
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  DensityEvaluator phi = rn_derivative(u, u);
  for (int n : {1, 3, 6}) {
    SimpleFunction s = quantize_rn_derivative(phi, u, n);
    for (double x : {0.1, 0.5, 0.9}) CHECK(s.value_at(x) == doctest::Approx(1.0));
    CHECK(induced_measure(s, u).total_mass() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("quantizer levels for phi = 6x(1-x) at n = 1") {
  auto beta = ProbabilityMeasure::beta(2, 2);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  SimpleFunction s = quantize_rn_derivative(rn_derivative(beta, u), u, 1);
  // thresholds 1/2 and cap 1: phi < 1/2 near the edges, 1/2 <= phi < 1 in a
  // band, phi >= 1 in the middle
  double r1 = (3.0 - std::sqrt(6.0)) / 6.0;   // phi = 1/2
  double r2 = (3.0 - std::sqrt(3.0)) / 6.0;   // phi = 1
  CHECK(s.value_at(0.5 * r1) == doctest::Approx(0.0));
  CHECK(s.value_at(0.5 * (r1 + r2)) == doctest::Approx(0.5));
  CHECK(s.value_at(0.5) == doctest::Approx(1.0));
  std::vector<double> sorted = s.levels;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<double>{0.0, 0.5, 1.0});
  // cell mass of the middle band by antiderivative
  InducedMeasure pn = induced_measure(s, u);
  CHECK(pn.total_mass() < 1.0);
}

TEST_CASE("pointwise monotone ladder below phi") {
  auto beta = ProbabilityMeasure::beta(2, 2);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  DensityEvaluator phi = rn_derivative(beta, u);
  std::vector<SimpleFunction> fs;
  for (int n = 1; n <= 9; ++n) fs.push_back(quantize_rn_derivative(phi, u, n));
  for (int i = 0; i <= 10000; ++i) {
    double x = i / 10000.0;
    double prev = 0.0;
    for (int n = 0; n < 8; ++n) {
      double v = fs[n].value_at(x);
      REQUIRE(v >= prev);
      REQUIRE(v <= phi(x));
      prev = v;
    }
  }
}

TEST_CASE("simple divergences increase to the integral value") {
  auto beta = ProbabilityMeasure::beta(2, 2);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  DensityEvaluator phi = rn_derivative(beta, u);
  double oracle = std::log(6.0 / 5.0);
  double prev = -1e300;
  for (int n = 1; n <= 12; ++n) {
    SimpleFunction s = quantize_rn_derivative(phi, u, n);
    double v = simple_divergence(s, u, 2.0).value();
    CHECK(v >= prev - 1e-12);
    CHECK(v <= oracle + 1e-9);
    // two-form equality (Lemma 2): levels are not P_n(E)/R(E) here, so use
    // the induced measure's own masses
    double v2 = simple_divergence_mass_ratio_form(s, u, 2.0).value();
    CHECK(std::abs(v - v2) <= 1e-12);
    prev = v;
  }
  // n = 12 quantizer sits within ~2^-12-scale slack of the integral
  CHECK(oracle - prev <= 3e-4);
}

TEST_CASE("simple divergence closed forms") {
  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  SimpleFunction s = quantize_rn_derivative(rn_derivative(half, u), u, 2);
  CHECK(simple_divergence(s, u, 2.0).value() ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));

  SimpleFunction ones = quantize_rn_derivative(rn_derivative(u, u), u, 1);
  CHECK(simple_divergence(ones, u, 2.0).value() == doctest::Approx(0.0));
}

TEST_CASE("induced measure converges to P") {
  auto beta = ProbabilityMeasure::beta(2, 2);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  SimpleFunction s = quantize_rn_derivative(rn_derivative(beta, u), u, 20);
  InducedMeasure pn = induced_measure(s, u);
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    Cell c = Cell::of_intervals({fixtures::random_subinterval(rng, beta, u)});
    CHECK(std::abs(pn.mass(c) - cell_mass(beta, c)) <= 1e-6);
  }
}

TEST_CASE("discrete quantization") {
  auto P = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  auto R = ProbabilityMeasure::discrete({"a", "b"}, {0.25, 0.75});
  DensityEvaluator phi = rn_derivative(P, R);  // ratios 2, 2/3
  SimpleFunction s = quantize_rn_derivative(phi, R, 4);
  CHECK(s.value_at_atom(0) == doctest::Approx(2.0));
  CHECK(s.value_at_atom(1) == doctest::Approx(std::floor((2.0 / 3.0) * 16) / 16));
  InducedMeasure pn = induced_measure(s, R);
  CHECK(pn.total_mass() <= 1.0 + 1e-12);
}
