#include <doctest.h>

#include <cmath>
#include <random>

#include "gyp/fixtures.hpp"
#include "gyp/quadrature.hpp"

using namespace gyp;

namespace {
const double kLn2 = std::log(2.0);
}

TEST_CASE("order parameter validation") {
  CHECK_NOTHROW(OrderParam::renyi(2.0));
  CHECK_NOTHROW(OrderParam::tsallis(0.5));
  CHECK_THROWS_AS(OrderParam::renyi(1.0), OrderOutOfRange);
  CHECK_THROWS_AS(OrderParam::tsallis(0.0), OrderOutOfRange);
  CHECK_THROWS_AS(OrderParam::renyi(-2.0), OrderOutOfRange);
}

TEST_CASE("shannon entropy") {
  auto u4 = ProbabilityMeasure::discrete({"a", "b", "c", "d"},
                                         {0.25, 0.25, 0.25, 0.25});
  CHECK(shannon_entropy(u4).value() == doctest::Approx(std::log(4.0)).epsilon(1e-12));

  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  CHECK(shannon_entropy(half).value() == doctest::Approx(-kLn2).epsilon(1e-10));

  auto beta = ProbabilityMeasure::beta(2, 2);
  CHECK(shannon_entropy(beta).value() ==
        doctest::Approx(5.0 / 3.0 - std::log(6.0)).epsilon(1e-9));
}

TEST_CASE("kl divergence") {
  auto P = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  auto R = ProbabilityMeasure::discrete({"a", "b"}, {0.25, 0.75});
  CHECK(kl_divergence(P, R).value() ==
        doctest::Approx(0.5 * std::log(4.0 / 3.0)).epsilon(1e-12));
  CHECK(kl_divergence(P, P).value() == doctest::Approx(0.0));

  auto wide = ProbabilityMeasure::uniform(0.0, 2.0);
  auto full = ProbabilityMeasure::uniform(0.0, 1.0);
  CHECK(kl_divergence(wide, full).is_pos_inf());
}

TEST_CASE("renyi entropy") {
  auto u4 = ProbabilityMeasure::discrete({"a", "b", "c", "d"},
                                         {0.25, 0.25, 0.25, 0.25});
  CHECK(renyi_entropy(u4, 2.0).value() ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  CHECK(renyi_entropy(half, 2.0).value() == doctest::Approx(-kLn2).epsilon(1e-12));

  auto beta = ProbabilityMeasure::beta(2, 2);
  CHECK(renyi_entropy(beta, 2.0).value() ==
        doctest::Approx(-std::log(6.0 / 5.0)).epsilon(1e-10));
}

TEST_CASE("renyi divergence") {
  auto P = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  auto R = ProbabilityMeasure::discrete({"a", "b"}, {0.25, 0.75});
  CHECK(renyi_divergence(P, R, 2.0).value() ==
        doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));

  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  auto full = ProbabilityMeasure::uniform(0.0, 1.0);
  for (double a : {1.5, 2.0, 3.0, 5.0})
    CHECK(renyi_divergence(half, full, a).value() ==
          doctest::Approx(kLn2).epsilon(1e-10));

  auto beta = ProbabilityMeasure::beta(2, 2);
  CHECK(renyi_divergence(beta, full, 2.0).value() ==
        doctest::Approx(std::log(6.0 / 5.0)).epsilon(1e-10));
  CHECK(renyi_divergence(beta, full, 3.0).value() ==
        doctest::Approx(0.5 * std::log(216.0 / 140.0)).epsilon(1e-10));
}

TEST_CASE("tsallis entropy and divergence") {
  auto u4 = ProbabilityMeasure::discrete({"a", "b", "c", "d"},
                                         {0.25, 0.25, 0.25, 0.25});
  CHECK(tsallis_entropy(u4, 2.0).value() == doctest::Approx(0.75).epsilon(1e-12));

  auto point = ProbabilityMeasure::discrete({"a", "b"}, {1.0, 0.0});
  CHECK(tsallis_entropy(point, 2.0).value() == doctest::Approx(0.0));

  auto half = ProbabilityMeasure::uniform(0.0, 0.5);
  CHECK(tsallis_entropy(half, 2.0).value() == doctest::Approx(-1.0).epsilon(1e-12));

  auto P = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  auto R = ProbabilityMeasure::discrete({"a", "b"}, {0.25, 0.75});
  CHECK(tsallis_divergence(P, R, 2.0).value() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(tsallis_divergence(P, P, 2.0).value() == doctest::Approx(0.0));

  auto full = ProbabilityMeasure::uniform(0.0, 1.0);
  CHECK(tsallis_divergence(half, full, 2.0).value() ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("q_log") {
  CHECK(q_log(1.0, 2.0) == doctest::Approx(0.0));
  CHECK(q_log(1.0, 0.5) == doctest::Approx(0.0));
  CHECK(q_log(2.0, 1.0) == doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(q_log(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(q_log(0.0, 2.0), NonPositiveArgument);
}

TEST_CASE("renyi <-> tsallis transform") {
  CHECK(renyi_to_tsallis(std::log(4.0 / 3.0), 2.0).value() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(renyi_to_tsallis(0.0, 3.7).value() == doctest::Approx(0.0));
  CHECK(renyi_to_tsallis(ExtendedReal::infinity(), 2.0).is_pos_inf());
  CHECK(tsallis_to_renyi(1.0, 2.0).value() == doctest::Approx(kLn2).epsilon(1e-14));
  CHECK_THROWS_AS(tsallis_to_renyi(-2.0, 2.0), DomainError);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> qd(1.1, 4.0), vd(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    double q = qd(rng), v = vd(rng);
    CHECK(std::abs(tsallis_to_renyi(renyi_to_tsallis(v, q), q).value() - v) <= 1e-12);
  }
}

TEST_CASE("entropy-divergence identities") {
  auto P = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  CHECK(entropy_divergence_identity_check(P, P, OrderParam::kl()) <= 1e-12);

  auto P2 = ProbabilityMeasure::discrete({"a", "b"}, {0.75, 0.25});
  auto mu = ProbabilityMeasure::discrete({"a", "b"}, {0.5, 0.5});
  CHECK(entropy_divergence_identity_check(P2, mu, OrderParam::renyi(2.0)) <= 1e-12);

  auto beta = ProbabilityMeasure::beta(2, 2);
  auto u = ProbabilityMeasure::uniform(0.0, 1.0);
  CHECK(entropy_divergence_identity_check(beta, u, OrderParam::tsallis(2.0)) <= 1e-8);
  CHECK(entropy_divergence_identity_check(beta, u, OrderParam::kl()) <= 1e-8);
}

TEST_CASE("divergence inequality over random pairs") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 1000; ++i) {
    auto fp = fixtures::random_discrete_pair(rng);
    CHECK(kl_divergence(fp.P, fp.R).value() >= -1e-12);
  }
  for (int i = 0; i < 20; ++i) {
    auto fp = fixtures::random_discrete_pair(rng);
    CHECK(std::abs(kl_divergence(fp.P, fp.P).value()) <= 1e-12);
  }
}

TEST_CASE("two integral routes for KL agree") {
  for (const auto& fp : fixtures::continuous_pairs()) {
    double a = kl_divergence(fp.P, fp.R).value();
    double b = kl_divergence_phi_form(fp.P, fp.R).value();
    CHECK(std::abs(a - b) <= 1e-8);
  }
}

TEST_CASE("alpha -> 1 recovers KL") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    auto fp = fixtures::random_discrete_pair(rng);
    double kl = kl_divergence(fp.P, fp.R).value();
    double h = 1e-3;
    CHECK(std::abs(renyi_divergence(fp.P, fp.R, 1.0 + h).value() - kl) <= 10.0 * h);
  }
}

TEST_CASE("generalized divergences are +inf exactly on non-AC pairs") {
  std::mt19937_64 rng(29);
  for (const auto& fp : fixtures::non_ac_continuous_pairs()) {
    CHECK(renyi_divergence(fp.P, fp.R, 2.0).is_pos_inf());
    CHECK(tsallis_divergence(fp.P, fp.R, 2.0).is_pos_inf());
    REQUIRE(check_absolute_continuity(fp.P, fp.R).has_value());
  }
  for (int i = 0; i < 50; ++i) {
    auto fp = fixtures::random_non_ac_discrete_pair(rng);
    CHECK(renyi_divergence(fp.P, fp.R, 2.0).is_pos_inf());
    CHECK(tsallis_divergence(fp.P, fp.R, 1.5).is_pos_inf());
  }
  for (int i = 0; i < 50; ++i) {
    auto fp = fixtures::random_discrete_pair(rng);
    CHECK_FALSE(renyi_divergence(fp.P, fp.R, 2.0).is_pos_inf());
  }
}

TEST_CASE("tsallis entropy equals the q_log integral form") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    auto fp = fixtures::random_discrete_pair(rng);
    double direct = tsallis_entropy(fp.P, 2.0).value();
    double via_qlog = 0.0;
    for (double m : fp.P.masses)
      if (m > 0.0) via_qlog += m * q_log(1.0 / m, 2.0);
    CHECK(std::abs(direct - via_qlog) <= 1e-10);
  }
}
