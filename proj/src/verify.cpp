#include "gyp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gyp/engine.hpp"
#include "gyp/fixtures.hpp"
#include "gyp/measure.hpp"
#include "gyp/partition.hpp"
#include "gyp/quadrature.hpp"
#include "gyp/simple_approx.hpp"

namespace gyp {

namespace {

using fixtures::FixturePair;

struct Tracker {
  double max_violation = -std::numeric_limits<double>::infinity();
  int trials = 0;
  std::string first_detail;

  void record(double violation, bool bad, const std::string& detail) {
    ++trials;
    max_violation = std::max(max_violation, violation);
    if (bad && first_detail.empty()) first_detail = detail;
  }
};

SuiteReport finish(const std::string& name, const Tracker& t, double bound) {
  SuiteReport r;
  r.suite = name;
  r.trials = t.trials;
  r.max_violation = t.max_violation;
  r.pass = t.max_violation <= bound && t.first_detail.empty();
  r.detail = t.first_detail;
  return r;
}

Partition random_continuous_partition(std::mt19937_64& rng, const ProbabilityMeasure& P,
                                      const ProbabilityMeasure& R, int max_cuts = 20) {
  auto sup = union_support(P, R);
  std::uniform_int_distribution<int> ncuts(0, max_cuts);
  std::vector<double> cuts;
  int n = ncuts(rng);
  for (int i = 0; i < n; ++i) {
    const Interval& s = sup[std::uniform_int_distribution<std::size_t>(
        0, sup.size() - 1)(rng)];
    cuts.push_back(std::uniform_real_distribution<double>(s.lo, s.hi)(rng));
  }
  return Partition::from_breakpoints(sup, std::move(cuts));
}

SuiteReport suite_holder(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  const double alphas[] = {1.5, 2.0, 3.0};
  for (const auto& fp : fixtures::continuous_pairs()) {
    for (int i = 0; i < 60; ++i) {
      Cell c = Cell::of_intervals({fixtures::random_subinterval(rng, fp.P, fp.R)});
      for (double a : alphas) {
        auto [lhs, rhs] = holder_cell_check(fp.P, fp.R, c, a);
        double v = lhs - rhs;
        t.record(v, v > 1e-9, v > 1e-9 ? fp.name + " cell violates Holder bound" : "");
      }
    }
  }
  for (int i = 0; i < 40; ++i) {
    FixturePair fp = fixtures::random_discrete_pair(rng);
    std::uniform_int_distribution<std::size_t> pick(0, fp.P.masses.size() - 1);
    std::vector<std::size_t> atoms{pick(rng), pick(rng)};
    Cell c = Cell::of_atoms(atoms);
    for (double a : alphas) {
      auto [lhs, rhs] = holder_cell_check(fp.P, fp.R, c, a);
      double v = lhs - rhs;
      t.record(v, v > 1e-9, v > 1e-9 ? "discrete cell violates Holder bound" : "");
    }
  }
  return finish("holder", t, 1e-9);
}

SuiteReport suite_lowerbound(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  const double alphas[] = {1.5, 2.0, 3.0};
  for (const auto& fp : fixtures::continuous_pairs()) {
    std::vector<ExtendedReal> oracles;
    for (double a : alphas) oracles.push_back(renyi_divergence(fp.P, fp.R, a));
    ExtendedReal kl_oracle = kl_divergence(fp.P, fp.R);
    for (int i = 0; i < 50; ++i) {
      Partition pi = random_continuous_partition(rng, fp.P, fp.R);
      PartitionStats st = partition_stats(fp.P, fp.R, pi);
      for (std::size_t k = 0; k < 3; ++k) {
        double v = partition_renyi(st, alphas[k]).value() - oracles[k].value();
        t.record(v, v > 1e-9, v > 1e-9 ? fp.name + " partition exceeds oracle" : "");
      }
      double v = partition_kl(st).value() - kl_oracle.value();
      t.record(v, v > 1e-9, v > 1e-9 ? fp.name + " KL partition exceeds oracle" : "");
    }
  }
  return finish("lowerbound", t, 1e-9);
}

SuiteReport suite_monotonic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  auto pairs = fixtures::continuous_pairs();
  for (int chain = 0; chain < 60; ++chain) {
    const auto& fp = pairs[chain % pairs.size()];
    Partition pi = Partition::trivial(Cell::of_intervals(union_support(fp.P, fp.R)));
    double prev_r = partition_renyi(partition_stats(fp.P, fp.R, pi), 2.0).value();
    double prev_k = partition_kl(partition_stats(fp.P, fp.R, pi)).value();
    for (int s = 0; s < 20; ++s) {
      std::uniform_int_distribution<std::size_t> pick(0, pi.cells.size() - 1);
      std::size_t k = pick(rng);
      const Interval& iv = pi.cells[k].intervals[std::uniform_int_distribution<
          std::size_t>(0, pi.cells[k].intervals.size() - 1)(rng)];
      double x = std::uniform_real_distribution<double>(iv.lo, iv.hi)(rng);
      if (x <= iv.lo || x >= iv.hi) continue;
      pi = split_cell(pi, k, SplitSpec{x, {}});
      PartitionStats st = partition_stats(fp.P, fp.R, pi);
      double vr = partition_renyi(st, 2.0).value();
      double vk = partition_kl(st).value();
      double v = std::max(prev_r - vr, prev_k - vk);
      t.record(v, v > 1e-12, v > 1e-12 ? fp.name + " refinement decreased value" : "");
      prev_r = vr;
      prev_k = vk;
    }
  }
  return finish("monotonic", t, 1e-12);
}

SuiteReport suite_transform(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  const double qs[] = {1.5, 2.0, 3.0};
  for (const auto& fp : fixtures::continuous_pairs()) {
    for (double q : qs) {
      double a = tsallis_divergence(fp.P, fp.R, q).value();
      double b = renyi_to_tsallis(renyi_divergence(fp.P, fp.R, q), q).value();
      double v = std::abs(a - b);
      t.record(v, v > 1e-10, v > 1e-10 ? fp.name + " transform mismatch" : "");
    }
  }
  for (int i = 0; i < 200; ++i) {
    double q = std::uniform_real_distribution<double>(1.1, 4.0)(rng);
    double x = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    double v = std::abs(tsallis_to_renyi(renyi_to_tsallis(x, q), q).value() - x);
    t.record(v, v > 1e-12, v > 1e-12 ? "round trip drift" : "");
  }
  return finish("transform", t, 1e-10);
}

SuiteReport suite_quantize(std::uint64_t) {
  Tracker t;
  const auto P = ProbabilityMeasure::beta(2, 2);
  const auto R = ProbabilityMeasure::uniform(0.0, 1.0);
  DensityEvaluator phi = rn_derivative(P, R);
  std::vector<SimpleFunction> fs;
  for (int n = 1; n <= 9; ++n) fs.push_back(quantize_rn_derivative(phi, R, n));
  // pointwise monotone below phi on a grid
  for (int i = 0; i <= 10000; ++i) {
    double x = i / 10000.0;
    double prev = 0.0;
    for (int n = 0; n < 8; ++n) {
      double v = fs[n].value_at(x);
      double bad = std::max(prev - v, v - phi(x));
      t.record(bad, bad > 0, bad > 0 ? "pointwise monotonicity violated" : "");
      prev = v;
    }
  }
  // divergence values nondecreasing in n; two-form equality
  double prev = -1e300;
  for (int n = 0; n < 9; ++n) {
    double v = simple_divergence(fs[n], R, 2.0).value();
    double dec = prev - v;
    t.record(dec, dec > 1e-12, dec > 1e-12 ? "v_n decreased" : "");
    double eq = std::abs(v - simple_divergence_mass_ratio_form(fs[n], R, 2.0).value());
    t.record(eq, eq > 1e-12, eq > 1e-12 ? "two-form mismatch" : "");
    prev = v;
  }
  return finish("quantize", t, 1e-12);
}

SuiteReport suite_identity(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  for (int i = 0; i < 50; ++i) {
    FixturePair fp = fixtures::random_discrete_pair(rng);
    for (OrderParam o : {OrderParam::kl(), OrderParam::renyi(2.0),
                         OrderParam::tsallis(2.0)}) {
      double v = entropy_divergence_identity_check(fp.P, fp.R, o);
      t.record(v, v > 1e-8, v > 1e-8 ? "discrete identity residual too large" : "");
    }
  }
  auto beta = ProbabilityMeasure::beta(2, 2);
  auto uni = ProbabilityMeasure::uniform(0.0, 1.0);
  for (OrderParam o :
       {OrderParam::kl(), OrderParam::renyi(2.0), OrderParam::tsallis(2.0)}) {
    double v = entropy_divergence_identity_check(beta, uni, o);
    t.record(v, v > 1e-8, v > 1e-8 ? "continuous identity residual too large" : "");
  }
  return finish("identity", t, 1e-8);
}

SuiteReport suite_limits(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  const double h = 1e-3, c_bound = 10.0;
  for (int i = 0; i < 100; ++i) {
    FixturePair fp = fixtures::random_discrete_pair(rng);
    double kl = kl_divergence(fp.P, fp.R).value();
    double near = renyi_divergence(fp.P, fp.R, 1.0 + h).value();
    double v = std::abs(near - kl) / h;  // empirical C
    t.record(v, v > c_bound, v > c_bound ? "alpha->1 limit constant too large" : "");
  }
  return finish("limits", t, c_bound);
}

SuiteReport suite_rnconsistency(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  auto pairs = fixtures::continuous_pairs();
  for (int i = 0; i < 1000; ++i) {
    const auto& fp = pairs[i % pairs.size()];
    DensityEvaluator phi = rn_derivative(fp.P, fp.R);
    Cell c = Cell::of_intervals({fixtures::random_subinterval(rng, fp.P, fp.R)});
    double lhs = phi_integral_over_cell(phi, fp.R, c);
    double rhs = cell_mass(fp.P, c);
    double v = std::abs(lhs - rhs);
    t.record(v, v > 1e-9, v > 1e-9 ? fp.name + " rn-derivative inconsistency" : "");
  }
  return finish("rnconsistency", t, 1e-9);
}

SuiteReport suite_divergence(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Tracker t;
  for (int i = 0; i < 1000; ++i) {
    FixturePair fp = fixtures::random_discrete_pair(rng);
    double v = -kl_divergence(fp.P, fp.R).value();
    t.record(v, v > 1e-12, v > 1e-12 ? "divergence inequality violated" : "");
  }
  for (int i = 0; i < 20; ++i) {
    FixturePair fp = fixtures::random_discrete_pair(rng);
    double v = std::abs(kl_divergence(fp.P, fp.P).value());
    t.record(v, v > 1e-12, v > 1e-12 ? "I(P||P) != 0" : "");
  }
  return finish("divergence", t, 1e-12);
}

}  // namespace

std::vector<std::string> verify_suite_names() {
  return {"holder",   "lowerbound", "monotonic",     "transform", "quantize",
          "identity", "limits",     "rnconsistency", "divergence"};
}

std::vector<SuiteReport> run_verify_suites(const std::string& suite,
                                           std::uint64_t seed) {
  std::vector<SuiteReport> out;
  auto want = [&](const std::string& n) { return suite == "all" || suite == n; };
  if (want("holder")) out.push_back(suite_holder(seed));
  if (want("lowerbound")) out.push_back(suite_lowerbound(seed));
  if (want("monotonic")) out.push_back(suite_monotonic(seed));
  if (want("transform")) out.push_back(suite_transform(seed));
  if (want("quantize")) out.push_back(suite_quantize(seed));
  if (want("identity")) out.push_back(suite_identity(seed));
  if (want("limits")) out.push_back(suite_limits(seed));
  if (want("rnconsistency")) out.push_back(suite_rnconsistency(seed));
  if (want("divergence")) out.push_back(suite_divergence(seed));
  if (out.empty()) throw InputError("unknown verify suite: " + suite);
  return out;
}

}  // namespace gyp
