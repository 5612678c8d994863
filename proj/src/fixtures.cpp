#include "gyp/fixtures.hpp"

#include <algorithm>

namespace gyp::fixtures {

namespace {

ProbabilityMeasure tent() {
  // 4x on [0, 1/2), 4 - 4x on [1/2, 1]
  return ProbabilityMeasure::density({
      {Interval{0.0, 0.5}, Polynomial({0.0, 4.0})},
      {Interval{0.5, 1.0}, Polynomial({4.0, -4.0})},
  });
}

}  // namespace

std::vector<FixturePair> continuous_pairs() {
  std::vector<FixturePair> out;
  out.push_back({"uniform_half_vs_uniform", ProbabilityMeasure::uniform(0.0, 0.5),
                 ProbabilityMeasure::uniform(0.0, 1.0)});
  out.push_back({"beta22_vs_uniform", ProbabilityMeasure::beta(2, 2),
                 ProbabilityMeasure::uniform(0.0, 1.0)});
  out.push_back({"beta23_vs_uniform", ProbabilityMeasure::beta(2, 3),
                 ProbabilityMeasure::uniform(0.0, 1.0)});
  out.push_back({"tent_vs_uniform", tent(), ProbabilityMeasure::uniform(0.0, 1.0)});
  // non-constant reference density; dP/dR = 1.5 (1 - x) on the left branch,
  // 1.5 x on the right, so it stays bounded
  out.push_back({"beta22_vs_tent", ProbabilityMeasure::beta(2, 2), tent()});
  return out;
}

std::vector<FixturePair> non_ac_continuous_pairs() {
  std::vector<FixturePair> out;
  out.push_back({"uniform02_vs_uniform01", ProbabilityMeasure::uniform(0.0, 2.0),
                 ProbabilityMeasure::uniform(0.0, 1.0)});
  out.push_back({"uniform01_vs_uniform_half", ProbabilityMeasure::uniform(0.0, 1.0),
                 ProbabilityMeasure::uniform(0.0, 0.5)});
  return out;
}

FixturePair random_discrete_pair(std::mt19937_64& rng, int max_atoms) {
  std::uniform_int_distribution<int> natoms(2, max_atoms);
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  int n = natoms(rng);
  std::vector<std::string> labels;
  std::vector<double> p(n), r(n);
  double ps = 0, rs = 0;
  for (int i = 0; i < n; ++i) {
    labels.push_back("a" + std::to_string(i));
    p[i] = weight(rng);
    r[i] = weight(rng);
    ps += p[i];
    rs += r[i];
  }
  for (int i = 0; i < n; ++i) {
    p[i] /= ps;
    r[i] /= rs;
  }
  FixturePair fp;
  fp.name = "random_discrete_" + std::to_string(n);
  fp.P = ProbabilityMeasure::discrete(labels, p);
  fp.R = ProbabilityMeasure::discrete(labels, r);
  return fp;
}

FixturePair random_non_ac_discrete_pair(std::mt19937_64& rng, int max_atoms) {
  FixturePair fp = random_discrete_pair(rng, max_atoms);
  // zero out one R-atom and renormalize; that atom keeps positive P-mass
  std::uniform_int_distribution<std::size_t> pick(0, fp.R.masses.size() - 1);
  std::size_t k = pick(rng);
  double removed = fp.R.masses[k];
  fp.R.masses[k] = 0.0;
  for (double& m : fp.R.masses) m /= (1.0 - removed);
  fp.name = "random_non_ac_discrete";
  return fp;
}

Interval random_subinterval(std::mt19937_64& rng, const ProbabilityMeasure& P,
                            const ProbabilityMeasure& R) {
  auto sup = union_support(P, R);
  std::uniform_int_distribution<std::size_t> pick(0, sup.size() - 1);
  const Interval& s = sup[pick(rng)];
  std::uniform_real_distribution<double> u(s.lo, s.hi);
  double a = u(rng), b = u(rng);
  if (a > b) std::swap(a, b);
  if (b - a < 1e-6) {
    double mid = 0.5 * (a + b);
    a = std::max(s.lo, mid - 1e-3);
    b = std::min(s.hi, mid + 1e-3);
  }
  return {a, b};
}

}  // namespace gyp::fixtures
