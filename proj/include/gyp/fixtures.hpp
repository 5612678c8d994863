#pragma once

#include <random>
#include <string>
#include <vector>

#include "gyp/measure.hpp"

namespace gyp::fixtures {

struct FixturePair {
  std::string name;
  ProbabilityMeasure P;
  ProbabilityMeasure R;
};

/// Absolutely continuous polynomial fixture pairs with bounded dP/dR.
std::vector<FixturePair> continuous_pairs();

/// Pairs where P is not absolutely continuous w.r.t. R.
std::vector<FixturePair> non_ac_continuous_pairs();

/// Random strictly positive pmf pair on 2..max_atoms atoms (always AC).
/// Masses are bounded away from zero so log-ratios stay moderate.
FixturePair random_discrete_pair(std::mt19937_64& rng, int max_atoms = 12);

/// Random discrete pair with at least one atom of positive P-mass and zero
/// R-mass (never AC).
FixturePair random_non_ac_discrete_pair(std::mt19937_64& rng, int max_atoms = 12);

/// Random subinterval of the union support of a continuous pair.
Interval random_subinterval(std::mt19937_64& rng, const ProbabilityMeasure& P,
                            const ProbabilityMeasure& R);

}  // namespace gyp::fixtures
