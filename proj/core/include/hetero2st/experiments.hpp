#pragma once

#include <array>
#include <string>
#include <vector>

#include "hetero2st/mixtures.hpp"

namespace hetero2st {

/// A named benchmark scenario: generators for the baseline and test samples
/// plus the default sample sizes and dimension.
struct ExperimentSetting {
  std::string name;
  MixtureSpec fx;
  MixtureSpec fy;
  std::int64_t n = 0;
  std::int64_t m = 0;
  int d = 0;
};

/// All scenario names accepted by experiment_spec.
const std::vector<std::string>& experiment_names();

/// Default (n, m, d) grid of a scenario.
std::vector<std::array<std::int64_t, 3>> experiment_grid(const std::string& name);

/// Construct a scenario. d = 0 selects the scenario default. component_seed
/// drives the scenario's random ingredients (random SPD covariances, the
/// zero-inflation probabilities); the baseline and test generators share
/// those ingredients, so callers wanting a fresh environment per replication
/// pass a fresh component_seed. Throws UnknownExperiment.
ExperimentSetting experiment_spec(const std::string& name, int d = 0,
                                  std::uint64_t component_seed = 0);

}  // namespace hetero2st
