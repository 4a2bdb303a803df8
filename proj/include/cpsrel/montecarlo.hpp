#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>

#include "cpsrel/architecture.hpp"
#include "cpsrel/block.hpp"

namespace cpsrel {

struct SimulationConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  double mission_hours = 0.0;

  void validate() const;
};

struct SimulationEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  bool degenerate_ci = false;
};

/// Counter-style uniform draw in (0, 1) keyed by (seed, sample, component).
/// The same triple always yields the same value, so sample order and worker
/// count cannot change results.
double uniform_draw(std::uint64_t seed, std::uint64_t sample_index,
                    std::uint64_t component_index);

/// Bernoulli state at mission time: up iff draw < analytical reliability.
bool sample_component_up(const Component& component, double mission_hours,
                         double draw);

/// System state from component states via the block structure function.
bool structure_up(const Block& block,
                  const std::unordered_map<std::string, bool>& states);

SimulationEstimate simulate(const Block& block, const SimulationConfig& config);

/// Simulates the whole architecture as a series system over its six module
/// blocks. Only the Product cc_mode has a stochastic interpretation; other
/// modes are refused.
SimulationEstimate simulate(const CpsArchitecture& arch,
                            const SimulationConfig& config);

}  // namespace cpsrel
