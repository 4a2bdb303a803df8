#include "cpsrel/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "cpsrel/errors.hpp"

namespace cpsrel {

void SimulationConfig::validate() const {
  if (samples < 1) throw ValidationError("samples must be >= 1");
  if (!(mission_hours >= 0.0)) throw ValidationError("mission must be >= 0");
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct LeafProbe {
  const Component* component;
  double reliability;
};

// Flattened structure-function evaluation over a leaf-ordered state vector.
bool eval_states(const Block& block, const std::vector<char>& up,
                 std::size_t& cursor) {
  switch (block.kind) {
    case Block::Kind::Leaf:
      return up[cursor++] != 0;
    case Block::Kind::Series: {
      bool ok = true;
      for (const auto& c : block.children) ok = eval_states(c, up, cursor) && ok;
      return ok;
    }
    case Block::Kind::Parallel: {
      bool ok = false;
      for (const auto& c : block.children) ok = eval_states(c, up, cursor) || ok;
      return ok;
    }
    case Block::Kind::KofN: {
      std::size_t count = 0;
      for (const auto& c : block.children) {
        if (eval_states(c, up, cursor)) ++count;
      }
      return count >= block.k;
    }
  }
  throw ValidationError("corrupt block kind");
}

SimulationEstimate run(const std::vector<const Block*>& blocks,
                       const SimulationConfig& config) {
  config.validate();
  std::vector<LeafProbe> leaves;
  for (const Block* b : blocks) {
    std::vector<const Component*> cs;
    b->collect_leaves(cs);
    for (const Component* c : cs) {
      leaves.push_back({c, c->reliability(config.mission_hours)});
    }
  }

  const std::uint64_t total = config.samples;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      total >= 10000 ? 8u : 1u));
  std::atomic<std::uint64_t> successes{0};

  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t local = 0;
    std::vector<char> up(leaves.size());
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < leaves.size(); ++i) {
        const double draw = uniform_draw(config.seed, s, i);
        up[i] = draw < leaves[i].reliability ? 1 : 0;
      }
      bool ok = true;
      std::size_t cursor = 0;
      for (const Block* b : blocks) {
        ok = eval_states(*b, up, cursor) && ok;
      }
      if (ok) ++local;
    }
    successes += local;
  };

  if (workers == 1) {
    worker(0, total);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(total, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back(worker, begin, end);
    }
    for (auto& t : threads) t.join();
  }

  SimulationEstimate est;
  est.samples = total;
  est.seed = config.seed;
  est.p_hat = static_cast<double>(successes.load()) / static_cast<double>(total);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                            static_cast<double>(total));
  est.ci_lo = est.p_hat - 1.96 * est.std_error;
  est.ci_hi = est.p_hat + 1.96 * est.std_error;
  est.degenerate_ci = est.std_error == 0.0 || total < 30;
  return est;
}

}  // namespace

double uniform_draw(std::uint64_t seed, std::uint64_t sample_index,
                    std::uint64_t component_index) {
  const std::uint64_t h =
      mix64(seed ^ mix64(sample_index ^ mix64(component_index)));
  // 53 high bits, offset by half a step so the draw is strictly inside (0, 1)
  return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

bool sample_component_up(const Component& component, double mission_hours,
                         double draw) {
  if (!(draw > 0.0 && draw < 1.0)) {
    throw ValidationError("draw must lie in (0, 1)");
  }
  return draw < component.reliability(mission_hours);
}

bool structure_up(const Block& block,
                  const std::unordered_map<std::string, bool>& states) {
  switch (block.kind) {
    case Block::Kind::Leaf: {
      const auto it = states.find(block.component->id);
      if (it == states.end()) {
        throw ValidationError("no state for component '" + block.component->id +
                              "'");
      }
      return it->second;
    }
    case Block::Kind::Series: {
      bool ok = true;
      for (const auto& c : block.children) ok = structure_up(c, states) && ok;
      return ok;
    }
    case Block::Kind::Parallel: {
      bool ok = false;
      for (const auto& c : block.children) ok = structure_up(c, states) || ok;
      return ok;
    }
    case Block::Kind::KofN: {
      std::size_t count = 0;
      for (const auto& c : block.children) {
        if (structure_up(c, states)) ++count;
      }
      return count >= block.k;
    }
  }
  throw ValidationError("corrupt block kind");
}

SimulationEstimate simulate(const Block& block, const SimulationConfig& config) {
  block.validate_unique_ids();
  return run({&block}, config);
}

SimulationEstimate simulate(const CpsArchitecture& arch,
                            const SimulationConfig& config) {
  arch.validate();
  if (arch.cc_mode.kind != CombinerMode::Kind::Product) {
    throw ValidationError(
        "simulation requires the product cc_mode; sum-style combiners have "
        "no sampling interpretation");
  }
  return run({&arch.sensors, &arch.actuators, &arch.network, &arch.cc_software,
              &arch.cc_hardware, &arch.cc_interaction},
             config);
}

}  // namespace cpsrel
