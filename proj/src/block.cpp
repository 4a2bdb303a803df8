#include "cpsrel/block.hpp"

#include <algorithm>
#include <unordered_set>
#include <utility>

#include "cpsrel/errors.hpp"

namespace cpsrel {

std::string to_string(ModuleKind kind) {
  switch (kind) {
    case ModuleKind::Sensor: return "Sensor";
    case ModuleKind::Actuator: return "Actuator";
    case ModuleKind::Network: return "Network";
    case ModuleKind::ComputeHardware: return "ComputeHardware";
    case ModuleKind::ComputeSoftware: return "ComputeSoftware";
    case ModuleKind::ComputeInteraction: return "ComputeInteraction";
    case ModuleKind::Other: return "Other";
  }
  return "Other";
}

ModuleKind module_kind_from_string(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "sensor") return ModuleKind::Sensor;
  if (lower == "actuator") return ModuleKind::Actuator;
  if (lower == "network") return ModuleKind::Network;
  if (lower == "computehardware") return ModuleKind::ComputeHardware;
  if (lower == "computesoftware") return ModuleKind::ComputeSoftware;
  if (lower == "computeinteraction") return ModuleKind::ComputeInteraction;
  if (lower == "other") return ModuleKind::Other;
  throw ValidationError("unknown module kind: " + name);
}

MissionWindow MissionWindow::test_window(double t_start) {
  if (!(t_start >= 0.0)) throw ValidationError("window t_start must be >= 0");
  return MissionWindow{t_start};
}

Component::Component(std::string id_, std::string name_, ModuleKind kind_,
                     FailureModel model_, MissionWindow window_)
    : id(std::move(id_)),
      name(std::move(name_)),
      kind(kind_),
      model(std::move(model_)),
      window(window_) {
  if (id.empty()) throw ValidationError("component id must be nonempty");
  if (kind == ModuleKind::ComputeSoftware &&
      std::holds_alternative<PowerLaw>(model)) {
    throw ValidationError("component '" + id +
                          "': software components take srgm or constant models");
  }
}

double Component::reliability(double mission_hours) const {
  try {
    return windowed_reliability(model, window.t_start, mission_hours);
  } catch (const ValidationError& e) {
    throw ValidationError("component '" + id + "': " + e.what());
  }
}

Block Block::leaf(Component component) {
  Block b;
  b.kind = Kind::Leaf;
  b.component = std::move(component);
  return b;
}

Block Block::series(std::vector<Block> children) {
  if (children.empty()) throw ValidationError("series block needs >= 1 child");
  Block b;
  b.kind = Kind::Series;
  b.children = std::move(children);
  return b;
}

Block Block::parallel(std::vector<Block> children) {
  if (children.empty()) throw ValidationError("parallel block needs >= 1 child");
  Block b;
  b.kind = Kind::Parallel;
  b.children = std::move(children);
  return b;
}

Block Block::k_of_n(std::size_t k, std::vector<Block> children) {
  if (children.empty()) throw ValidationError("k-of-n block needs >= 1 child");
  if (k < 1 || k > children.size()) {
    throw ValidationError("k-of-n bound violated: k must be in [1, n]");
  }
  Block b;
  b.kind = Kind::KofN;
  b.k = k;
  b.children = std::move(children);
  return b;
}

std::size_t Block::leaf_count() const {
  if (kind == Kind::Leaf) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

void Block::collect_leaves(std::vector<const Component*>& out) const {
  if (kind == Kind::Leaf) {
    out.push_back(&*component);
    return;
  }
  for (const auto& c : children) c.collect_leaves(out);
}

void Block::validate_unique_ids() const {
  std::vector<const Component*> leaves;
  collect_leaves(leaves);
  std::unordered_set<std::string> seen;
  for (const Component* c : leaves) {
    if (!seen.insert(c->id).second) {
      throw ValidationError("duplicate component id '" + c->id + "' in block tree");
    }
  }
}

namespace {

void check_probabilities(const std::vector<double>& parts) {
  if (parts.empty()) throw ValidationError("reliability list must be nonempty");
  for (double p : parts) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("reliability values must lie in [0, 1]");
    }
  }
}

}  // namespace

double series_reliability(const std::vector<double>& parts) {
  check_probabilities(parts);
  double r = 1.0;
  for (double p : parts) r *= p;
  return r;
}

double parallel_reliability(const std::vector<double>& parts) {
  check_probabilities(parts);
  if (parts.size() == 1) return parts.front();
  double fail = 1.0;
  for (double p : parts) fail *= 1.0 - p;
  return 1.0 - fail;
}

double k_of_n_reliability(std::size_t k, const std::vector<double>& parts) {
  check_probabilities(parts);
  const std::size_t n = parts.size();
  if (k < 1 || k > n) throw ValidationError("k must be in [1, n]");
  // dp[j] = P(exactly j of the processed parts work), j < k;
  // p_at_least_k absorbs everything reaching the threshold.
  std::vector<double> dp(k, 0.0);
  dp[0] = 1.0;
  double p_at_least_k = 0.0;
  for (double p : parts) {
    double carry = 0.0;  // probability flowing from j = k-1 up into >= k
    for (std::size_t j = k; j-- > 0;) {
      const double up = dp[j] * p;
      dp[j] *= 1.0 - p;
      if (j + 1 == k) {
        carry = up;
      } else {
        dp[j + 1] += up;
      }
    }
    p_at_least_k += carry;
  }
  return p_at_least_k;
}

double evaluate_block(const Block& block, double mission_hours) {
  if (!(mission_hours >= 0.0)) throw ValidationError("mission must be >= 0");
  switch (block.kind) {
    case Block::Kind::Leaf:
      return block.component->reliability(mission_hours);
    case Block::Kind::Series: {
      double r = 1.0;
      for (const auto& c : block.children) r *= evaluate_block(c, mission_hours);
      return r;
    }
    case Block::Kind::Parallel: {
      // Single-child groups reduce to the child value exactly.
      if (block.children.size() == 1) {
        return evaluate_block(block.children.front(), mission_hours);
      }
      double fail = 1.0;
      for (const auto& c : block.children) {
        fail *= 1.0 - evaluate_block(c, mission_hours);
      }
      return 1.0 - fail;
    }
    case Block::Kind::KofN: {
      if (block.children.size() == 1) {
        return evaluate_block(block.children.front(), mission_hours);
      }
      std::vector<double> parts;
      parts.reserve(block.children.size());
      for (const auto& c : block.children) {
        parts.push_back(evaluate_block(c, mission_hours));
      }
      return k_of_n_reliability(block.k, parts);
    }
  }
  throw ValidationError("corrupt block kind");
}

}  // namespace cpsrel
