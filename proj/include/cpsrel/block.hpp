#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cpsrel/failure_model.hpp"

namespace cpsrel {

enum class ModuleKind {
  Sensor,
  Actuator,
  Network,
  ComputeHardware,
  ComputeSoftware,
  ComputeInteraction,
  Other,
};

std::string to_string(ModuleKind kind);
ModuleKind module_kind_from_string(const std::string& name);

/// Mission window policy of a component. Fresh-start components evaluate
/// R over (0, mission]; test-windowed ones over (t_start, t_start + mission].
struct MissionWindow {
  double t_start = 0.0;  ///< hours; 0 means fresh start

  static MissionWindow fresh_start() { return MissionWindow{0.0}; }
  static MissionWindow test_window(double t_start);
};

struct Component {
  std::string id;
  std::string name;
  ModuleKind kind = ModuleKind::Other;
  FailureModel model;
  MissionWindow window;

  Component(std::string id, std::string name, ModuleKind kind,
            FailureModel model,
            MissionWindow window = MissionWindow::fresh_start());

  double reliability(double mission_hours) const;
};

/// Recursive reliability block: a leaf component or a series / parallel /
/// k-of-n group over child blocks.
struct Block {
  enum class Kind { Leaf, Series, Parallel, KofN };

  Kind kind = Kind::Leaf;
  std::optional<Component> component;  // Leaf only
  std::size_t k = 0;                   // KofN only
  std::vector<Block> children;

  static Block leaf(Component component);
  static Block series(std::vector<Block> children);
  static Block parallel(std::vector<Block> children);
  static Block k_of_n(std::size_t k, std::vector<Block> children);

  std::size_t leaf_count() const;
  void collect_leaves(std::vector<const Component*>& out) const;
  /// Rejects duplicate component ids across the tree.
  void validate_unique_ids() const;
};

/// Eq-style product composition over per-part reliabilities.
double series_reliability(const std::vector<double>& parts);

/// 1 - prod(1 - R_i) over redundant parts.
double parallel_reliability(const std::vector<double>& parts);

/// Probability that at least k of the independent, possibly heterogeneous
/// parts function; exact O(n*k) convolution.
double k_of_n_reliability(std::size_t k, const std::vector<double>& parts);

/// Recursive reliability of a block tree for the given mission.
double evaluate_block(const Block& block, double mission_hours);

}  // namespace cpsrel
