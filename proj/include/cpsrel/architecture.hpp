#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpsrel/block.hpp"

namespace cpsrel {

/// How sub-module reliabilities are merged into one figure.
/// Product is the probabilistically sound default; LiteralSum reproduces the
/// additive formulation verbatim (and may exceed 1); NormalizedMean is the
/// bounded weighted compromise.
struct CombinerMode {
  enum class Kind { Product, LiteralSum, NormalizedMean };

  Kind kind = Kind::Product;
  std::vector<double> weights;  // NormalizedMean only

  static CombinerMode product() { return {Kind::Product, {}}; }
  static CombinerMode literal_sum() { return {Kind::LiteralSum, {}}; }
  static CombinerMode normalized_mean(std::vector<double> weights);

  std::string name() const;
};

/// A combined value plus the flag marking raw sums that left [0, 1].
struct CombinedValue {
  double value = 0.0;
  bool exceeds_unity = false;
};

/// Merge the software / hardware / interaction reliabilities of the
/// computation-and-control module.
CombinedValue cc_reliability(double sw, double hw, double sh,
                             const CombinerMode& mode);

/// The four-module CPS layout: sensors, actuators, network, and the
/// computation-and-control module split into software / hardware /
/// interaction parts, optionally multiplied by a data-reliability score.
struct CpsArchitecture {
  Block sensors;
  Block actuators;
  Block network;
  Block cc_software;
  Block cc_hardware;
  Block cc_interaction;
  CombinerMode cc_mode = CombinerMode::product();
  double mission_hours = 0.0;
  std::optional<double> data_reliability;

  void validate() const;
};

/// Per-module factors of one whole-system evaluation.
struct CpsBreakdown {
  double sensors = 0.0;
  double actuators = 0.0;
  double network = 0.0;
  double cc_software = 0.0;
  double cc_hardware = 0.0;
  double cc_interaction = 0.0;
  CombinedValue cc;
  double cps_without_data = 0.0;
  std::optional<double> cps_with_data;

  double final_value() const {
    return cps_with_data ? *cps_with_data : cps_without_data;
  }
};

/// Whole-system reliability with per-module factors. A LiteralSum cc_mode is
/// refused unless allow_literal_sum is set, since the raw sum is not a
/// probability and would silently corrupt the product.
CpsBreakdown evaluate_cps(const CpsArchitecture& arch,
                          bool allow_literal_sum = false);

double cps_reliability(const CpsArchitecture& arch,
                       bool allow_literal_sum = false);

}  // namespace cpsrel
