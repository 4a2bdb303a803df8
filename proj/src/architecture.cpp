#include "cpsrel/architecture.hpp"

#include <cmath>
#include <unordered_set>

#include "cpsrel/errors.hpp"

namespace cpsrel {

CombinerMode CombinerMode::normalized_mean(std::vector<double> weights) {
  if (weights.empty()) throw ValidationError("weights must be nonempty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("weights must sum to 1");
  }
  return {Kind::NormalizedMean, std::move(weights)};
}

std::string CombinerMode::name() const {
  switch (kind) {
    case Kind::Product: return "product";
    case Kind::LiteralSum: return "literal_sum";
    case Kind::NormalizedMean: return "normalized_mean";
  }
  return "product";
}

namespace {

CombinedValue combine(const std::vector<double>& values,
                      const CombinerMode& mode) {
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("combiner inputs must lie in [0, 1]");
    }
  }
  switch (mode.kind) {
    case CombinerMode::Kind::Product: {
      double r = 1.0;
      for (double v : values) r *= v;
      return {r, false};
    }
    case CombinerMode::Kind::LiteralSum: {
      double s = 0.0;
      for (double v : values) s += v;
      return {s, s > 1.0};
    }
    case CombinerMode::Kind::NormalizedMean: {
      if (mode.weights.size() != values.size()) {
        throw ValidationError("weight count does not match value count");
      }
      double s = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        s += mode.weights[i] * values[i];
      }
      return {s, false};
    }
  }
  throw ValidationError("corrupt combiner mode");
}

}  // namespace

CombinedValue cc_reliability(double sw, double hw, double sh,
                             const CombinerMode& mode) {
  return combine({sw, hw, sh}, mode);
}

void CpsArchitecture::validate() const {
  if (!(mission_hours >= 0.0)) throw ValidationError("mission must be >= 0");
  if (data_reliability &&
      !(*data_reliability >= 0.0 && *data_reliability <= 1.0)) {
    throw ValidationError("data_reliability must lie in [0, 1]");
  }
  // Component ids are unique across the whole architecture.
  std::vector<const Component*> leaves;
  for (const Block* b : {&sensors, &actuators, &network, &cc_software,
                         &cc_hardware, &cc_interaction}) {
    b->collect_leaves(leaves);
  }
  std::unordered_set<std::string> seen;
  for (const Component* c : leaves) {
    if (!seen.insert(c->id).second) {
      throw ValidationError("duplicate component id '" + c->id +
                            "' in architecture");
    }
  }
}

CpsBreakdown evaluate_cps(const CpsArchitecture& arch, bool allow_literal_sum) {
  arch.validate();
  if (arch.cc_mode.kind == CombinerMode::Kind::LiteralSum &&
      !allow_literal_sum) {
    throw ValidationError(
        "literal_sum cc_mode can exceed 1 and is not a probability; "
        "pass the explicit literal-sum override to proceed");
  }
  CpsBreakdown out;
  out.sensors = evaluate_block(arch.sensors, arch.mission_hours);
  out.actuators = evaluate_block(arch.actuators, arch.mission_hours);
  out.network = evaluate_block(arch.network, arch.mission_hours);
  out.cc_software = evaluate_block(arch.cc_software, arch.mission_hours);
  out.cc_hardware = evaluate_block(arch.cc_hardware, arch.mission_hours);
  out.cc_interaction = evaluate_block(arch.cc_interaction, arch.mission_hours);
  out.cc = cc_reliability(out.cc_software, out.cc_hardware, out.cc_interaction,
                          arch.cc_mode);
  out.cps_without_data =
      out.cc.value * out.actuators * out.sensors * out.network;
  if (arch.data_reliability) {
    out.cps_with_data = out.cps_without_data * *arch.data_reliability;
  }
  return out;
}

double cps_reliability(const CpsArchitecture& arch, bool allow_literal_sum) {
  return evaluate_cps(arch, allow_literal_sum).final_value();
}

}  // namespace cpsrel
