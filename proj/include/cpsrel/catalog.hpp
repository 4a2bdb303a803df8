#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpsrel/architecture.hpp"
#include "cpsrel/block.hpp"

namespace cpsrel {

/// One off-the-shelf component row. Constant rates arrive in failures per
/// 10^6 hours (OREDA convention) and are converted to per-hour on ingest.
struct CatalogEntry {
  std::string component_id;
  ModuleKind kind = ModuleKind::Other;
  FailureModel model;
  std::string source;

  double reliability_at(double mission_hours) const;
};

/// Parses the `component_id,module_kind,model_type,p1,p2,p3,source` format.
std::vector<CatalogEntry> load_catalog(const std::string& path);
std::vector<CatalogEntry> parse_catalog(std::istream& in,
                                        const std::string& origin);

struct RankedCandidate {
  CatalogEntry entry;
  double reliability = 0.0;
};

/// Same-kind candidates sorted by reliability descending, ids ascending on
/// ties. The head is the selection.
std::vector<RankedCandidate> rank_module(std::vector<CatalogEntry> entries,
                                         double mission_hours);

/// Parallel group of `copies` independent instances of the entry
/// (ids suffixed -1..-n).
Block build_redundant_block(const CatalogEntry& chosen, std::size_t copies);

/// Copies per module for the redundant assembly; each module duplicated by
/// default.
struct RedundancyPlan {
  std::size_t sensors = 2;
  std::size_t actuators = 2;
  std::size_t network = 2;
  std::size_t cc = 2;
};

struct ModuleSelection {
  ModuleKind kind = ModuleKind::Other;
  std::vector<RankedCandidate> ranked;
  std::string chosen_id;
  bool tie = false;  // another candidate matched the chosen reliability
};

struct SelectionReport {
  std::vector<ModuleSelection> modules;
  CpsArchitecture architecture;
  double r_cps = 0.0;  // Eq-13-style product, no data term
  double mission_hours = 0.0;
};

/// Full catalog-to-architecture workflow: rank candidates per module kind,
/// pick the best, and assemble the redundant layout. Compute sub-kinds
/// (software / hardware / interaction) are used when the catalog supplies
/// them; otherwise a ComputeHardware entry stands in for the whole unit.
SelectionReport assemble_architecture(const std::vector<CatalogEntry>& catalog,
                                      double mission_hours,
                                      const RedundancyPlan& plan = {});

}  // namespace cpsrel
