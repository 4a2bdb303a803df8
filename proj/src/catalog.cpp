#include "cpsrel/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cpsrel/errors.hpp"

namespace cpsrel {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
  // trailing empty cell
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_param(const std::string& raw, const std::string& origin,
                   std::size_t line_no, const std::string& what) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (raw.empty() || end != begin + raw.size()) {
    throw ValidationError(origin + ":" + std::to_string(line_no) +
                          ": malformed " + what + " '" + raw + "'");
  }
  return v;
}

}  // namespace

double CatalogEntry::reliability_at(double mission_hours) const {
  return cpsrel::reliability_at(model, mission_hours);
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file: " + path);
  return parse_catalog(in, path);
}

std::vector<CatalogEntry> parse_catalog(std::istream& in,
                                        const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(origin + ": missing catalog header");
  }
  const auto header = split_csv(line);
  const std::vector<std::string> expected = {"component_id", "module_kind",
                                             "model_type",   "p1",
                                             "p2",           "p3",
                                             "source"};
  if (header != expected) {
    throw ValidationError(origin + ": unexpected catalog header");
  }

  std::vector<CatalogEntry> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    cells.resize(7);
    const std::string& id = cells[0];
    if (id.empty()) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": empty component_id");
    }
    try {
      const ModuleKind kind = module_kind_from_string(cells[1]);
      const std::string& type = cells[2];
      FailureModel model = ConstantRate(0.0);
      if (type == "constant") {
        // p1 is failures per 10^6 hours
        const double rate = parse_param(cells[3], origin, line_no, "p1");
        model = ConstantRate(rate / 1e6);
      } else if (type == "powerlaw") {
        model = PowerLaw(parse_param(cells[3], origin, line_no, "p1"),
                         parse_param(cells[4], origin, line_no, "p2"));
      } else if (type == "srgm") {
        model = SrgmNhpp(parse_param(cells[3], origin, line_no, "p1"),
                         parse_param(cells[4], origin, line_no, "p2"),
                         parse_param(cells[5], origin, line_no, "p3"));
      } else {
        throw ValidationError("unknown model_type '" + type + "'");
      }
      out.push_back(CatalogEntry{id, kind, std::move(model), cells[6]});
    } catch (const ValidationError& e) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": entry '" + id + "': " + e.what());
    }
  }
  return out;
}

std::vector<RankedCandidate> rank_module(std::vector<CatalogEntry> entries,
                                         double mission_hours) {
  if (entries.empty()) {
    throw ValidationError("cannot rank an empty candidate list");
  }
  std::vector<RankedCandidate> ranked;
  ranked.reserve(entries.size());
  for (auto& e : entries) {
    const double r = e.reliability_at(mission_hours);
    ranked.push_back({std::move(e), r});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedCandidate& a, const RankedCandidate& b) {
              if (a.reliability != b.reliability) {
                return a.reliability > b.reliability;
              }
              return a.entry.component_id < b.entry.component_id;
            });
  return ranked;
}

Block build_redundant_block(const CatalogEntry& chosen, std::size_t copies) {
  if (copies < 1) throw ValidationError("copies must be >= 1");
  std::vector<Block> leaves;
  leaves.reserve(copies);
  for (std::size_t i = 1; i <= copies; ++i) {
    leaves.push_back(Block::leaf(
        Component(chosen.component_id + "-" + std::to_string(i),
                  chosen.component_id, chosen.kind, chosen.model)));
  }
  return Block::parallel(std::move(leaves));
}

namespace {

struct KindBucket {
  std::vector<CatalogEntry> entries;
};

ModuleSelection select_kind(const std::vector<CatalogEntry>& bucket,
                            ModuleKind kind, double mission) {
  ModuleSelection sel;
  sel.kind = kind;
  sel.ranked = rank_module(bucket, mission);
  sel.chosen_id = sel.ranked.front().entry.component_id;
  sel.tie = sel.ranked.size() > 1 &&
            sel.ranked[1].reliability == sel.ranked[0].reliability;
  return sel;
}

}  // namespace

SelectionReport assemble_architecture(const std::vector<CatalogEntry>& catalog,
                                      double mission_hours,
                                      const RedundancyPlan& plan) {
  if (!(mission_hours >= 0.0)) throw ValidationError("mission must be >= 0");
  std::vector<CatalogEntry> sensors, actuators, networks, cc_hw, cc_sw, cc_si;
  for (const auto& e : catalog) {
    switch (e.kind) {
      case ModuleKind::Sensor: sensors.push_back(e); break;
      case ModuleKind::Actuator: actuators.push_back(e); break;
      case ModuleKind::Network: networks.push_back(e); break;
      case ModuleKind::ComputeHardware: cc_hw.push_back(e); break;
      case ModuleKind::ComputeSoftware: cc_sw.push_back(e); break;
      case ModuleKind::ComputeInteraction: cc_si.push_back(e); break;
      case ModuleKind::Other: break;
    }
  }
  std::vector<std::string> missing;
  if (sensors.empty()) missing.push_back("Sensor");
  if (actuators.empty()) missing.push_back("Actuator");
  if (networks.empty()) missing.push_back("Network");
  if (cc_hw.empty()) missing.push_back("ComputeHardware");
  if (!missing.empty()) {
    std::string msg = "catalog lacks entries for module kind(s):";
    for (const auto& m : missing) msg += " " + m;
    throw ValidationError(msg);
  }

  SelectionReport report;
  report.mission_hours = mission_hours;

  auto pick = [&](const std::vector<CatalogEntry>& bucket, ModuleKind kind,
                  std::size_t copies) {
    ModuleSelection sel = select_kind(bucket, kind, mission_hours);
    Block block = build_redundant_block(sel.ranked.front().entry, copies);
    report.modules.push_back(std::move(sel));
    return block;
  };

  Block sensors_block = pick(sensors, ModuleKind::Sensor, plan.sensors);
  Block actuators_block = pick(actuators, ModuleKind::Actuator, plan.actuators);
  Block network_block = pick(networks, ModuleKind::Network, plan.network);
  Block hw_block = pick(cc_hw, ModuleKind::ComputeHardware, plan.cc);

  // Software and interaction sub-entries are optional; without them the
  // hardware entry stands in for the whole computation-and-control unit.
  Block sw_block = cc_sw.empty()
                       ? Block::leaf(Component("cc-software-ideal", "ideal",
                                               ModuleKind::ComputeSoftware,
                                               ConstantRate(0.0)))
                       : pick(cc_sw, ModuleKind::ComputeSoftware, plan.cc);
  Block si_block = cc_si.empty()
                       ? Block::leaf(Component("cc-interaction-ideal", "ideal",
                                               ModuleKind::ComputeInteraction,
                                               ConstantRate(0.0)))
                       : pick(cc_si, ModuleKind::ComputeInteraction, plan.cc);

  report.architecture = CpsArchitecture{
      std::move(sensors_block), std::move(actuators_block),
      std::move(network_block), std::move(sw_block),
      std::move(hw_block),      std::move(si_block),
      CombinerMode::product(),  mission_hours,
      std::nullopt};
  report.r_cps = cps_reliability(report.architecture);
  return report;
}

}  // namespace cpsrel
