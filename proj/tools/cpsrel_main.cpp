// Command-line front end: eval, simulate, select, data-score.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cpsrel/architecture.hpp"
#include "cpsrel/catalog.hpp"
#include "cpsrel/data_quality.hpp"
#include "cpsrel/errors.hpp"
#include "cpsrel/json_io.hpp"
#include "cpsrel/montecarlo.hpp"

namespace {

using cpsrel::format_sig;
using nlohmann::json;

struct CurveSpec {
  double t0 = 0.0;
  double t1 = 0.0;
  std::size_t steps = 0;
};

CurveSpec parse_curve(const std::string& raw) {
  CurveSpec spec;
  char colon1 = 0, colon2 = 0;
  std::istringstream ss(raw);
  if (!(ss >> spec.t0 >> colon1 >> spec.t1 >> colon2 >> spec.steps) ||
      colon1 != ':' || colon2 != ':' || !ss.eof()) {
    throw cpsrel::ValidationError("bad --curve spec '" + raw +
                                  "', expected t0:t1:steps");
  }
  if (spec.steps < 1 || spec.t1 < spec.t0 || spec.t0 < 0.0) {
    throw cpsrel::ValidationError("bad --curve range");
  }
  return spec;
}

cpsrel::RedundancyPlan parse_redundancy(const std::string& raw) {
  cpsrel::RedundancyPlan plan;
  std::istringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw cpsrel::ValidationError("bad --redundancy item '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const long copies = std::strtol(item.c_str() + eq + 1, nullptr, 10);
    if (copies < 1) {
      throw cpsrel::ValidationError("redundancy copies must be >= 1");
    }
    const auto n = static_cast<std::size_t>(copies);
    if (key == "sensors") plan.sensors = n;
    else if (key == "actuators") plan.actuators = n;
    else if (key == "network") plan.network = n;
    else if (key == "cc") plan.cc = n;
    else throw cpsrel::ValidationError("unknown redundancy key '" + key + "'");
  }
  return plan;
}

cpsrel::CombinerMode parse_data_combine(const std::string& name,
                                        const std::string& weights_raw) {
  if (name == "product") return cpsrel::CombinerMode::product();
  if (name == "literal_sum") return cpsrel::CombinerMode::literal_sum();
  if (name == "normalized_mean") {
    std::vector<double> weights = {0.25, 0.25, 0.25, 0.25};
    if (!weights_raw.empty()) {
      weights.clear();
      std::istringstream ss(weights_raw);
      std::string cell;
      while (std::getline(ss, cell, ',')) weights.push_back(std::stod(cell));
    }
    return cpsrel::CombinerMode::normalized_mean(std::move(weights));
  }
  throw cpsrel::ValidationError("unknown combine mode '" + name + "'");
}

void print_line(const std::string& key, const std::string& value) {
  std::printf("%-18s %s\n", key.c_str(), value.c_str());
}

json breakdown_to_json(const cpsrel::CpsBreakdown& b, double mission) {
  json out;
  out["mission_hours"] = mission;
  out["r_sensors"] = b.sensors;
  out["r_actuators"] = b.actuators;
  out["r_network"] = b.network;
  out["r_cc_software"] = b.cc_software;
  out["r_cc_hardware"] = b.cc_hardware;
  out["r_cc_interaction"] = b.cc_interaction;
  out["r_cc"] = b.cc.value;
  out["cc_exceeds_unity"] = b.cc.exceeds_unity;
  out["r_cps"] = b.cps_without_data;
  if (b.cps_with_data) out["r_cps_with_data"] = *b.cps_with_data;
  return out;
}

void print_breakdown_text(const cpsrel::CpsBreakdown& b, double mission) {
  print_line("mission_hours", format_sig(mission));
  print_line("R_sensors", format_sig(b.sensors));
  print_line("R_actuators", format_sig(b.actuators));
  print_line("R_network", format_sig(b.network));
  print_line("R_cc_software", format_sig(b.cc_software));
  print_line("R_cc_hardware", format_sig(b.cc_hardware));
  print_line("R_cc_interaction", format_sig(b.cc_interaction));
  print_line("R_cc", format_sig(b.cc.value) +
                         (b.cc.exceeds_unity ? "  [exceeds unity]" : ""));
  print_line("R_cps", format_sig(b.cps_without_data));
  if (b.cps_with_data) {
    print_line("R_cps_with_data", format_sig(*b.cps_with_data));
  }
}

int cmd_eval(const std::string& path, std::optional<double> mission_override,
             const std::string& curve_raw, bool allow_literal_sum,
             const std::string& format) {
  cpsrel::CpsArchitecture arch = cpsrel::load_architecture(path);
  if (mission_override) arch.mission_hours = *mission_override;
  const auto breakdown = cpsrel::evaluate_cps(arch, allow_literal_sum);

  if (format == "json") {
    std::cout << breakdown_to_json(breakdown, arch.mission_hours).dump(2)
              << "\n";
  } else {
    print_breakdown_text(breakdown, arch.mission_hours);
  }
  if (!curve_raw.empty()) {
    const CurveSpec curve = parse_curve(curve_raw);
    std::printf("\nt_hours,r_cps\n");
    for (std::size_t i = 0; i <= curve.steps; ++i) {
      cpsrel::CpsArchitecture point = arch;
      point.mission_hours =
          curve.t0 + (curve.t1 - curve.t0) * static_cast<double>(i) /
                         static_cast<double>(curve.steps);
      const double r = cpsrel::cps_reliability(point, allow_literal_sum);
      std::printf("%s,%s\n", format_sig(point.mission_hours).c_str(),
                  format_sig(r).c_str());
    }
  }
  return 0;
}

int cmd_simulate(const std::string& path, std::optional<double> mission_override,
                 std::uint64_t samples, std::uint64_t seed,
                 const std::string& format) {
  cpsrel::CpsArchitecture arch = cpsrel::load_architecture(path);
  if (mission_override) arch.mission_hours = *mission_override;
  const auto breakdown = cpsrel::evaluate_cps(arch);
  const cpsrel::SimulationConfig config{samples, seed, arch.mission_hours};
  const auto est = cpsrel::simulate(arch, config);
  const double sigma_distance =
      est.std_error > 0.0
          ? std::abs(est.p_hat - breakdown.cps_without_data) / est.std_error
          : (est.p_hat == breakdown.cps_without_data ? 0.0 : HUGE_VAL);

  if (format == "json") {
    json out = breakdown_to_json(breakdown, arch.mission_hours);
    out["simulation"] = {{"p_hat", est.p_hat},
                         {"std_error", est.std_error},
                         {"ci95", {est.ci_lo, est.ci_hi}},
                         {"samples", est.samples},
                         {"seed", est.seed},
                         {"degenerate_ci", est.degenerate_ci},
                         {"sigma_distance", sigma_distance}};
    std::cout << out.dump(2) << "\n";
  } else {
    print_breakdown_text(breakdown, arch.mission_hours);
    print_line("sim_p_hat", format_sig(est.p_hat));
    print_line("sim_std_error", format_sig(est.std_error));
    print_line("sim_ci95", format_sig(est.ci_lo) + ".." + format_sig(est.ci_hi) +
                               (est.degenerate_ci ? "  [degenerate]" : ""));
    print_line("sim_samples", std::to_string(est.samples));
    print_line("sim_seed", std::to_string(est.seed));
    print_line("sigma_distance", format_sig(sigma_distance));
  }
  return 0;
}

int cmd_select(const std::string& path, double mission,
               const std::string& redundancy_raw, const std::string& emit_path,
               const std::string& format) {
  const auto catalog = cpsrel::load_catalog(path);
  const cpsrel::RedundancyPlan plan = redundancy_raw.empty()
                                          ? cpsrel::RedundancyPlan{}
                                          : parse_redundancy(redundancy_raw);
  const auto report = cpsrel::assemble_architecture(catalog, mission, plan);

  if (format == "json") {
    json out;
    out["mission_hours"] = report.mission_hours;
    out["r_cps"] = report.r_cps;
    out["modules"] = json::array();
    for (const auto& sel : report.modules) {
      json m = {{"kind", cpsrel::to_string(sel.kind)},
                {"chosen", sel.chosen_id},
                {"tie", sel.tie},
                {"candidates", json::array()}};
      for (const auto& rc : sel.ranked) {
        m["candidates"].push_back({{"component_id", rc.entry.component_id},
                                   {"reliability", rc.reliability}});
      }
      out["modules"].push_back(std::move(m));
    }
    std::cout << out.dump(2) << "\n";
  } else {
    print_line("mission_hours", format_sig(report.mission_hours));
    for (const auto& sel : report.modules) {
      std::printf("[%s]\n", cpsrel::to_string(sel.kind).c_str());
      for (const auto& rc : sel.ranked) {
        std::printf("  %-12s %s%s\n", rc.entry.component_id.c_str(),
                    format_sig(rc.reliability).c_str(),
                    rc.entry.component_id == sel.chosen_id
                        ? (sel.tie ? "  <- chosen (tie)" : "  <- chosen")
                        : "");
      }
    }
    print_line("R_cps", format_sig(report.r_cps));
  }

  if (!emit_path.empty()) {
    std::ofstream out(emit_path);
    if (!out) throw cpsrel::IoError("cannot write model file: " + emit_path);
    out << cpsrel::architecture_to_json(report.architecture).dump(2) << "\n";
  }
  return 0;
}

int cmd_data_score(const std::string& schema_path,
                   const std::string& records_path, const std::string& combine,
                   const std::string& weights_raw, const std::string& format) {
  const auto schema = cpsrel::load_schema(schema_path);
  const auto batch = cpsrel::load_records(records_path, schema);
  const auto scores = cpsrel::score_batch(batch, schema);
  const auto mode = parse_data_combine(combine, weights_raw);
  const auto combined = cpsrel::data_reliability(scores, mode);

  if (format == "json") {
    auto factor = [](const cpsrel::FactorScore& f) {
      return json{{"score", f.score},
                  {"violations", f.violations},
                  {"checked", f.checked},
                  {"warnings", f.warnings}};
    };
    json out = {{"completeness", factor(scores.completeness)},
                {"accuracy", factor(scores.accuracy)},
                {"consistency", factor(scores.consistency)},
                {"timeliness", factor(scores.timeliness)},
                {"combine", mode.name()},
                {"r_data", combined.value},
                {"exceeds_unity", combined.exceeds_unity}};
    std::cout << out.dump(2) << "\n";
  } else {
    auto show = [](const char* name, const cpsrel::FactorScore& f) {
      std::string extra;
      if (f.warnings > 0) extra = "  [vacuous]";
      std::printf("%-18s %s  (%zu/%zu violations)%s\n", name,
                  format_sig(f.score).c_str(), f.violations, f.checked,
                  extra.c_str());
    };
    show("D_completeness", scores.completeness);
    show("D_accuracy", scores.accuracy);
    show("D_consistency", scores.consistency);
    show("D_timeliness", scores.timeliness);
    print_line("combine", mode.name());
    print_line("R_data", format_sig(combined.value) +
                             (combined.exceeds_unity ? "  [exceeds unity]" : ""));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CPS reliability engine"};
  app.require_subcommand(1);
  std::string format = "text";

  // eval
  auto* eval = app.add_subcommand("eval", "Evaluate an architecture document");
  std::string eval_path;
  double eval_mission = -1.0;
  std::string eval_curve;
  bool allow_literal_sum = false;
  eval->add_option("model", eval_path, "architecture JSON file")->required();
  auto* eval_mission_opt =
      eval->add_option("--mission", eval_mission, "mission override, hours")
          ->envname("CPS_RELIAB_MISSION");
  eval->add_option("--curve", eval_curve, "emit R(t) table, t0:t1:steps")
      ->envname("CPS_RELIAB_CURVE");
  eval->add_flag("--allow-literal-sum", allow_literal_sum,
                 "accept the additive cc combiner even though it is not a "
                 "probability")
      ->envname("CPS_RELIAB_ALLOW_LITERAL_SUM");
  eval->add_option("--format", format, "text|json")
      ->envname("CPS_RELIAB_FORMAT");

  // simulate
  auto* simulate = app.add_subcommand("simulate",
                                      "Monte Carlo check of an architecture");
  std::string sim_path;
  double sim_mission = -1.0;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  simulate->add_option("model", sim_path, "architecture JSON file")->required();
  auto* sim_mission_opt =
      simulate->add_option("--mission", sim_mission, "mission override, hours")
          ->envname("CPS_RELIAB_MISSION");
  simulate->add_option("--samples", samples, "sample count")
      ->envname("CPS_RELIAB_SAMPLES")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "RNG seed")->envname("CPS_RELIAB_SEED");
  simulate->add_option("--format", format, "text|json")
      ->envname("CPS_RELIAB_FORMAT");

  // select
  auto* select = app.add_subcommand("select",
                                    "Rank a component catalog and assemble "
                                    "the redundant architecture");
  std::string catalog_path;
  double select_mission = 0.0;
  std::string redundancy;
  std::string emit_model;
  select->add_option("catalog", catalog_path, "catalog CSV file")->required();
  select->add_option("--mission", select_mission, "evaluation mission, hours")
      ->envname("CPS_RELIAB_MISSION")
      ->required();
  select->add_option("--redundancy", redundancy,
                     "per-module copies, e.g. sensors=2,actuators=2,network=2,cc=2")
      ->envname("CPS_RELIAB_REDUNDANCY");
  select->add_option("--emit-model", emit_model,
                     "write the assembled architecture document here")
      ->envname("CPS_RELIAB_EMIT_MODEL");
  select->add_option("--format", format, "text|json")
      ->envname("CPS_RELIAB_FORMAT");

  // data-score
  auto* data_score = app.add_subcommand("data-score",
                                        "Score a record batch against a "
                                        "quality schema");
  std::string schema_path, records_path, weights_raw;
  std::string combine = "normalized_mean";
  data_score->add_option("schema", schema_path, "schema JSON file")->required();
  data_score->add_option("records", records_path, "records CSV file")
      ->required();
  data_score->add_option("--combine", combine,
                         "product|literal_sum|normalized_mean")
      ->envname("CPS_RELIAB_COMBINE");
  data_score->add_option("--weights", weights_raw,
                         "four comma-separated weights for normalized_mean")
      ->envname("CPS_RELIAB_WEIGHTS");
  data_score->add_option("--format", format, "text|json")
      ->envname("CPS_RELIAB_FORMAT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (format != "text" && format != "json") {
      throw cpsrel::ValidationError("--format must be text or json");
    }
    if (eval->parsed()) {
      std::optional<double> mission;
      if (eval_mission_opt->count() > 0) mission = eval_mission;
      return cmd_eval(eval_path, mission, eval_curve, allow_literal_sum, format);
    }
    if (simulate->parsed()) {
      std::optional<double> mission;
      if (sim_mission_opt->count() > 0) mission = sim_mission;
      return cmd_simulate(sim_path, mission, samples, seed, format);
    }
    if (select->parsed()) {
      return cmd_select(catalog_path, select_mission, redundancy, emit_model,
                        format);
    }
    if (data_score->parsed()) {
      return cmd_data_score(schema_path, records_path, combine, weights_raw,
                            format);
    }
  } catch (const cpsrel::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cpsrel::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
