#include "cpsrel/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cpsrel/errors.hpp"

namespace cpsrel {

using nlohmann::json;

std::string format_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ValidationError(path + ": " + msg);
}

double get_number(const json& node, const std::string& path,
                  const std::string& key) {
  if (!node.contains(key)) fail(path, "missing key '" + key + "'");
  if (!node[key].is_number()) fail(path + "." + key, "expected a number");
  return node[key].get<double>();
}

FailureModel model_from_json(const json& node, const std::string& path) {
  if (!node.is_object()) fail(path, "model must be an object");
  if (!node.contains("type") || !node["type"].is_string()) {
    fail(path, "model needs a string 'type'");
  }
  const std::string type = node["type"].get<std::string>();
  try {
    if (type == "constant") {
      return ConstantRate(get_number(node, path, "lambda"));
    }
    if (type == "powerlaw") {
      return PowerLaw(get_number(node, path, "scale"),
                      get_number(node, path, "shape"));
    }
    if (type == "srgm") {
      return SrgmNhpp(get_number(node, path, "a"), get_number(node, path, "b"),
                      get_number(node, path, "t_test"));
    }
  } catch (const ValidationError& e) {
    fail(path, e.what());
  }
  fail(path, "unknown model type '" + type + "'");
}

Block block_from_json(const json& node, const std::string& path,
                      ModuleKind default_kind) {
  if (!node.is_object()) fail(path, "block node must be an object");
  if (!node.contains("type") || !node["type"].is_string()) {
    fail(path, "block node needs a string 'type'");
  }
  const std::string type = node["type"].get<std::string>();
  if (type == "leaf") {
    if (!node.contains("id") || !node["id"].is_string()) {
      fail(path, "leaf needs a string 'id'");
    }
    if (!node.contains("model")) fail(path, "leaf needs a 'model'");
    const std::string id = node["id"].get<std::string>();
    const std::string name =
        node.value("name", std::string{});
    ModuleKind kind = default_kind;
    if (node.contains("kind")) {
      try {
        kind = module_kind_from_string(node["kind"].get<std::string>());
      } catch (const ValidationError& e) {
        fail(path + ".kind", e.what());
      }
    }
    MissionWindow window = MissionWindow::fresh_start();
    if (node.contains("window")) {
      if (!node["window"].is_object()) fail(path + ".window", "must be an object");
      window = MissionWindow::test_window(
          get_number(node["window"], path + ".window", "t_start"));
    }
    try {
      return Block::leaf(
          Component(id, name, kind, model_from_json(node["model"], path + ".model"),
                    window));
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  }
  if (type == "series" || type == "parallel" || type == "k_of_n") {
    if (!node.contains("children") || !node["children"].is_array() ||
        node["children"].empty()) {
      fail(path, "'" + type + "' needs a nonempty 'children' array");
    }
    std::vector<Block> children;
    std::size_t i = 0;
    for (const auto& child : node["children"]) {
      children.push_back(block_from_json(
          child, path + ".children[" + std::to_string(i) + "]", default_kind));
      ++i;
    }
    try {
      if (type == "series") return Block::series(std::move(children));
      if (type == "parallel") return Block::parallel(std::move(children));
      const double k = get_number(node, path, "k");
      if (k < 1 || k != static_cast<double>(static_cast<std::size_t>(k))) {
        fail(path + ".k", "must be a positive integer");
      }
      return Block::k_of_n(static_cast<std::size_t>(k), std::move(children));
    } catch (const ValidationError& e) {
      fail(path, e.what());
    }
  }
  fail(path, "unknown block type '" + type + "'");
}

CombinerMode mode_from_json(const json& doc) {
  const std::string name = doc.value("cc_mode", std::string("product"));
  if (name == "product") return CombinerMode::product();
  if (name == "literal_sum") return CombinerMode::literal_sum();
  if (name == "normalized_mean") {
    std::vector<double> weights = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    if (doc.contains("weights")) {
      if (!doc["weights"].is_array()) fail("$.weights", "must be an array");
      weights = doc["weights"].get<std::vector<double>>();
    }
    try {
      return CombinerMode::normalized_mean(std::move(weights));
    } catch (const ValidationError& e) {
      fail("$.weights", e.what());
    }
  }
  fail("$.cc_mode", "unknown mode '" + name + "'");
}

json model_to_json(const FailureModel& model) {
  struct Visitor {
    json operator()(const ConstantRate& m) const {
      return {{"type", "constant"}, {"lambda", m.lambda}};
    }
    json operator()(const PowerLaw& m) const {
      return {{"type", "powerlaw"}, {"scale", m.scale}, {"shape", m.shape}};
    }
    json operator()(const SrgmNhpp& m) const {
      return {{"type", "srgm"}, {"a", m.a}, {"b", m.b}, {"t_test", m.t_test}};
    }
  };
  return std::visit(Visitor{}, model);
}

json block_to_json(const Block& block) {
  switch (block.kind) {
    case Block::Kind::Leaf: {
      const Component& c = *block.component;
      json node = {{"type", "leaf"},
                   {"id", c.id},
                   {"kind", to_string(c.kind)},
                   {"model", model_to_json(c.model)}};
      if (!c.name.empty()) node["name"] = c.name;
      if (c.window.t_start > 0.0) {
        node["window"] = {{"t_start", c.window.t_start}};
      }
      return node;
    }
    case Block::Kind::Series:
    case Block::Kind::Parallel:
    case Block::Kind::KofN: {
      json node;
      node["type"] = block.kind == Block::Kind::Series     ? "series"
                     : block.kind == Block::Kind::Parallel ? "parallel"
                                                           : "k_of_n";
      if (block.kind == Block::Kind::KofN) node["k"] = block.k;
      node["children"] = json::array();
      for (const auto& c : block.children) {
        node["children"].push_back(block_to_json(c));
      }
      return node;
    }
  }
  throw ValidationError("corrupt block kind");
}

}  // namespace

CpsArchitecture architecture_from_json(const json& doc) {
  if (!doc.is_object()) fail("$", "architecture document must be an object");
  if (!doc.contains("mission_hours")) fail("$", "missing 'mission_hours'");
  if (!doc.contains("modules") || !doc["modules"].is_object()) {
    fail("$", "missing 'modules' object");
  }
  const json& modules = doc["modules"];
  const struct {
    const char* key;
    ModuleKind kind;
  } required[] = {
      {"sensors", ModuleKind::Sensor},
      {"actuators", ModuleKind::Actuator},
      {"network", ModuleKind::Network},
      {"cc_software", ModuleKind::ComputeSoftware},
      {"cc_hardware", ModuleKind::ComputeHardware},
      {"cc_interaction", ModuleKind::ComputeInteraction},
  };
  CpsArchitecture arch;
  std::vector<Block> blocks;
  for (const auto& [key, kind] : required) {
    if (!modules.contains(key)) {
      fail("$.modules", std::string("missing block '") + key + "'");
    }
    blocks.push_back(
        block_from_json(modules[key], std::string("$.modules.") + key, kind));
  }
  arch.sensors = std::move(blocks[0]);
  arch.actuators = std::move(blocks[1]);
  arch.network = std::move(blocks[2]);
  arch.cc_software = std::move(blocks[3]);
  arch.cc_hardware = std::move(blocks[4]);
  arch.cc_interaction = std::move(blocks[5]);
  arch.cc_mode = mode_from_json(doc);
  arch.mission_hours = get_number(doc, "$", "mission_hours");
  if (doc.contains("data_reliability")) {
    if (!doc["data_reliability"].is_number()) {
      fail("$.data_reliability", "expected a number");
    }
    arch.data_reliability = doc["data_reliability"].get<double>();
  }
  try {
    arch.validate();
  } catch (const ValidationError& e) {
    fail("$", e.what());
  }
  return arch;
}

CpsArchitecture load_architecture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open architecture file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_architecture(buf.str(), path);
}

CpsArchitecture parse_architecture(const std::string& text,
                                   const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  try {
    return architecture_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": " + e.what());
  }
}

json architecture_to_json(const CpsArchitecture& arch) {
  json doc;
  doc["mission_hours"] = arch.mission_hours;
  doc["cc_mode"] = arch.cc_mode.name();
  if (arch.cc_mode.kind == CombinerMode::Kind::NormalizedMean) {
    doc["weights"] = arch.cc_mode.weights;
  }
  doc["modules"] = {{"sensors", block_to_json(arch.sensors)},
                    {"actuators", block_to_json(arch.actuators)},
                    {"network", block_to_json(arch.network)},
                    {"cc_software", block_to_json(arch.cc_software)},
                    {"cc_hardware", block_to_json(arch.cc_hardware)},
                    {"cc_interaction", block_to_json(arch.cc_interaction)}};
  if (arch.data_reliability) doc["data_reliability"] = *arch.data_reliability;
  return doc;
}

QualitySchema schema_from_json(const json& doc) {
  if (!doc.is_object()) fail("$", "schema must be an object");
  if (!doc.contains("fields") || !doc["fields"].is_array()) {
    fail("$", "schema needs a 'fields' array");
  }
  QualitySchema schema;
  std::size_t i = 0;
  for (const auto& node : doc["fields"]) {
    const std::string path = "$.fields[" + std::to_string(i) + "]";
    if (!node.is_object() || !node.contains("name") ||
        !node["name"].is_string()) {
      fail(path, "field needs a string 'name'");
    }
    FieldSpec spec;
    spec.name = node["name"].get<std::string>();
    try {
      spec.type = field_type_from_string(node.value("type", std::string("text")));
    } catch (const ValidationError& e) {
      fail(path + ".type", e.what());
    }
    if (node.contains("range")) {
      if (!node["range"].is_array() || node["range"].size() != 2) {
        fail(path + ".range", "expected [lo, hi]");
      }
      spec.range_lo = node["range"][0].get<double>();
      spec.range_hi = node["range"][1].get<double>();
    }
    if (node.contains("precision")) {
      spec.precision = node["precision"].get<int>();
    }
    if (node.contains("format")) {
      spec.format = node["format"].get<std::string>();
    }
    spec.required = node.value("required", true);
    schema.fields.push_back(std::move(spec));
    ++i;
  }
  if (doc.contains("expected_record_count")) {
    schema.expected_record_count =
        doc["expected_record_count"].get<std::size_t>();
  }
  if (doc.contains("deadline_seconds")) {
    schema.deadline_seconds = doc["deadline_seconds"].get<double>();
  }
  try {
    schema.validate();
  } catch (const ValidationError& e) {
    fail("$", e.what());
  }
  return schema;
}

QualitySchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  try {
    return schema_from_json(doc);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

}  // namespace

RecordBatch load_records(const std::string& path, const QualitySchema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open records file: " + path);
  return parse_records(in, schema, path);
}

RecordBatch parse_records(std::istream& in, const QualitySchema& schema,
                          const std::string& origin) {
  schema.validate();
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError(origin + ": missing header row");
  }
  const auto header = split_line(line);
  std::ptrdiff_t arrival_col = -1;
  std::ptrdiff_t due_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "arrival_time") arrival_col = static_cast<std::ptrdiff_t>(i);
    else if (header[i] == "due_time") due_col = static_cast<std::ptrdiff_t>(i);
    else if (!schema.find(header[i])) {
      throw ValidationError(origin + ": column '" + header[i] +
                            "' is not in the schema");
    }
  }
  if (arrival_col < 0) {
    throw ValidationError(origin + ": missing 'arrival_time' column");
  }
  for (const auto& f : schema.fields) {
    if (f.required &&
        std::find(header.begin(), header.end(), f.name) == header.end()) {
      throw ValidationError(origin + ": required field '" + f.name +
                            "' has no column");
    }
  }

  RecordBatch batch;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    cells.resize(header.size());
    Record rec;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto col = static_cast<std::ptrdiff_t>(i);
      if (col == arrival_col || col == due_col) continue;
      rec.values[header[i]] =
          cells[i].empty() ? std::optional<std::string>{} : cells[i];
    }
    const std::string& arrival = cells[static_cast<std::size_t>(arrival_col)];
    const char* begin = arrival.c_str();
    char* end = nullptr;
    rec.arrival_time = std::strtod(begin, &end);
    if (arrival.empty() || end != begin + arrival.size()) {
      throw ValidationError(origin + ":" + std::to_string(line_no) +
                            ": bad arrival_time '" + arrival + "'");
    }
    if (due_col >= 0) {
      const std::string& due = cells[static_cast<std::size_t>(due_col)];
      if (!due.empty()) {
        end = nullptr;
        const char* dbegin = due.c_str();
        const double v = std::strtod(dbegin, &end);
        if (end != dbegin + due.size()) {
          throw ValidationError(origin + ":" + std::to_string(line_no) +
                                ": bad due_time '" + due + "'");
        }
        rec.due_time = v;
      }
    }
    batch.records.push_back(std::move(rec));
  }
  return batch;
}

}  // namespace cpsrel
