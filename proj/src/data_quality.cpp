#include "cpsrel/data_quality.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <regex>
#include <unordered_set>

#include "cpsrel/errors.hpp"

namespace cpsrel {

std::string to_string(FieldType type) {
  switch (type) {
    case FieldType::Integer: return "integer";
    case FieldType::Real: return "real";
    case FieldType::Text: return "text";
    case FieldType::Timestamp: return "timestamp";
  }
  return "text";
}

FieldType field_type_from_string(const std::string& name) {
  if (name == "integer") return FieldType::Integer;
  if (name == "real") return FieldType::Real;
  if (name == "text") return FieldType::Text;
  if (name == "timestamp") return FieldType::Timestamp;
  throw ValidationError("unknown field type: " + name);
}

void QualitySchema::validate() const {
  std::unordered_set<std::string> names;
  for (const auto& f : fields) {
    if (f.name.empty()) throw ValidationError("field name must be nonempty");
    if (!names.insert(f.name).second) {
      throw ValidationError("duplicate field name '" + f.name + "' in schema");
    }
    if (f.range_lo && f.range_hi && *f.range_lo > *f.range_hi) {
      throw ValidationError("field '" + f.name + "': range lo > hi");
    }
    if (f.precision && *f.precision < 0) {
      throw ValidationError("field '" + f.name + "': precision must be >= 0");
    }
  }
  if (deadline_seconds && !(*deadline_seconds >= 0.0)) {
    throw ValidationError("deadline must be >= 0");
  }
}

const FieldSpec* QualitySchema::find(const std::string& name) const {
  for (const auto& f : fields) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool value_matches_type(const std::string& raw, FieldType type) {
  if (type == FieldType::Text) return true;
  if (raw.empty()) return false;
  const char* begin = raw.c_str();
  char* end = nullptr;
  if (type == FieldType::Integer) {
    std::strtoll(begin, &end, 10);
  } else {  // Real and Timestamp both parse as decimal numbers
    std::strtod(begin, &end);
  }
  return end == begin + raw.size();
}

std::size_t decimal_places(const std::string& raw) {
  const auto dot = raw.find('.');
  if (dot == std::string::npos) return 0;
  std::size_t count = 0;
  for (std::size_t i = dot + 1; i < raw.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i]))) break;
    ++count;
  }
  return count;
}

namespace {

double clamp01(double v) { return std::max(0.0, std::min(1.0, v)); }

bool parse_number(const std::string& raw, double& out) {
  const char* begin = raw.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end == begin + raw.size() && !raw.empty();
}

}  // namespace

FactorScore completeness(const RecordBatch& batch, const QualitySchema& schema) {
  schema.validate();
  std::size_t required_fields = 0;
  for (const auto& f : schema.fields) {
    if (f.required) ++required_fields;
  }
  const std::size_t expected_records =
      std::max(batch.records.size(),
               schema.expected_record_count.value_or(batch.records.size()));
  const std::size_t expected_items = required_fields * expected_records;

  FactorScore out;
  out.checked = expected_items;
  if (expected_items == 0) {
    out.warnings = 1;  // vacuous: nothing was expected
    return out;
  }
  std::size_t omitted = 0;
  for (const auto& rec : batch.records) {
    for (const auto& f : schema.fields) {
      if (!f.required) continue;
      const auto it = rec.values.find(f.name);
      if (it == rec.values.end() || !it->second) ++omitted;
    }
  }
  if (expected_records > batch.records.size()) {
    omitted += (expected_records - batch.records.size()) * required_fields;
  }
  out.violations = omitted;
  out.score = clamp01(1.0 - static_cast<double>(omitted) /
                                static_cast<double>(expected_items));
  return out;
}

FactorScore accuracy(const RecordBatch& batch, const QualitySchema& schema) {
  schema.validate();
  FactorScore out;
  for (const auto& rec : batch.records) {
    for (const auto& [name, value] : rec.values) {
      if (!value) continue;
      const FieldSpec* spec = schema.find(name);
      if (!spec) continue;
      const bool has_range = spec->range_lo || spec->range_hi;
      if (!has_range && !spec->precision) continue;
      ++out.checked;
      bool violating = false;
      if (has_range) {
        double v = 0.0;
        if (!parse_number(*value, v)) {
          violating = true;  // cannot be inside a numeric range
        } else if ((spec->range_lo && v < *spec->range_lo) ||
                   (spec->range_hi && v > *spec->range_hi)) {
          violating = true;
        }
      }
      if (!violating && spec->precision &&
          decimal_places(*value) > static_cast<std::size_t>(*spec->precision)) {
        violating = true;
      }
      if (violating) ++out.violations;
    }
  }
  if (out.checked == 0) {
    out.warnings = 1;
    return out;
  }
  out.score = clamp01(1.0 - static_cast<double>(out.violations) /
                                static_cast<double>(out.checked));
  return out;
}

FactorScore consistency(const RecordBatch& batch, const QualitySchema& schema) {
  schema.validate();
  FactorScore out;
  for (const auto& rec : batch.records) {
    for (const auto& [name, value] : rec.values) {
      if (!value) continue;
      const FieldSpec* spec = schema.find(name);
      if (!spec) continue;
      ++out.checked;
      bool mismatch = !value_matches_type(*value, spec->type);
      if (!mismatch && spec->format) {
        try {
          if (!std::regex_match(*value, std::regex(*spec->format))) {
            mismatch = true;
          }
        } catch (const std::regex_error&) {
          throw ValidationError("field '" + name + "': bad format pattern");
        }
      }
      if (mismatch) ++out.violations;
    }
  }
  if (out.checked == 0) {
    out.warnings = 1;
    return out;
  }
  out.score = clamp01(1.0 - static_cast<double>(out.violations) /
                                static_cast<double>(out.checked));
  return out;
}

FactorScore timeliness(const RecordBatch& batch, const QualitySchema& schema) {
  schema.validate();
  FactorScore out;
  std::size_t late = 0;
  std::size_t with_deadline = 0;
  for (const auto& rec : batch.records) {
    if (rec.due_time) {
      ++with_deadline;
      if (rec.arrival_time > *rec.due_time) ++late;  // boundary is on time
    } else if (schema.deadline_seconds) {
      ++with_deadline;
      if (rec.arrival_time > *schema.deadline_seconds) ++late;
    }
  }
  if (batch.records.empty() || with_deadline == 0) {
    out.warnings = 1;  // no deadline information configured
    return out;
  }
  out.checked = batch.records.size();
  out.violations = late;
  out.score = clamp01(1.0 - static_cast<double>(late) /
                                static_cast<double>(batch.records.size()));
  return out;
}

QualityScores score_batch(const RecordBatch& batch, const QualitySchema& schema) {
  QualityScores out;
  out.completeness = completeness(batch, schema);
  out.accuracy = accuracy(batch, schema);
  out.consistency = consistency(batch, schema);
  out.timeliness = timeliness(batch, schema);
  return out;
}

CombinedValue data_reliability(const QualityScores& scores,
                               const CombinerMode& mode) {
  const auto values = scores.as_vector();
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
        throw ValidationError("data reliability needs 4 weights");
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

}  // namespace cpsrel
