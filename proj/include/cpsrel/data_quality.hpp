#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cpsrel/architecture.hpp"

namespace cpsrel {

enum class FieldType { Integer, Real, Text, Timestamp };

std::string to_string(FieldType type);
FieldType field_type_from_string(const std::string& name);

struct FieldSpec {
  std::string name;
  FieldType type = FieldType::Text;
  std::optional<double> range_lo;
  std::optional<double> range_hi;
  std::optional<int> precision;     ///< max decimal places
  std::optional<std::string> format;  ///< regex the whole value must match
  bool required = true;
};

struct QualitySchema {
  std::vector<FieldSpec> fields;
  std::optional<std::size_t> expected_record_count;
  std::optional<double> deadline_seconds;

  void validate() const;
  const FieldSpec* find(const std::string& name) const;
};

/// One ingested record; values are kept as raw strings so precision and
/// format checks see exactly what arrived. Missing values are nullopt.
struct Record {
  std::map<std::string, std::optional<std::string>> values;
  double arrival_time = 0.0;  ///< seconds
  std::optional<double> due_time;
};

struct RecordBatch {
  std::vector<Record> records;
};

struct FactorScore {
  double score = 1.0;
  std::size_t violations = 0;
  std::size_t checked = 0;   ///< denominator actually used
  std::size_t warnings = 0;  ///< vacuous-denominator warnings
};

struct QualityScores {
  FactorScore completeness;
  FactorScore accuracy;
  FactorScore consistency;
  FactorScore timeliness;

  std::vector<double> as_vector() const {
    return {completeness.score, accuracy.score, consistency.score,
            timeliness.score};
  }
};

FactorScore completeness(const RecordBatch& batch, const QualitySchema& schema);
FactorScore accuracy(const RecordBatch& batch, const QualitySchema& schema);
FactorScore consistency(const RecordBatch& batch, const QualitySchema& schema);
FactorScore timeliness(const RecordBatch& batch, const QualitySchema& schema);

QualityScores score_batch(const RecordBatch& batch, const QualitySchema& schema);

/// Combined data-reliability figure; equal-weight mean by default so the
/// result stays probability-like.
CombinedValue data_reliability(const QualityScores& scores,
                               const CombinerMode& mode);

/// True when the raw string parses fully as the given type.
bool value_matches_type(const std::string& raw, FieldType type);

/// Decimal places of a plain decimal literal ("3.14159" -> 5, "42" -> 0).
std::size_t decimal_places(const std::string& raw);

}  // namespace cpsrel
