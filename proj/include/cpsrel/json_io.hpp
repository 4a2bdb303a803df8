#pragma once

#include <iosfwd>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cpsrel/architecture.hpp"
#include "cpsrel/catalog.hpp"
#include "cpsrel/data_quality.hpp"

namespace cpsrel {

/// Formats a double with 12 significant digits.
std::string format_sig(double value);

// -- architecture documents --------------------------------------------------

CpsArchitecture architecture_from_json(const nlohmann::json& doc);
CpsArchitecture load_architecture(const std::string& path);
CpsArchitecture parse_architecture(const std::string& text,
                                   const std::string& origin);

nlohmann::json architecture_to_json(const CpsArchitecture& arch);

// -- quality schema and record batches ---------------------------------------

QualitySchema schema_from_json(const nlohmann::json& doc);
QualitySchema load_schema(const std::string& path);

/// Reads a delimiter-separated record file with a header row. The reserved
/// `arrival_time` column (seconds) is required; `due_time` is optional.
/// Every required schema field must appear as a column; empty cells are
/// missing values.
RecordBatch load_records(const std::string& path, const QualitySchema& schema);
RecordBatch parse_records(std::istream& in, const QualitySchema& schema,
                          const std::string& origin);

}  // namespace cpsrel
