#include <algorithm>
#include <random>
#include <string>

#include <doctest.h>

#include "cpsrel/architecture.hpp"
#include "cpsrel/data_quality.hpp"
#include "cpsrel/errors.hpp"

using namespace cpsrel;

namespace {

QualitySchema small_schema() {
  QualitySchema schema;
  schema.fields.push_back({"temp", FieldType::Real, 0.0, 100.0, 2, std::nullopt, true});
  schema.fields.push_back({"unit", FieldType::Text, std::nullopt, std::nullopt,
                           std::nullopt, std::string("^[A-Z]$"), true});
  schema.fields.push_back({"count", FieldType::Integer, std::nullopt,
                           std::nullopt, std::nullopt, std::nullopt, false});
  return schema;
}

Record make_record(std::optional<std::string> temp,
                   std::optional<std::string> unit,
                   std::optional<std::string> count, double arrival,
                   std::optional<double> due = std::nullopt) {
  Record r;
  r.values["temp"] = std::move(temp);
  r.values["unit"] = std::move(unit);
  r.values["count"] = std::move(count);
  r.arrival_time = arrival;
  r.due_time = due;
  return r;
}

}  // namespace

TEST_CASE("completeness") {
  const auto schema = small_schema();
  SUBCASE("pristine batch") {
    RecordBatch batch;
    for (int i = 0; i < 50; ++i) {
      batch.records.push_back(make_record("20.5", "C", "1", 0.0));
    }
    CHECK(completeness(batch, schema).score == 1.0);
  }
  SUBCASE("one omission out of 100 required items") {
    RecordBatch batch;
    for (int i = 0; i < 50; ++i) {
      batch.records.push_back(
          make_record(i == 0 ? std::optional<std::string>{} : "20.5", "C", "1",
                      0.0));
    }
    // 2 required fields x 50 records = 100 expected
    const auto f = completeness(batch, schema);
    CHECK(f.checked == 100);
    CHECK(f.violations == 1);
    CHECK(f.score == doctest::Approx(0.99).epsilon(1e-15));
  }
  SUBCASE("short batch counts missing records") {
    QualitySchema schema5;
    for (int i = 0; i < 5; ++i) {
      schema5.fields.push_back({"f" + std::to_string(i), FieldType::Text,
                                std::nullopt, std::nullopt, std::nullopt,
                                std::nullopt, true});
    }
    schema5.expected_record_count = 20;
    RecordBatch batch;
    for (int i = 0; i < 15; ++i) {
      Record r;
      for (int j = 0; j < 5; ++j) r.values["f" + std::to_string(j)] = "x";
      batch.records.push_back(std::move(r));
    }
    CHECK(completeness(batch, schema5).score ==
          doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("missing optional fields are not violations") {
    RecordBatch batch;
    batch.records.push_back(make_record("20.5", "C", std::nullopt, 0.0));
    CHECK(completeness(batch, schema).score == 1.0);
  }
  SUBCASE("empty expectation is vacuous") {
    RecordBatch batch;
    const auto f = completeness(batch, QualitySchema{});
    CHECK(f.score == 1.0);
    CHECK(f.warnings == 1);
  }
}

TEST_CASE("accuracy") {
  const auto schema = small_schema();
  SUBCASE("in-range values score 1") {
    RecordBatch batch;
    batch.records.push_back(make_record("20.5", "C", "1", 0.0));
    CHECK(accuracy(batch, schema).score == 1.0);
  }
  SUBCASE("5 of 50 out of range") {
    RecordBatch batch;
    for (int i = 0; i < 50; ++i) {
      batch.records.push_back(make_record(i < 5 ? "150" : "20.5", "C", "1", 0.0));
    }
    const auto f = accuracy(batch, schema);
    CHECK(f.checked == 50);  // only temp carries range/precision specs
    CHECK(f.violations == 5);
    CHECK(f.score == doctest::Approx(0.9).epsilon(1e-15));
  }
  SUBCASE("excess precision counts as a violation") {
    RecordBatch batch;
    batch.records.push_back(make_record("3.14159", "C", "1", 0.0));
    const auto f = accuracy(batch, schema);
    CHECK(f.violations == 1);
  }
  SUBCASE("no checkable items is vacuous") {
    QualitySchema loose;
    loose.fields.push_back({"note", FieldType::Text, std::nullopt, std::nullopt,
                            std::nullopt, std::nullopt, true});
    RecordBatch batch;
    Record r;
    r.values["note"] = "hello";
    batch.records.push_back(std::move(r));
    const auto f = accuracy(batch, loose);
    CHECK(f.score == 1.0);
    CHECK(f.warnings == 1);
  }
}

TEST_CASE("consistency") {
  const auto schema = small_schema();
  SUBCASE("well-typed values score 1") {
    RecordBatch batch;
    batch.records.push_back(make_record("20.5", "C", "7", 0.0));
    CHECK(consistency(batch, schema).score == 1.0);
  }
  SUBCASE("text in an integer field is a mismatch") {
    RecordBatch batch;
    batch.records.push_back(make_record("20.5", "C", "12a", 0.0));
    const auto f = consistency(batch, schema);
    CHECK(f.violations == 1);
  }
  SUBCASE("format pattern failures") {
    RecordBatch batch;
    for (int i = 0; i < 100; ++i) {
      batch.records.push_back(
          make_record("20.5", i < 10 ? "celsius" : "C", std::nullopt, 0.0));
    }
    const auto f = consistency(batch, schema);
    CHECK(f.checked == 200);  // temp + unit present in every record
    CHECK(f.violations == 10);
    CHECK(f.score == doctest::Approx(0.95).epsilon(1e-15));
  }
}

TEST_CASE("timeliness") {
  QualitySchema schema = small_schema();
  SUBCASE("no deadline information is vacuous") {
    RecordBatch batch;
    batch.records.push_back(make_record("1", "C", "1", 5.0));
    const auto f = timeliness(batch, schema);
    CHECK(f.score == 1.0);
    CHECK(f.warnings == 1);
  }
  SUBCASE("2 of 10 late against per-record due times") {
    RecordBatch batch;
    for (int i = 0; i < 10; ++i) {
      batch.records.push_back(
          make_record("1", "C", "1", i < 2 ? 11.0 : 9.0, 10.0));
    }
    CHECK(timeliness(batch, schema).score ==
          doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("arrival exactly at the due time is on time") {
    RecordBatch batch;
    batch.records.push_back(make_record("1", "C", "1", 10.0, 10.0));
    const auto f = timeliness(batch, schema);
    CHECK(f.violations == 0);
    CHECK(f.score == 1.0);
  }
  SUBCASE("schema deadline applies when no due time is present") {
    schema.deadline_seconds = 60.0;
    RecordBatch batch;
    batch.records.push_back(make_record("1", "C", "1", 61.0));
    batch.records.push_back(make_record("1", "C", "1", 60.0));
    const auto f = timeliness(batch, schema);
    CHECK(f.violations == 1);
    CHECK(f.score == doctest::Approx(0.5).epsilon(1e-15));
  }
}

TEST_CASE("scores are permutation invariant and monotone under violations") {
  const auto schema = small_schema();
  RecordBatch batch;
  std::mt19937 rng(13);
  for (int i = 0; i < 30; ++i) {
    batch.records.push_back(make_record(
        i % 7 == 0 ? "150" : "20.5", i % 5 == 0 ? "bad" : "C",
        i % 3 == 0 ? std::optional<std::string>{} : "1", 0.0));
  }
  const auto base = score_batch(batch, schema);
  auto shuffled = batch;
  std::shuffle(shuffled.records.begin(), shuffled.records.end(), rng);
  const auto after = score_batch(shuffled, schema);
  CHECK(base.completeness.score == after.completeness.score);
  CHECK(base.accuracy.score == after.accuracy.score);
  CHECK(base.consistency.score == after.consistency.score);
  CHECK(base.timeliness.score == after.timeliness.score);

  // adding a violating record never raises the factor
  auto worse = batch;
  worse.records.push_back(make_record("999", "nope", "xx", 0.0));
  const auto w = score_batch(worse, schema);
  CHECK(w.accuracy.score <= base.accuracy.score);
  CHECK(w.consistency.score <= base.consistency.score);
}

TEST_CASE("data_reliability combiners") {
  QualityScores scores;
  scores.completeness.score = 0.99;
  scores.accuracy.score = 0.98;
  scores.consistency.score = 1.0;
  scores.timeliness.score = 0.95;

  const auto mean = data_reliability(
      scores, CombinerMode::normalized_mean({0.25, 0.25, 0.25, 0.25}));
  CHECK(mean.value == doctest::Approx(0.98).epsilon(1e-14));
  CHECK(mean.value >= 0.95);
  CHECK(mean.value <= 1.0);

  QualityScores ones;
  const auto sum = data_reliability(ones, CombinerMode::literal_sum());
  CHECK(sum.value == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(sum.exceeds_unity);

  const auto prod = data_reliability(ones, CombinerMode::product());
  CHECK(prod.value == 1.0);
}
