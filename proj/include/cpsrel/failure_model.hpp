#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace cpsrel {

/// Exponential lifetime: survival e^{-lambda * t}.
struct ConstantRate {
  double lambda = 0.0;  ///< failures per hour, >= 0

  ConstantRate() = default;
  explicit ConstantRate(double lambda);
};

/// Power-law (Weibull-type) cumulative intensity scale * t^shape.
/// Covers both wear-out hardware and software-hardware interaction failures.
struct PowerLaw {
  double scale = 0.0;  ///< per hour^shape, >= 0
  double shape = 1.0;  ///< dimensionless, > 0

  PowerLaw() = default;
  PowerLaw(double scale, double shape);
};

/// NHPP software reliability growth model with mean value
/// m(t) = a * (1 - e^{-b t}); missions start after t_test hours of testing.
struct SrgmNhpp {
  double a = 1.0;       ///< total expected faults, > 0
  double b = 1.0;       ///< fault-detection rate per hour, > 0
  double t_test = 0.0;  ///< accumulated test time in hours, >= 0

  SrgmNhpp() = default;
  SrgmNhpp(double a, double b, double t_test);
};

using FailureModel = std::variant<ConstantRate, PowerLaw, SrgmNhpp>;

/// Survival probability of a fresh-start mission of the given length.
double reliability_at(const FailureModel& model, double mission_hours);

/// Counting-process survival over the window (t_start, t_start + x].
/// For SrgmNhpp the window is additionally shifted by t_test.
double windowed_reliability(const FailureModel& model, double t_start_hours,
                            double x_hours);

/// 1/lambda; nullopt marks the infinite-MTBF case lambda = 0.
std::optional<double> mtbf(const ConstantRate& model);

/// Expected cumulative fault count a * (1 - e^{-b t}).
double srgm_mean_value(double a, double b, double t_hours);

/// Failure intensity a * b * e^{-b t}, the derivative of srgm_mean_value.
double srgm_intensity(double a, double b, double t_hours);

/// P{N(t) = n} for the NHPP fault count, Poisson with mean m(t).
double srgm_count_pmf(double a, double b, double t_hours, std::int64_t n);

/// Power-law failure intensity scale * shape * t^{shape-1}.
/// t = 0 with shape < 1 is a genuine singularity and is rejected.
double sh_intensity(double scale, double shape, double t_hours);

std::string model_type_name(const FailureModel& model);

}  // namespace cpsrel
