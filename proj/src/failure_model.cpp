#include "cpsrel/failure_model.hpp"

#include <cmath>
#include <limits>

#include "cpsrel/errors.hpp"

namespace cpsrel {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

void require_finite(double v, const std::string& name) {
  require(std::isfinite(v), name + " must be finite");
}

}  // namespace

ConstantRate::ConstantRate(double lambda_) : lambda(lambda_) {
  require_finite(lambda, "lambda");
  require(lambda >= 0.0, "lambda must be >= 0");
}

PowerLaw::PowerLaw(double scale_, double shape_) : scale(scale_), shape(shape_) {
  require_finite(scale, "scale");
  require_finite(shape, "shape");
  require(scale >= 0.0, "scale must be >= 0");
  require(shape > 0.0, "shape must be > 0");
}

SrgmNhpp::SrgmNhpp(double a_, double b_, double t_test_)
    : a(a_), b(b_), t_test(t_test_) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(t_test, "t_test");
  require(a > 0.0, "a must be > 0");
  require(b > 0.0, "b must be > 0");
  require(t_test >= 0.0, "t_test must be >= 0");
}

double reliability_at(const FailureModel& model, double mission_hours) {
  require(mission_hours >= 0.0 && std::isfinite(mission_hours),
          "mission must be >= 0");
  return windowed_reliability(model, 0.0, mission_hours);
}

double windowed_reliability(const FailureModel& model, double t_start_hours,
                            double x_hours) {
  require(t_start_hours >= 0.0 && std::isfinite(t_start_hours),
          "window start must be >= 0");
  require(x_hours >= 0.0 && std::isfinite(x_hours),
          "window length must be >= 0");
  struct Visitor {
    double t0;
    double x;
    double operator()(const ConstantRate& m) const {
      return std::exp(-m.lambda * x);
    }
    double operator()(const PowerLaw& m) const {
      const double increment =
          m.scale * (std::pow(t0 + x, m.shape) - std::pow(t0, m.shape));
      return std::exp(-increment);
    }
    double operator()(const SrgmNhpp& m) const {
      const double lo = m.t_test + t0;
      const double increment =
          srgm_mean_value(m.a, m.b, lo + x) - srgm_mean_value(m.a, m.b, lo);
      return std::exp(-increment);
    }
  };
  return std::visit(Visitor{t_start_hours, x_hours}, model);
}

std::optional<double> mtbf(const ConstantRate& model) {
  if (model.lambda == 0.0) return std::nullopt;
  return 1.0 / model.lambda;
}

double srgm_mean_value(double a, double b, double t_hours) {
  require(a > 0.0, "a must be > 0");
  require(b > 0.0, "b must be > 0");
  require(t_hours >= 0.0, "t must be >= 0");
  // -expm1 keeps precision for small b*t.
  return a * -std::expm1(-b * t_hours);
}

double srgm_intensity(double a, double b, double t_hours) {
  require(a > 0.0, "a must be > 0");
  require(b > 0.0, "b must be > 0");
  require(t_hours >= 0.0, "t must be >= 0");
  return a * b * std::exp(-b * t_hours);
}

double srgm_count_pmf(double a, double b, double t_hours, std::int64_t n) {
  require(n >= 0, "n must be >= 0");
  const double m = srgm_mean_value(a, b, t_hours);
  if (m == 0.0) return n == 0 ? 1.0 : 0.0;
  // log-space to avoid overflow of m^n / n!.
  const double log_p =
      static_cast<double>(n) * std::log(m) - std::lgamma(static_cast<double>(n) + 1.0) - m;
  return std::exp(log_p);
}

double sh_intensity(double scale, double shape, double t_hours) {
  require(scale >= 0.0, "scale must be >= 0");
  require(shape > 0.0, "shape must be > 0");
  require(t_hours >= 0.0, "t must be >= 0");
  if (t_hours == 0.0 && shape < 1.0) {
    throw ValidationError("intensity is singular at t = 0 for shape < 1");
  }
  return scale * shape * std::pow(t_hours, shape - 1.0);
}

std::string model_type_name(const FailureModel& model) {
  struct Visitor {
    std::string operator()(const ConstantRate&) const { return "constant"; }
    std::string operator()(const PowerLaw&) const { return "powerlaw"; }
    std::string operator()(const SrgmNhpp&) const { return "srgm"; }
  };
  return std::visit(Visitor{}, model);
}

}  // namespace cpsrel
