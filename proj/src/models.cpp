#include "momdens/models.hpp"

#include "momdens/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace momdens {

double
TruthScenario::derivative_at(double x) const
{
  if (!f1) {
    throw StateError("scenario '" + id + "' does not provide f'");
  }
  return f1(x);
}

double
TruthScenario::second_derivative_at(double x) const
{
  if (!f2) {
    throw StateError("scenario '" + id + "' does not provide f''");
  }
  return f2(x);
}

void
TruthScenario::check_consistency(std::span<const double> grid,
                                 double tolerance) const
{
  double previous_cdf = 0.0;
  for (double x : grid) {
    const double F = cdf(x);
    const double S = survival(x);
    if (std::abs(S - (1.0 - F)) > tolerance) {
      std::ostringstream msg;
      msg << "scenario '" << id << "': S(x) != 1 - F(x) at x=" << x;
      throw ConfigError(msg.str());
    }
    if (f(x) < 0.0) {
      throw ConfigError("scenario '" + id + "': negative density");
    }
    if (F < previous_cdf - tolerance || F < -tolerance) {
      throw ConfigError("scenario '" + id + "': cdf not nondecreasing from 0");
    }
    previous_cdf = F;
  }
}

std::string
to_string(WeightKind kind)
{
  switch (kind) {
    case WeightKind::length_biased:
      return "length-biased";
    case WeightKind::excess_life:
      return "excess-life";
    case WeightKind::direct:
      return "direct";
    case WeightKind::custom:
      return "custom";
  }
  return "unknown";
}

WeightedModel::WeightedModel(WeightKind kind,
                             RealFunction weight,
                             std::optional<double> total_weight)
  : kind_(kind)
  , weight_(std::move(weight))
  , total_weight_(total_weight)
{
  if (total_weight_ && !(*total_weight_ > 0.0)) {
    throw DomainError("total weight W must be positive");
  }
}

WeightedModel
WeightedModel::length_biased(std::optional<double> total_weight)
{
  return { WeightKind::length_biased, [](double y) { return y; }, total_weight };
}

WeightedModel
WeightedModel::direct()
{
  return { WeightKind::direct, [](double) { return 1.0; }, 1.0 };
}

WeightedModel
WeightedModel::excess_life(const TruthScenario& scenario)
{
  auto S = scenario.survival;
  auto f = scenario.f;
  return { WeightKind::excess_life,
           [S, f](double y) { return S(y) / f(y); },
           scenario.total_weight };
}

WeightedModel
WeightedModel::excess_life_unknown()
{
  return { WeightKind::excess_life, RealFunction{}, std::nullopt };
}

WeightedModel
WeightedModel::custom(RealFunction weight, std::optional<double> total_weight)
{
  if (!weight) {
    throw ConfigError("custom model requires a weight function");
  }
  return { WeightKind::custom, std::move(weight), total_weight };
}

double
WeightedModel::weight(double y) const
{
  if (!weight_) {
    throw StateError("weight function of this " + to_string(kind_) +
                     " model is unknown");
  }
  if (!(y > 0.0)) {
    throw DomainError("weight: y must be positive");
  }
  const double w = weight_(y);
  if (!(w > 0.0)) {
    std::ostringstream msg;
    msg << "weight: w(" << y << ") = " << w << " is not positive";
    throw DomainError(msg.str());
  }
  return w;
}

double
WeightedModel::known_total_weight() const
{
  if (!total_weight_) {
    throw StateError("total weight W of this " + to_string(kind_) +
                     " model is unknown");
  }
  return *total_weight_;
}

Sample::Sample(std::vector<double> values,
               std::optional<SampleProvenance> provenance)
  : values_(std::move(values))
  , provenance_(std::move(provenance))
{
  if (values_.empty()) {
    throw DomainError("sample must contain at least one observation");
  }
  for (double v : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "sample values must be positive and finite, got " << v;
      throw DomainError(msg.str());
    }
  }
}

double
Sample::median() const
{
  std::vector<double> sorted(values_);
  const std::size_t mid = sorted.size() / 2;
  std::nth_element(sorted.begin(), sorted.begin() + mid, sorted.end());
  if (sorted.size() % 2 == 1) {
    return sorted[mid];
  }
  const double upper = sorted[mid];
  const double lower = *std::max_element(sorted.begin(), sorted.begin() + mid);
  return 0.5 * (lower + upper);
}

std::vector<std::string>
builtin_scenario_names()
{
  return { "lb-exp2", "excess-gamma22" };
}

namespace {

// Length-biased sampling with g = Gamma(2, scale 1/2): f(x) = 2 exp(-2x).
TruthScenario
lb_exp2()
{
  TruthScenario s;
  s.id = "lb-exp2";
  s.f = [](double x) { return 2.0 * std::exp(-2.0 * x); };
  s.f1 = [](double x) { return -4.0 * std::exp(-2.0 * x); };
  s.f2 = [](double x) { return 8.0 * std::exp(-2.0 * x); };
  s.cdf = [](double x) { return -std::expm1(-2.0 * x); };
  s.survival = [](double x) { return std::exp(-2.0 * x); };
  s.total_weight = 0.5;
  s.sup_f2 = 8.0;
  s.sup_cdf2 = 4.0;
  return s;
}

// Excess life of a renewal process with F = Gamma(2, scale 2).
TruthScenario
excess_gamma22()
{
  TruthScenario s;
  s.id = "excess-gamma22";
  s.f = [](double x) { return 0.25 * x * std::exp(-0.5 * x); };
  s.f1 = [](double x) { return (2.0 - x) * std::exp(-0.5 * x) / 8.0; };
  s.f2 = [](double x) { return (x - 4.0) * std::exp(-0.5 * x) / 16.0; };
  s.survival = [](double x) { return (1.0 + 0.5 * x) * std::exp(-0.5 * x); };
  // 1 - (1 + x/2) e^{-x/2}, written to avoid cancellation near 0
  s.cdf = [](double x) {
    const double h = 0.5 * x;
    return -std::expm1(-h) - h * std::exp(-h);
  };
  s.total_weight = 4.0;
  s.sup_f2 = 0.25;
  s.sup_cdf2 = 0.25;
  return s;
}

} // namespace

std::pair<TruthScenario, WeightedModel>
builtin_scenario(const std::string& name)
{
  if (name == "lb-exp2") {
    TruthScenario s = lb_exp2();
    WeightedModel m = WeightedModel::length_biased(s.total_weight);
    return { std::move(s), std::move(m) };
  }
  if (name == "excess-gamma22") {
    TruthScenario s = excess_gamma22();
    WeightedModel m = WeightedModel::excess_life(s);
    return { std::move(s), std::move(m) };
  }
  throw ConfigError("unknown scenario '" + name + "'");
}

double
observed_density(const TruthScenario& scenario,
                 const WeightedModel& model,
                 double y)
{
  const double W = model.known_total_weight();
  if (model.kind() == WeightKind::excess_life) {
    if (!(y >= 0.0)) {
      throw DomainError("observed_density: y must be nonnegative");
    }
    return scenario.survival(y) / W;
  }
  return model.weight(y) * scenario.f(y) / W;
}

} // namespace momdens
