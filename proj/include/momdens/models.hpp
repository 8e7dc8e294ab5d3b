#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace momdens {

using RealFunction = std::function<double(double)>;

//! Known ground truth for a target distribution F on (0, inf).
struct TruthScenario
{
  std::string id;
  RealFunction f;  // target density
  RealFunction f1; // f'
  RealFunction f2; // f''
  RealFunction cdf;
  RealFunction survival;
  double total_weight = 1.0;
  //! sup |f''| and sup |F''|, when known
  std::optional<double> sup_f2;
  std::optional<double> sup_cdf2;

  double density_at(double x) const { return f(x); }
  //! Throws StateError when the scenario does not carry the derivative.
  double derivative_at(double x) const;
  double second_derivative_at(double x) const;
  double hazard_at(double x) const { return f(x) / survival(x); }

  //! Checks S = 1 - F, f >= 0 and F nondecreasing on the grid. Throws
  //! ConfigError on violation.
  void check_consistency(std::span<const double> grid,
                         double tolerance = 1e-12) const;
};

enum class WeightKind
{
  length_biased,
  excess_life,
  direct,
  custom
};

std::string to_string(WeightKind kind);

//! Weighted sampling model g(y) = w(y) f(y) / W.
class WeightedModel
{
public:
  static WeightedModel length_biased(std::optional<double> total_weight = {});
  static WeightedModel direct();
  //! w = (1 - F) / f = 1 / hazard, with W taken from the scenario.
  static WeightedModel excess_life(const TruthScenario& scenario);
  //! Excess-life model without a known truth: weights and W must be
  //! estimated from the data.
  static WeightedModel excess_life_unknown();
  static WeightedModel custom(RealFunction weight,
                              std::optional<double> total_weight = {});

  WeightKind kind() const { return kind_; }
  bool has_weight_function() const { return static_cast<bool>(weight_); }
  //! w(y); throws DomainError for y <= 0 or a nonpositive weight value and
  //! StateError if the model has no weight function.
  double weight(double y) const;
  const std::optional<double>& total_weight() const { return total_weight_; }
  //! W; throws StateError when unknown.
  double known_total_weight() const;

private:
  WeightedModel(WeightKind kind,
                RealFunction weight,
                std::optional<double> total_weight);

  WeightKind kind_;
  RealFunction weight_;
  std::optional<double> total_weight_;
};

struct SampleProvenance
{
  std::string scenario;
  std::uint64_t seed = 0;
};

//! Observations Y_1..Y_n, all strictly positive.
class Sample
{
public:
  explicit Sample(std::vector<double> values,
                  std::optional<SampleProvenance> provenance = {});

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::optional<SampleProvenance>& provenance() const
  {
    return provenance_;
  }
  double median() const;

private:
  std::vector<double> values_;
  std::optional<SampleProvenance> provenance_;
};

//! Built-in scenario names: "lb-exp2", "excess-gamma22".
std::vector<std::string> builtin_scenario_names();

std::pair<TruthScenario, WeightedModel> builtin_scenario(const std::string& name);

//! Sampled density g(y). For excess-life models this is S(y) / W.
double observed_density(const TruthScenario& scenario,
                        const WeightedModel& model,
                        double y);

} // namespace momdens
