#include "momdens/baseline.hpp"

#include "momdens/errors.hpp"
#include "momdens/special_math.hpp"

#include <cmath>

namespace momdens {

void
KernelSpec::validate() const
{
  if (kernel != "standard-normal") {
    throw ConfigError("unsupported kernel '" + kernel + "'");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw DomainError("kernel bandwidth must be positive");
  }
}

double
bandwidth_from_exponent(std::size_t n, double beta)
{
  if (!(beta > 0.0 && beta < 0.25)) {
    throw ConfigError("bandwidth exponent beta must lie in (0, 1/4)");
  }
  if (n < 1) {
    throw DomainError("bandwidth: n must be >= 1");
  }
  return std::pow(static_cast<double>(n), -beta);
}

double
jones_density(const Sample& sample,
              const WeightedModel& model,
              double weight,
              const KernelSpec& spec,
              double x)
{
  spec.validate();
  if (model.kind() != WeightKind::length_biased) {
    throw ConfigError("jones_density requires a length-biased model, got " +
                      to_string(model.kind()));
  }
  if (!(x > 0.0)) {
    throw DomainError("jones_density: x must be positive");
  }
  if (!(weight > 0.0)) {
    throw DomainError("jones_density: weight must be positive");
  }
  const double h = spec.bandwidth;
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += normal_pdf((x - y) / h) / y;
  }
  return weight * sum / (static_cast<double>(sample.size()) * h);
}

double
jones_survival(const Sample& sample,
               const WeightedModel& model,
               double weight,
               const KernelSpec& spec,
               double x)
{
  spec.validate();
  if (model.kind() != WeightKind::excess_life) {
    throw ConfigError("jones_survival requires an excess-life model, got " +
                      to_string(model.kind()));
  }
  if (!(x > 0.0)) {
    throw DomainError("jones_survival: x must be positive");
  }
  if (!(weight > 0.0)) {
    throw DomainError("jones_survival: weight must be positive");
  }
  const double h = spec.bandwidth;
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += normal_pdf((x - y) / h);
  }
  return weight * sum / (static_cast<double>(sample.size()) * h);
}

} // namespace momdens
