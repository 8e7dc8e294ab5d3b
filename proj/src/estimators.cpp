#include "momdens/estimators.hpp"

#include "momdens/errors.hpp"
#include "momdens/special_math.hpp"

#include <cmath>
#include <sstream>

namespace momdens {

namespace {

void
require_point(double x, const char* who)
{
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(who) + ": evaluation point must be positive");
  }
}

void
require_alpha(double alpha, double minimum, const char* who)
{
  if (!(alpha >= minimum) || !std::isfinite(alpha)) {
    std::ostringstream msg;
    msg << who << ": alpha must be >= " << minimum << ", got " << alpha;
    throw DomainError(msg.str());
  }
}

void
require_weight(double weight, const char* who)
{
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw DomainError(std::string(who) + ": weight must be positive");
  }
}

// Gamma kernel with shape alpha and rate alpha / x; its density at Y is
// h_{alpha,x,1}(Y).
GammaKernel
point_kernel(double alpha, double x)
{
  return { alpha, alpha / x };
}

} // namespace

void
EstimateCurve::validate() const
{
  if (grid.size() != values.size() || grid.size() != alphas.size()) {
    throw StateError("estimate curve: length mismatch");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw StateError("estimate curve: grid must be positive and increasing");
    }
  }
}

double
estimate_total_weight(const Sample& sample, const WeightedModel& model)
{
  double inv_sum = 0.0;
  for (double y : sample.values()) {
    inv_sum += 1.0 / model.weight(y);
  }
  return static_cast<double>(sample.size()) / inv_sum;
}

MomentEstimate
empirical_moment(const Sample& sample,
                 const WeightedModel& model,
                 int k,
                 double weight)
{
  if (k < 0) {
    throw DomainError("empirical_moment: order must be nonnegative");
  }
  require_weight(weight, "empirical_moment");
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += std::pow(y, k) / model.weight(y);
  }
  return { k, weight * sum / static_cast<double>(sample.size()), weight };
}

double
moment_density_basic(const Sample& sample,
                     const WeightedModel& model,
                     double weight,
                     double alpha,
                     double x)
{
  require_alpha(alpha, 2.0, "moment_density_basic");
  require_point(x, "moment_density_basic");
  require_weight(weight, "moment_density_basic");
  const GammaKernel kernel = point_kernel(alpha, x);
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += kernel.density(y) / model.weight(y);
  }
  const double factor = (alpha - 1.0) / alpha;
  return weight * factor * sum / static_cast<double>(sample.size());
}

double
moment_density_star(const Sample& sample,
                    const WeightedModel& model,
                    double weight,
                    double alpha,
                    double x)
{
  if (model.kind() != WeightKind::length_biased) {
    throw ConfigError("moment_density_star requires a length-biased model, got " +
                      to_string(model.kind()));
  }
  require_alpha(alpha, 1.0, "moment_density_star");
  require_point(x, "moment_density_star");
  require_weight(weight, "moment_density_star");
  const GammaKernel kernel = point_kernel(alpha, x);
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += std::exp(kernel.log_density(y) - std::log(y));
  }
  return weight * sum / static_cast<double>(sample.size());
}

double
survival_estimate(const Sample& sample,
                  const WeightedModel& model,
                  double weight,
                  double alpha,
                  double x)
{
  if (model.kind() != WeightKind::excess_life) {
    throw ConfigError("survival_estimate requires an excess-life model, got " +
                      to_string(model.kind()));
  }
  require_alpha(alpha, 1.0, "survival_estimate");
  require_point(x, "survival_estimate");
  require_weight(weight, "survival_estimate");
  const GammaKernel kernel = point_kernel(alpha, x);
  double sum = 0.0;
  for (double y : sample.values()) {
    sum += kernel.density(y);
  }
  return weight * sum / static_cast<double>(sample.size());
}

double
direct_density(const Sample& sample, double alpha, double y)
{
  require_alpha(alpha, 2.0, "direct_density");
  require_point(y, "direct_density");
  const GammaKernel kernel = point_kernel(alpha, y);
  double sum = 0.0;
  for (double obs : sample.values()) {
    sum += kernel.density(obs);
  }
  return (alpha - 1.0) / alpha * sum / static_cast<double>(sample.size());
}

double
direct_density_derivative(const Sample& sample, double alpha, double y)
{
  require_alpha(alpha, 2.0, "direct_density_derivative");
  require_point(y, "direct_density_derivative");
  const GammaKernel kernel = point_kernel(alpha, y);
  // d/dy log T_i(y) = alpha (Y_i - y) / y^2
  double sum = 0.0;
  for (double obs : sample.values()) {
    sum += kernel.density(obs) * (obs - y);
  }
  return (alpha - 1.0) / alpha * (alpha / (y * y)) * sum /
         static_cast<double>(sample.size());
}

ExcessPlugins
excess_plugins(const Sample& sample, double alpha, double y, double g0_point)
{
  require_point(g0_point, "excess_plugins");
  const double g0 = direct_density(sample, alpha, g0_point);
  const double gy = direct_density(sample, alpha, y);
  if (!(g0 > 0.0)) {
    throw DomainError("excess_plugins: g_hat vanishes at the g0 evaluation point");
  }
  if (!(gy > 0.0)) {
    throw DomainError("excess_plugins: g_hat vanishes at y");
  }
  const double dg = direct_density_derivative(sample, alpha, y);
  ExcessPlugins out{};
  out.W_hat = 1.0 / g0;
  out.f_hat = -dg * out.W_hat;
  out.hazard_hat = -dg / gy;
  if (dg != 0.0) {
    out.w_hat = -gy / dg;
  }
  return out;
}

double
default_g0_point(const Sample& sample)
{
  return 0.05 * sample.median();
}

EstimateCurve
evaluate_curve(std::string estimator_id,
               std::span<const double> grid,
               const std::function<double(double)>& alpha_at,
               const std::function<double(double, double)>& estimator)
{
  EstimateCurve curve;
  curve.estimator_id = std::move(estimator_id);
  curve.grid.assign(grid.begin(), grid.end());
  curve.values.reserve(grid.size());
  curve.alphas.reserve(grid.size());
  for (double x : grid) {
    const double alpha = alpha_at(x);
    curve.alphas.push_back(alpha);
    curve.values.push_back(estimator(alpha, x));
  }
  curve.validate();
  return curve;
}

} // namespace momdens
