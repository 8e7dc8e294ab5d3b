#include "momdens/theory.hpp"

#include "momdens/errors.hpp"

#include <cmath>
#include <numbers>

namespace momdens {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

void
check_common(double x, double alpha, std::size_t n, double total_weight)
{
  if (!(x > 0.0)) {
    throw DomainError("asymptotics: x must be positive");
  }
  if (!(alpha >= 1.0)) {
    throw DomainError("asymptotics: alpha must be >= 1");
  }
  if (n < 1) {
    throw DomainError("asymptotics: n must be >= 1");
  }
  if (!(total_weight > 0.0)) {
    throw DomainError("asymptotics: W must be positive");
  }
}

AsymptoticReport
assemble(double bias, double limit_variance, double alpha, std::size_t n)
{
  const double nd = static_cast<double>(n);
  AsymptoticReport r{};
  r.bias = bias;
  r.normal_variance = limit_variance;
  r.variance = limit_variance * std::sqrt(alpha) / nd;
  r.mse = r.variance + bias * bias;
  r.normal_mean = std::sqrt(nd) * std::pow(alpha, -0.25) * bias;
  r.rate_exponent = -0.8;
  return r;
}

// n^{-4/5} [W^2 |d| t^2 / (pi sqrt 2)]^{2/5}, t = f(x)/x or S(x)
std::optional<double>
local_mse(double W, double derivative, double level, std::size_t n)
{
  if (derivative == 0.0) {
    return std::nullopt;
  }
  const double inner = W * W * std::abs(derivative) * level * level /
                       (std::numbers::pi * std::numbers::sqrt2);
  return std::pow(static_cast<double>(n), -0.8) * std::pow(inner, 0.4);
}

} // namespace

AsymptoticReport
density_asymptotics(const TruthScenario& scenario,
                    double total_weight,
                    double x,
                    double alpha,
                    std::size_t n)
{
  check_common(x, alpha, n, total_weight);
  const double f = scenario.density_at(x);
  if (!(f > 0.0)) {
    throw DomainError("density_asymptotics: f(x) must be positive");
  }
  const double bias = x * x * scenario.second_derivative_at(x) / (2.0 * alpha);
  const double limit_var = total_weight * f / (2.0 * x * x * kSqrtPi);
  return assemble(bias, limit_var, alpha, n);
}

OptimalMse
density_mse_optimal(const TruthScenario& scenario,
                    double total_weight,
                    double x,
                    std::size_t n)
{
  check_common(x, 1.0, n, total_weight);
  const double f = scenario.density_at(x);
  const double f2 = scenario.second_derivative_at(x);
  OptimalMse out{};
  out.constant = total_weight * f / (2.0 * kSqrtPi * x * x) +
                 std::pow(x, 4) * f2 * f2 / 4.0;
  out.global = out.constant * std::pow(static_cast<double>(n), -0.8);
  // f^2 / x^2 = (f / x)^2
  out.local = local_mse(total_weight, f2, f / x, n);
  return out;
}

AsymptoticReport
survival_asymptotics(const TruthScenario& scenario,
                     double total_weight,
                     double x,
                     double alpha,
                     std::size_t n)
{
  check_common(x, alpha, n, total_weight);
  const double S = scenario.survival(x);
  if (!(S > 0.0)) {
    throw DomainError("survival_asymptotics: S(x) must be positive");
  }
  const double bias = -x * x * scenario.derivative_at(x) / (2.0 * alpha);
  const double limit_var = total_weight * S / (2.0 * x * kSqrtPi);
  return assemble(bias, limit_var, alpha, n);
}

OptimalMse
survival_mse_optimal(const TruthScenario& scenario,
                     double total_weight,
                     double x,
                     std::size_t n)
{
  check_common(x, 1.0, n, total_weight);
  const double S = scenario.survival(x);
  const double f1 = scenario.derivative_at(x);
  OptimalMse out{};
  out.constant = total_weight * S / (2.0 * x * kSqrtPi) +
                 std::pow(x, 4) * f1 * f1 / 4.0;
  out.global = out.constant * std::pow(static_cast<double>(n), -0.8);
  out.local = local_mse(total_weight, f1, S, n);
  return out;
}

double
jones_mse(const TruthScenario& scenario,
          double total_weight,
          double x,
          double bandwidth,
          std::size_t n,
          const KernelConstants& constants)
{
  check_common(x, 1.0, n, total_weight);
  if (!(bandwidth > 0.0)) {
    throw DomainError("jones_mse: bandwidth must be positive");
  }
  const double f = scenario.density_at(x);
  const double f2 = scenario.second_derivative_at(x);
  const double h = bandwidth;
  const double variance = total_weight * f * constants.roughness /
                          (static_cast<double>(n) * h * x);
  const double bias = 0.5 * h * h * f2 * constants.second_moment;
  return variance + bias * bias;
}

double
log_second_moment_prefactor(double alpha, double x)
{
  if (!(alpha >= 2.0)) {
    throw DomainError("second moment prefactor: alpha must be >= 2");
  }
  if (!(x > 0.0)) {
    throw DomainError("second moment prefactor: x must be positive");
  }
  if (alpha < 16.0) {
    return 2.0 * std::log(alpha / x) + log_gamma(2.0 * alpha - 2.0) -
           2.0 * log_gamma(alpha) - (2.0 * alpha - 2.0) * std::numbers::ln2;
  }
  // Stirling form: the O(alpha log alpha) parts cancel analytically
  return 2.0 * std::log(alpha / x) + (2.0 * alpha - 1.0) * std::log1p(-1.0 / alpha) -
         1.5 * std::log(alpha - 1.0) + 2.0 - 0.5 * std::log(4.0 * std::numbers::pi) +
         stirling_error(2.0 * alpha - 2.0) - 2.0 * stirling_error(alpha);
}

double
stirling_second_moment_prefactor(double alpha, double x)
{
  return std::sqrt(alpha) / (2.0 * kSqrtPi * x * x);
}

double
exact_density_bias(const TruthScenario& scenario,
                   double x,
                   double alpha,
                   const QuadratureSpec& spec)
{
  const double fx = scenario.density_at(x);
  const auto& f = scenario.f;
  return integrate([&](double u) { return f(u) - fx; },
                   DeltaKernel(alpha, x, 1), spec);
}

double
exact_survival_bias(const TruthScenario& scenario,
                    double x,
                    double alpha,
                    const QuadratureSpec& spec)
{
  const double Sx = scenario.survival(x);
  const auto& S = scenario.survival;
  return integrate([&](double u) { return S(u) - Sx; },
                   DeltaKernel(alpha, x, 1), spec);
}

} // namespace momdens
