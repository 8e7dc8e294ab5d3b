#include "momdens/simulation.hpp"

#include "momdens/baseline.hpp"
#include "momdens/errors.hpp"
#include "momdens/estimators.hpp"
#include "momdens/random.hpp"
#include "momdens/theory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace momdens {

EstimatorId
parse_estimator(const std::string& name)
{
  if (name == "star") {
    return EstimatorId::star;
  }
  if (name == "basic") {
    return EstimatorId::basic;
  }
  if (name == "survival") {
    return EstimatorId::survival;
  }
  if (name == "direct") {
    return EstimatorId::direct;
  }
  if (name == "jones") {
    return EstimatorId::jones;
  }
  if (name == "jones-survival") {
    return EstimatorId::jones_survival;
  }
  throw ConfigError("unknown estimator '" + name + "'");
}

std::string
to_string(EstimatorId id)
{
  switch (id) {
    case EstimatorId::star:
      return "star";
    case EstimatorId::basic:
      return "basic";
    case EstimatorId::survival:
      return "survival";
    case EstimatorId::direct:
      return "direct";
    case EstimatorId::jones:
      return "jones";
    case EstimatorId::jones_survival:
      return "jones-survival";
  }
  return "unknown";
}

bool
is_kernel_baseline(EstimatorId id)
{
  return id == EstimatorId::jones || id == EstimatorId::jones_survival;
}

Sample
sample_scenario(const std::string& name, std::size_t n, std::uint64_t seed)
{
  if (n < 1) {
    throw DomainError("sample_scenario: n must be >= 1");
  }
  Random rng(seed);
  std::vector<double> values(n);
  if (name == "lb-exp2") {
    for (auto& v : values) {
      v = rng.gamma(2.0, 0.5);
    }
  } else if (name == "excess-gamma22") {
    // g = S / W is the equal mixture of Gamma(1, 2) and Gamma(2, 2)
    for (auto& v : values) {
      const double shape = rng.uniform() < 0.5 ? 1.0 : 2.0;
      v = rng.gamma(shape, 2.0);
    }
  } else {
    throw ConfigError("unknown scenario '" + name + "'");
  }
  return Sample(std::move(values), SampleProvenance{ name, seed });
}

double
exact_estimator_moments(const TruthScenario& scenario,
                        const WeightedModel& model,
                        double x,
                        double alpha,
                        int k,
                        const QuadratureSpec& spec)
{
  const bool survival = model.kind() == WeightKind::excess_life;
  if (!survival && model.kind() != WeightKind::length_biased) {
    throw ConfigError("exact_estimator_moments: model must be length-biased "
                      "or excess-life");
  }
  const auto& target = survival ? scenario.survival : scenario.f;
  if (k == 1) {
    return integrate(target, DeltaKernel(alpha, x, 1), spec);
  }
  if (k != 2) {
    throw DomainError("exact_estimator_moments: k must be 1 or 2");
  }
  const double W = model.known_total_weight();
  const double prefactor = std::exp(log_second_moment_prefactor(alpha, x));
  const DeltaKernel kernel(alpha, x, 2);
  if (survival) {
    // h_{alpha,x,1}^2(u) = u * prefactor * h_{alpha,x,2}(u)
    return W * prefactor *
           integrate([&target](double u) { return u * target(u); }, kernel, spec);
  }
  return W * prefactor * integrate(target, kernel, spec);
}

void
McConfig::validate() const
{
  if (replicates < 2) {
    throw ConfigError("Monte Carlo: replicates must be >= 2");
  }
  if (n_grid.empty()) {
    throw ConfigError("Monte Carlo: n-grid must not be empty");
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1 || (i > 0 && n_grid[i] <= n_grid[i - 1])) {
      throw ConfigError("Monte Carlo: n-grid must be positive and ascending");
    }
  }
  if (x_points.empty()) {
    throw ConfigError("Monte Carlo: x-points must not be empty");
  }
  for (double x : x_points) {
    if (!(x > 0.0)) {
      throw ConfigError("Monte Carlo: x-points must be positive");
    }
  }
  const auto [scenario_truth, model] = builtin_scenario(scenario);
  const bool lb = model.kind() == WeightKind::length_biased;
  switch (estimator) {
    case EstimatorId::star:
    case EstimatorId::jones:
      if (!lb) {
        throw ConfigError(to_string(estimator) +
                          " estimator needs a length-biased scenario");
      }
      break;
    case EstimatorId::survival:
    case EstimatorId::jones_survival:
      if (model.kind() != WeightKind::excess_life) {
        throw ConfigError(to_string(estimator) +
                          " estimator needs an excess-life scenario");
      }
      break;
    case EstimatorId::basic:
    case EstimatorId::direct:
      break;
  }
  if (is_kernel_baseline(estimator)) {
    bandwidth_from_exponent(1, bandwidth_exponent);
  }
}

namespace {

struct Evaluator
{
  const McConfig& config;
  const TruthScenario& scenario;
  const WeightedModel& model;

  double truth(double x) const
  {
    switch (config.estimator) {
      case EstimatorId::survival:
      case EstimatorId::jones_survival:
        return scenario.survival(x);
      case EstimatorId::direct:
        return observed_density(scenario, model, x);
      default:
        return scenario.f(x);
    }
  }

  double smoothing(std::size_t n, double x) const
  {
    if (is_kernel_baseline(config.estimator)) {
      return bandwidth_from_exponent(n, config.bandwidth_exponent);
    }
    const double minimum = (config.estimator == EstimatorId::basic ||
                            config.estimator == EstimatorId::direct)
                             ? 2.0
                             : 1.0;
    return config.alpha_rule.at(n, x, &scenario, scenario.total_weight, minimum);
  }

  double weight(const Sample& sample) const
  {
    if (config.weight_mode == WeightMode::known) {
      return model.known_total_weight();
    }
    if (model.kind() == WeightKind::excess_life) {
      const double alpha = std::max(2.0, alpha_global(sample.size(), 0.4, true));
      return 1.0 / direct_density(sample, alpha, default_g0_point(sample));
    }
    return estimate_total_weight(sample, model);
  }

  double evaluate(const Sample& sample, double weight, double smooth, double x) const
  {
    switch (config.estimator) {
      case EstimatorId::star:
        return moment_density_star(sample, model, weight, smooth, x);
      case EstimatorId::basic:
        return moment_density_basic(sample, model, weight, smooth, x);
      case EstimatorId::survival:
        return survival_estimate(sample, model, weight, smooth, x);
      case EstimatorId::direct:
        return direct_density(sample, smooth, x);
      case EstimatorId::jones:
        return jones_density(sample, model, weight, KernelSpec{ "standard-normal", smooth }, x);
      case EstimatorId::jones_survival:
        return jones_survival(sample, model, weight, KernelSpec{ "standard-normal", smooth }, x);
    }
    throw ConfigError("unknown estimator");
  }
};

// Runs body(r) for r in [0, count) on up to `threads` workers. The first
// exception thrown by any worker is rethrown.
template<typename Body>
void
parallel_for(std::size_t count, unsigned threads, Body&& body)
{
  if (threads <= 1 || count <= 1) {
    for (std::size_t r = 0; r < count; ++r) {
      body(r);
    }
    return;
  }
  std::atomic<std::size_t> next{ 0 };
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    const unsigned used = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    for (unsigned t = 0; t < used; ++t) {
      workers.emplace_back([&] {
        while (true) {
          const std::size_t r = next.fetch_add(1);
          if (r >= count) {
            return;
          }
          try {
            body(r);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) {
              error = std::current_exception();
            }
            next.store(count);
          }
        }
      });
    }
  }
  if (error) {
    std::rethrow_exception(error);
  }
}

McCell
aggregate(std::size_t n,
          double x,
          double smoothing,
          double truth,
          std::span<const double> values,
          bool keep)
{
  const double R = static_cast<double>(values.size());
  McCell cell;
  cell.n = n;
  cell.x = x;
  cell.smoothing = smoothing;
  cell.truth = truth;
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  cell.mean = sum / R;
  cell.bias = cell.mean - truth;
  double ss = 0.0;
  double sq_err = 0.0;
  for (double v : values) {
    ss += (v - cell.mean) * (v - cell.mean);
    sq_err += (v - truth) * (v - truth);
  }
  cell.variance = ss / R;
  cell.mse = sq_err / R;
  double ss_sq = 0.0;
  for (double v : values) {
    const double d = (v - truth) * (v - truth) - cell.mse;
    ss_sq += d * d;
  }
  cell.se_bias = std::sqrt(ss / (R - 1.0) / R);
  cell.se_mse = std::sqrt(ss_sq / (R - 1.0) / R);
  if (keep) {
    cell.replicate_values.assign(values.begin(), values.end());
  }
  return cell;
}

} // namespace

McResult
run_mc(const McConfig& config)
{
  config.validate();
  const auto [scenario, model] = builtin_scenario(config.scenario);
  const Evaluator eval{ config, scenario, model };
  unsigned threads = config.threads;
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }

  const std::size_t nx = config.x_points.size();
  const std::size_t R = config.replicates;
  McResult result;
  std::vector<double> table;
  for (std::size_t n : config.n_grid) {
    std::vector<double> smoothing(nx);
    for (std::size_t j = 0; j < nx; ++j) {
      smoothing[j] = eval.smoothing(n, config.x_points[j]);
    }
    table.assign(R * nx, 0.0);
    parallel_for(R, threads, [&](std::size_t r) {
      const std::uint64_t seed = config.seed_mode == SeedMode::constant
                                   ? config.root_seed
                                   : derive_seed(config.root_seed, n, r);
      const Sample sample = sample_scenario(config.scenario, n, seed);
      const double weight = eval.weight(sample);
      for (std::size_t j = 0; j < nx; ++j) {
        table[r * nx + j] = eval.evaluate(sample, weight, smoothing[j], config.x_points[j]);
      }
    });
    std::vector<double> column(R);
    for (std::size_t j = 0; j < nx; ++j) {
      for (std::size_t r = 0; r < R; ++r) {
        column[r] = table[r * nx + j];
      }
      const double x = config.x_points[j];
      result.cells.push_back(aggregate(n, x, smoothing[j], eval.truth(x), column,
                                       config.keep_replicates));
    }
  }
  return result;
}

RateFit
rate_fit(std::span<const double> ns, std::span<const double> mses)
{
  if (ns.size() != mses.size() || ns.size() < 3) {
    throw DomainError("rate_fit: need at least 3 (n, mse) pairs of equal length");
  }
  const std::size_t m = ns.size();
  std::vector<double> lx(m);
  std::vector<double> ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(ns[i] > 0.0) || !(mses[i] > 0.0)) {
      throw DomainError("rate_fit: inputs must be positive");
    }
    lx[i] = std::log(ns[i]);
    ly[i] = std::log(mses[i]);
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    throw DomainError("rate_fit: sample sizes must not all be equal");
  }
  RateFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ss_res += r * r;
  }
  // a constant series is fitted exactly by the zero slope
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

double
ks_distance_normal(std::span<const double> values)
{
  if (values.empty()) {
    throw DomainError("ks_distance_normal: no values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double m = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double cdf = normal_cdf(sorted[i]);
    d = std::max(d, static_cast<double>(i + 1) / m - cdf);
    d = std::max(d, cdf - static_cast<double>(i) / m);
  }
  return d;
}

NormalityResult
normality_experiment(const McConfig& config,
                     Centering centering,
                     Scaling scaling,
                     bool subtract_predicted_mean)
{
  if (config.replicates < 100) {
    throw ConfigError("normality experiment needs at least 100 replicates");
  }
  if (config.estimator != EstimatorId::star &&
      config.estimator != EstimatorId::survival) {
    throw ConfigError("normality experiment supports the star and survival "
                      "estimators only");
  }
  McConfig single = config;
  single.n_grid = { config.n_grid.at(0) };
  single.x_points = { config.x_points.at(0) };
  single.keep_replicates = true;
  single.weight_mode = WeightMode::known;
  const McResult mc = run_mc(single);
  const McCell& cell = mc.cells.front();

  const auto [scenario, model] = builtin_scenario(config.scenario);
  const bool survival = config.estimator == EstimatorId::survival;
  const std::size_t n = cell.n;
  const double nd = static_cast<double>(n);
  const double x = cell.x;
  const double alpha = cell.smoothing;
  const double W = scenario.total_weight;

  const double m1 = exact_estimator_moments(scenario, model, x, alpha, 1);
  const double m2 = exact_estimator_moments(scenario, model, x, alpha, 2);
  const double exact_sd = std::sqrt((m2 - m1 * m1) / nd);
  const AsymptoticReport report =
    survival ? survival_asymptotics(scenario, W, x, alpha, n)
             : density_asymptotics(scenario, W, x, alpha, n);
  const double norming = std::sqrt(nd) * std::pow(alpha, -0.25);

  NormalityResult out;
  out.replicate_count = cell.replicate_values.size();
  out.n = n;
  out.x = x;
  out.alpha = alpha;
  out.limit_variance = report.normal_variance;
  out.center = centering == Centering::exact_mean ? m1 : cell.truth;
  out.scale = scaling == Scaling::exact_variance
                ? exact_sd
                : std::sqrt(report.normal_variance) / norming;
  if (centering == Centering::true_value) {
    out.predicted_mean = scaling == Scaling::exact_variance
                           ? (m1 - cell.truth) / exact_sd
                           : report.normal_mean / std::sqrt(report.normal_variance);
  }

  const double shift = subtract_predicted_mean ? out.predicted_mean : 0.0;
  out.standardized.reserve(out.replicate_count);
  double scaled_sum = 0.0;
  for (double v : cell.replicate_values) {
    out.standardized.push_back((v - out.center) / out.scale - shift);
    scaled_sum += norming * (v - out.center);
  }
  const double R = static_cast<double>(out.replicate_count);
  out.scaled_mean = scaled_sum / R;
  double sum = 0.0;
  for (double z : out.standardized) {
    sum += z;
  }
  out.mean = sum / R;
  double ss = 0.0;
  for (double z : out.standardized) {
    ss += (z - out.mean) * (z - out.mean);
  }
  out.sd = std::sqrt(ss / (R - 1.0));
  out.ks_distance = ks_distance_normal(out.standardized);
  return out;
}

} // namespace momdens
