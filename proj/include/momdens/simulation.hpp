#pragma once

#include "momdens/models.hpp"
#include "momdens/smoothing.hpp"
#include "momdens/special_math.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace momdens {

enum class EstimatorId
{
  star,           // length-biased moment-density estimator
  basic,          // moment-density estimator with the (alpha - 1) factor
  survival,       // excess-life survival estimator
  direct,         // estimator of the sampled density g
  jones,          // Gaussian-kernel length-biased density estimator
  jones_survival  // Gaussian-kernel excess-life survival estimator
};

EstimatorId parse_estimator(const std::string& name);
std::string to_string(EstimatorId id);
bool is_kernel_baseline(EstimatorId id);

//! Draws n observations from the sampled density g of a built-in scenario.
//! Deterministic in (name, n, seed).
Sample sample_scenario(const std::string& name, std::size_t n, std::uint64_t seed);

//! E M^k (length-biased model) or E L^k (excess-life model) for one summand
//! of the star/survival estimator, k in {1, 2}, via the exact log-space
//! prefactor and quadrature against h_{alpha,x,k}.
double exact_estimator_moments(const TruthScenario& scenario,
                               const WeightedModel& model,
                               double x,
                               double alpha,
                               int k,
                               const QuadratureSpec& spec = {});

enum class WeightMode
{
  known,    // scenario W
  estimated // W_hat from each replicate sample
};

enum class SeedMode
{
  derived, // seed per (n, replicate)
  constant // every replicate uses the root seed (aggregator self-test)
};

struct McConfig
{
  std::string scenario = "lb-exp2";
  EstimatorId estimator = EstimatorId::star;
  std::vector<std::size_t> n_grid;
  std::size_t replicates = 2;
  std::vector<double> x_points;
  AlphaRule alpha_rule = AlphaRule::global(0.4);
  std::uint64_t root_seed = 1;
  //! h = n^{-beta} for the kernel baselines
  double bandwidth_exponent = 0.2;
  WeightMode weight_mode = WeightMode::known;
  SeedMode seed_mode = SeedMode::derived;
  //! 0 picks std::thread::hardware_concurrency()
  unsigned threads = 0;
  bool keep_replicates = false;

  void validate() const;
};

//! Aggregate over R replicates at one (n, x). Variances use the 1/R
//! normalisation so that mse = bias^2 + variance.
struct McCell
{
  std::size_t n = 0;
  double x = 0.0;
  //! alpha for moment estimators, bandwidth for kernel baselines
  double smoothing = 0.0;
  double truth = 0.0;
  double mean = 0.0;
  double bias = 0.0;
  double variance = 0.0;
  double mse = 0.0;
  double se_bias = 0.0;
  double se_mse = 0.0;
  std::vector<double> replicate_values;
};

struct McResult
{
  //! n-major, then x in configuration order
  std::vector<McCell> cells;
};

McResult run_mc(const McConfig& config);

struct RateFit
{
  double slope;
  double intercept;
  double r2;
};

//! Least-squares fit of log mse against log n.
RateFit rate_fit(std::span<const double> ns, std::span<const double> mses);

//! One-sample Kolmogorov-Smirnov distance to the standard normal cdf.
double ks_distance_normal(std::span<const double> values);

enum class Centering
{
  exact_mean, // E estimate, from exact_estimator_moments
  true_value  // f(x) or S(x)
};

enum class Scaling
{
  exact_variance, // (E M^2 - (E M)^2) / n
  theory_variance // n^{1/2} alpha^{-1/4} normalisation, limit variance
};

struct NormalityResult
{
  double ks_distance = 0.0;
  std::size_t replicate_count = 0;
  std::size_t n = 0;
  double x = 0.0;
  double alpha = 0.0;
  double center = 0.0;
  double scale = 0.0;
  //! mean and sd of the standardized values
  double mean = 0.0;
  double sd = 0.0;
  //! mean of n^{1/2} alpha^{-1/4} (estimate - center)
  double scaled_mean = 0.0;
  //! predicted limit mean of the standardized values (0 unless the
  //! leading bias survives the normalisation)
  double predicted_mean = 0.0;
  double limit_variance = 0.0;
  std::vector<double> standardized;
};

//! Runs the replicates at the first n and first x of the configuration and
//! standardizes them. Requires R >= 100 and the star or survival estimator.
//! With subtract_predicted_mean the predicted limit mean is removed before
//! the KS distance is taken.
NormalityResult normality_experiment(const McConfig& config,
                                     Centering centering,
                                     Scaling scaling,
                                     bool subtract_predicted_mean = false);

} // namespace momdens
