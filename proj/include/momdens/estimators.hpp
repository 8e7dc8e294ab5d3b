#pragma once

#include "momdens/models.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace momdens {

struct MomentEstimate
{
  int order;
  double value;
  double weight_used;
};

//! Pointwise estimates over an increasing grid of positive points.
struct EstimateCurve
{
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> alphas;
  std::string estimator_id;

  void validate() const;
};

//! W_hat = (mean of 1 / w(Y_j))^{-1}.
double estimate_total_weight(const Sample& sample, const WeightedModel& model);

//! mu_hat_k = (weight / n) sum Y_i^k / w(Y_i).
MomentEstimate empirical_moment(const Sample& sample,
                                const WeightedModel& model,
                                int k,
                                double weight);

//! Moment-density estimator built from the gamma inversion formula with the
//! (alpha - 1) factor: (weight / n) sum (1 / w(Y_i)) ((alpha - 1) / alpha)
//! p(Y_i), with p the gamma density of shape alpha and rate alpha / x.
//! Requires alpha >= 2.
double moment_density_basic(const Sample& sample,
                            const WeightedModel& model,
                            double weight,
                            double alpha,
                            double x);

//! Length-biased estimator (1 / n) sum (weight / Y_i) h_{alpha,x,1}(Y_i).
//! Rejects models that are not length-biased.
double moment_density_star(const Sample& sample,
                           const WeightedModel& model,
                           double weight,
                           double alpha,
                           double x);

//! Survival estimator for the excess-life model:
//! (1 / n) sum weight * h_{alpha,x,1}(Y_i). Not clamped to [0, 1].
double survival_estimate(const Sample& sample,
                         const WeightedModel& model,
                         double weight,
                         double alpha,
                         double x);

//! Estimator of the sampled density g itself (w = 1, W = 1).
double direct_density(const Sample& sample, double alpha, double y);

//! Analytic y-derivative of direct_density.
double direct_density_derivative(const Sample& sample, double alpha, double y);

struct ExcessPlugins
{
  double f_hat;
  double hazard_hat;
  //! 1 / hazard_hat; empty when the derivative estimate vanishes
  std::optional<double> w_hat;
  double W_hat;
};

//! Plug-in estimates for the excess-life model derived from g_hat and
//! g_hat'. g_hat(0) is evaluated at g0_point (W_hat = 1 / g_hat(g0_point)).
ExcessPlugins excess_plugins(const Sample& sample,
                             double alpha,
                             double y,
                             double g0_point);

//! Default evaluation point used in place of 0 for W_hat = 1 / g_hat(0).
double default_g0_point(const Sample& sample);

//! Evaluates estimator(alpha_at(x), x) over the grid.
EstimateCurve evaluate_curve(std::string estimator_id,
                             std::span<const double> grid,
                             const std::function<double(double)>& alpha_at,
                             const std::function<double(double, double)>& estimator);

} // namespace momdens
