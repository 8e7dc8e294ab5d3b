#pragma once

#include "momdens/models.hpp"
#include "momdens/special_math.hpp"

#include <cstddef>
#include <optional>

namespace momdens {

//! Leading-order asymptotics of an estimator at one point. All o(.) terms
//! are dropped; mse = variance + bias^2.
struct AsymptoticReport
{
  double bias;
  double variance;
  double mse;
  //! Mean of the limit of n^{1/2} alpha^{-1/4} (estimate - truth): the
  //! scaled leading bias. Zero in the limit for undersmoothed alpha.
  double normal_mean;
  //! Variance of that limit.
  double normal_variance;
  double rate_exponent;
};

//! Bias x^2 f''/(2 alpha), variance W sqrt(alpha) f / (2 n sqrt(pi) x^2)
//! of the length-biased star estimator.
AsymptoticReport density_asymptotics(const TruthScenario& scenario,
                                     double total_weight,
                                     double x,
                                     double alpha,
                                     std::size_t n);

struct OptimalMse
{
  //! W f / (2 sqrt(pi) x^2) + x^4 f''^2 / 4
  double constant;
  //! constant * n^{-4/5}: MSE with alpha = n^{2/5}
  double global;
  //! n^{-4/5} [W^2 |f''| f^2 / (pi sqrt(2) x^2)]^{2/5}: MSE with the local
  //! alpha(x) rule. Empty when f''(x) = 0.
  std::optional<double> local;
};

OptimalMse density_mse_optimal(const TruthScenario& scenario,
                               double total_weight,
                               double x,
                               std::size_t n);

//! Bias -x^2 f'/(2 alpha), variance W sqrt(alpha) S / (2 n sqrt(pi) x) of
//! the excess-life survival estimator.
AsymptoticReport survival_asymptotics(const TruthScenario& scenario,
                                      double total_weight,
                                      double x,
                                      double alpha,
                                      std::size_t n);

//! Survival counterpart of density_mse_optimal:
//! constant = W S / (2 x sqrt(pi)) + x^4 f'^2 / 4, local uses |f'|.
OptimalMse survival_mse_optimal(const TruthScenario& scenario,
                                double total_weight,
                                double x,
                                std::size_t n);

struct KernelConstants
{
  double roughness = 0.28209479177387814347; // 1 / (2 sqrt(pi))
  double second_moment = 1.0;
};

//! Asymptotic MSE of the length-biased Gaussian-kernel estimator:
//! W f R / (n h x) + h^4 f''^2 mu2^2 / 4.
double jones_mse(const TruthScenario& scenario,
                 double total_weight,
                 double x,
                 double bandwidth,
                 std::size_t n,
                 const KernelConstants& constants = {});

//! log of (alpha/x)^2 Gamma(2 alpha - 2) / (Gamma(alpha)^2 2^{2 alpha - 2}),
//! the factor linking E M^2 / W to the integral of h_{alpha,x,2} f.
double log_second_moment_prefactor(double alpha, double x);

//! Stirling limit of the same factor: sqrt(alpha) / (2 sqrt(pi) x^2).
double stirling_second_moment_prefactor(double alpha, double x);

//! Exact bias of the star estimator: integral of h_{alpha,x,1} (f - f(x)).
double exact_density_bias(const TruthScenario& scenario,
                          double x,
                          double alpha,
                          const QuadratureSpec& spec = {});

//! Exact bias of the survival estimator: integral of h_{alpha,x,1} (S - S(x)).
double exact_survival_bias(const TruthScenario& scenario,
                           double x,
                           double alpha,
                           const QuadratureSpec& spec = {});

} // namespace momdens
