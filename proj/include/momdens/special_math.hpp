#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <utility>

namespace momdens {

//! ln Gamma(z) for z > 0. Throws DomainError otherwise.
double log_gamma(double z);

//! Stirling remainder lgamma(a) - (a - 1/2) log a + a - log(2 pi) / 2.
double stirling_error(double a);

//! Deviance term a log(a / z) + z - a, evaluated without cancellation when
//! z is close to a.
double deviance_term(double a, double z);

//! Gamma density with given shape and rate, evaluated in log space.
//!
//! For large shapes the density is assembled from the Stirling remainder and
//! the deviance term so that neither rate^shape nor Gamma(shape) is ever
//! formed; this keeps the relative error at the level of a few ulps even for
//! shapes around 1e6.
class GammaKernel
{
public:
  GammaKernel(double shape, double rate);

  double shape() const { return shape_; }
  double rate() const { return rate_; }

  double log_density(double u) const;
  double density(double u) const;

private:
  double shape_;
  double rate_;
  double log_rate_;
  double const_; // shape-only part of the log density
  bool stirling_;
};

//! Gamma delta-sequence kernel h_{alpha,x,k}: the gamma density with shape
//! k(alpha - 2) + 2 and rate k alpha / x. Concentrates at x as alpha grows.
struct DeltaKernel
{
  double alpha;
  double x;
  int k;

  DeltaKernel(double alpha, double x, int k = 1);

  double shape() const { return k * (alpha - 2.0) + 2.0; }
  double rate() const { return k * alpha / x; }
  GammaKernel gamma() const { return { shape(), rate() }; }
};

double delta_density(const DeltaKernel& kernel, double u);

struct KernelStats
{
  double mean;
  double variance;
};

KernelStats delta_stats(const DeltaKernel& kernel);

struct QuadratureSpec
{
  double relative_tolerance = 1e-10;
  //! Kernel tail probability beyond which the integrand is dropped.
  double truncation_mass = 1e-12;
  std::size_t max_subdivisions = 4000;
  //! Absolute floor on the error target, used when the integral is ~0.
  double absolute_tolerance = 1e-15;

  void validate() const;
};

using Integrand = std::function<double(double)>;

//! Adaptive Gauss-Kronrod (10/21) integration over [a, b].
double integrate_interval(const Integrand& f,
                          double a,
                          double b,
                          const QuadratureSpec& spec = {});

//! Integral of f over [0, inf), or of h_{alpha,x,k} * f when a kernel is
//! given. With a kernel the domain is cut at the kernel's upper
//! (1 - truncation_mass) quantile; without one the half-line is mapped onto
//! [0, 1). Throws NumericError if the subdivision budget is exhausted.
double integrate(const Integrand& f,
                 const std::optional<DeltaKernel>& kernel,
                 const QuadratureSpec& spec = {});

//! Standard normal cdf and density.
double normal_cdf(double z);
double normal_pdf(double z);

} // namespace momdens
