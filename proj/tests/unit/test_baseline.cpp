#include <doctest.h>

#include "approx.hpp"

#include "momdens/baseline.hpp"
#include "momdens/errors.hpp"
#include "momdens/models.hpp"

#include <cmath>

using namespace momdens;

TEST_CASE("bandwidth rule")
{
  CHECK(bandwidth_from_exponent(300, 0.2) == approx(std::pow(300.0, -0.2)));
  CHECK_THROWS_AS(bandwidth_from_exponent(300, 0.0), ConfigError);
  CHECK_THROWS_AS(bandwidth_from_exponent(300, 0.25), ConfigError);
}

TEST_CASE("kernel estimators by hand")
{
  const Sample s({ 0.5, 1.5 });
  const auto lb = WeightedModel::length_biased();
  const auto ex = builtin_scenario("excess-gamma22").second;
  const KernelSpec k{ "standard-normal", 0.5 };
  const double phi1 = std::exp(-0.5) / std::sqrt(2 * M_PI);
  // x = 1: both points sit one bandwidth away
  CHECK(jones_density(s, lb, 2.0, k, 1.0) ==
        approx(2.0 / (2 * 0.5) * (phi1 / 0.5 + phi1 / 1.5)));
  CHECK(jones_survival(s, ex, 4.0, k, 1.0) == approx(4.0 / (2 * 0.5) * 2 * phi1));
}

TEST_CASE("kernel estimator model checks")
{
  const Sample s({ 0.5, 1.5 });
  const auto lb = WeightedModel::length_biased();
  const auto ex = builtin_scenario("excess-gamma22").second;
  const KernelSpec k{ "standard-normal", 0.5 };
  CHECK_THROWS_AS(jones_density(s, ex, 1.0, k, 1.0), ConfigError);
  CHECK_THROWS_AS(jones_survival(s, lb, 1.0, k, 1.0), ConfigError);
  CHECK_THROWS_AS((KernelSpec{ "epanechnikov", 0.5 }.validate()), ConfigError);
  CHECK_THROWS_AS((KernelSpec{ "standard-normal", 0.0 }.validate()), DomainError);
}
