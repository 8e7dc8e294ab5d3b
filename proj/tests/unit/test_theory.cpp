#include <doctest.h>

#include "approx.hpp"

#include "momdens/errors.hpp"
#include "momdens/models.hpp"
#include "momdens/theory.hpp"

#include <cmath>

using namespace momdens;

TEST_CASE("density asymptotics on lb-exp2 at x = 1")
{
  const auto s = builtin_scenario("lb-exp2").first;
  const auto r = density_asymptotics(s, 0.5, 1.0, 10.0, 300);
  CHECK(r.bias == approx(0.054134113294645076758).epsilon(1e-14));
  CHECK(r.variance == approx(0.00040242490431467759969).epsilon(1e-13));
  CHECK(r.mse == approx(r.bias * r.bias + r.variance));
  CHECK(r.rate_exponent == -0.8);
  CHECK(r.normal_mean == approx(std::sqrt(300.0) * std::pow(10.0, -0.25) * r.bias));
}

TEST_CASE("optimal mse constant")
{
  const auto s = builtin_scenario("lb-exp2").first;
  const auto o = density_mse_optimal(s, 0.5, 1.0, 300);
  CHECK(o.constant == approx(0.3312276007640379633).epsilon(1e-14));
  CHECK(o.global == approx(o.constant * std::pow(300.0, -0.8)));
  REQUIRE(o.local.has_value());
}

TEST_CASE("local optimum equals the report at the local rule")
{
  const auto s = builtin_scenario("lb-exp2").first;
  // alpha from the local rule at delta = 2/5, n = 300
  const double alpha = 22.125998684377723014;
  const auto r = density_asymptotics(s, 0.5, 1.0, alpha, 300);
  CHECK(*density_mse_optimal(s, 0.5, 1.0, 300).local == approx(r.mse).epsilon(1e-12));

  const auto e = builtin_scenario("excess-gamma22").first;
  const double a_s = 9.1876803770071870218;
  const auto rs = survival_asymptotics(e, 4.0, 4.0, a_s, 400);
  CHECK(*survival_mse_optimal(e, 4.0, 4.0, 400).local == approx(rs.mse).epsilon(1e-12));
}

TEST_CASE("survival asymptotics")
{
  const auto e = builtin_scenario("excess-gamma22").first;
  const auto r = survival_asymptotics(e, 4.0, 4.0, 10.0, 400);
  CHECK(r.bias == approx(0.027067056647322538379).epsilon(1e-14));
  CHECK(r.normal_variance == approx(4.0 * e.survival(4.0) / (8.0 * std::sqrt(M_PI))));
  CHECK_FALSE(survival_mse_optimal(e, 4.0, 2.0, 400).local.has_value());
}

TEST_CASE("kernel baseline mse")
{
  const auto s = builtin_scenario("lb-exp2").first;
  const double h = std::pow(300.0, -0.2);
  CHECK(jones_mse(s, 0.5, 1.0, h, 300) == approx(0.0034548525359197712384).epsilon(1e-13));
  CHECK_THROWS_AS(jones_mse(s, 0.5, 1.0, 0.0, 300), DomainError);
}

TEST_CASE("second-moment prefactor")
{
  // (alpha/x)^2 Gamma(2 alpha - 2) / (Gamma(alpha)^2 2^{2 alpha - 2}) by direct arithmetic
  for (double alpha : { 2.0, 5.0, 12.0, 15.5, 16.0, 40.0, 80.0 }) {
    const double x = 1.7;
    const double direct = (alpha / x) * (alpha / x) * std::tgamma(2 * alpha - 2) /
                          (std::tgamma(alpha) * std::tgamma(alpha) * std::pow(2.0, 2 * alpha - 2));
    CHECK(std::exp(log_second_moment_prefactor(alpha, x)) == approx(direct).epsilon(1e-12));
  }
  // exact / limit ratios from 30-digit arithmetic
  CHECK(std::exp(log_second_moment_prefactor(1e3, 1.0)) /
          stirling_second_moment_prefactor(1e3, 1.0) ==
        approx(1.00137657198707679175824501211).epsilon(1e-11));
  CHECK(std::exp(log_second_moment_prefactor(1e6, 1.0)) /
          stirling_second_moment_prefactor(1e6, 1.0) ==
        approx(1.00000137500157031417285392103).epsilon(1e-11));
  CHECK_THROWS_AS(log_second_moment_prefactor(1.5, 1.0), DomainError);
}

TEST_CASE("exact bias on lb-exp2 has a closed form")
{
  // E f_alpha(1) - f(1) = 2 (1 + 2/alpha)^{-alpha} - 2 e^{-2}
  const auto s = builtin_scenario("lb-exp2").first;
  const double frozen[][2] = { { 16, 0.03313073952880161177 },
                               { 64, 0.008414408395047016723 },
                               { 256, 0.002111860427756689828 },
                               { 1024, 0.0005284813625515000012 } };
  for (const auto& [alpha, value] : frozen) {
    CHECK(exact_density_bias(s, 1.0, alpha) == approx(value).epsilon(1e-9));
    const double closed = 2.0 * std::pow(1.0 + 2.0 / alpha, -alpha) - 2.0 * std::exp(-2.0);
    CHECK(value == approx(closed).epsilon(1e-12));
  }
}

TEST_CASE("exact survival bias on excess-gamma22")
{
  // S(u) = (1 + u/2) e^{-u/2}; the kernel integral follows from Laplace transforms
  const auto e = builtin_scenario("excess-gamma22").first;
  for (double alpha : { 8.0, 50.0 }) {
    const double x = 3.0;
    const double r = alpha / x;
    const double L = std::pow(r / (r + 0.5), alpha);
    const double closed = L + 0.5 * alpha / (r + 0.5) * L - e.survival(x);
    CHECK(exact_survival_bias(e, x, alpha) == approx(closed).epsilon(1e-9));
  }
}

TEST_CASE("asymptotics reject bad inputs")
{
  const auto s = builtin_scenario("lb-exp2").first;
  CHECK_THROWS_AS(density_asymptotics(s, 0.5, 0.0, 10.0, 300), DomainError);
  CHECK_THROWS_AS(density_asymptotics(s, 0.5, 1.0, 0.5, 300), DomainError);
  CHECK_THROWS_AS(density_asymptotics(s, 0.5, 1.0, 10.0, 0), DomainError);
  CHECK_THROWS_AS(density_asymptotics(s, -1.0, 1.0, 10.0, 300), DomainError);
}
