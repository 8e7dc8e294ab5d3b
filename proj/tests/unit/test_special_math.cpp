#include <doctest.h>

#include "approx.hpp"

#include "momdens/errors.hpp"
#include "momdens/special_math.hpp"

#include <cmath>
#include <limits>

using namespace momdens;

TEST_CASE("log_gamma against high-precision values")
{
  struct Case
  {
    double z, expected;
  };
  // reference values computed with 25-digit arithmetic
  const Case cases[] = {
    { 0.5, 0.5723649429247000870717137 },  { 1.5, -0.1207822376352452223455184 },
    { 3.7, 1.428072326665387921872381 },   { 5.0, 3.178053830347945619646942 },
    { 10.25, 13.36802367147604629543091 }, { 170.5, 704.00442773420467079179 },
    { 1000.5, 5908.674175848677488683875 }, { 1e6, 12815504.56914761165997697 },
  };
  for (const auto& c : cases) {
    CHECK(log_gamma(c.z) == approx(c.expected).epsilon(1e-14));
  }
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
}

TEST_CASE("log_gamma rejects nonpositive arguments")
{
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.5), DomainError);
  CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("stirling_error")
{
  // lgamma decomposition where cancellation is harmless
  for (double a : { 16.0, 40.5 }) {
    const double direct = std::lgamma(a + 1.0) - (a + 0.5) * std::log(a) + a -
                          0.5 * std::log(2.0 * M_PI);
    CHECK(stirling_error(a) == approx(direct).epsilon(1e-9));
  }
  // asymptotic series for large arguments
  for (double a : { 300.0, 1e4, 1e7 }) {
    const double series = 1.0 / (12.0 * a) - 1.0 / (360.0 * a * a * a) +
                          1.0 / (1260.0 * std::pow(a, 5));
    CHECK(stirling_error(a) == approx(series).epsilon(1e-13));
  }
}

TEST_CASE("deviance_term is nonnegative and vanishes at a == z")
{
  CHECK(deviance_term(10.0, 10.0) == 0.0);
  for (double z : { 0.5, 9.0, 10.5, 50.0 }) {
    const double naive = 10.0 * std::log(10.0 / z) + z - 10.0;
    CHECK(deviance_term(10.0, z) >= 0.0);
    CHECK(deviance_term(10.0, z) == approx(naive).epsilon(1e-10));
  }
}

TEST_CASE("delta kernel values")
{
  CHECK(delta_density(DeltaKernel(2.0, 1.0, 1), 0.5) ==
        approx(0.7357588823428846431910475).epsilon(1e-14));
  CHECK(delta_density(DeltaKernel(10.0, 2.0, 2), 1.7) ==
        approx(0.9628462779844533738076047).epsilon(1e-13));
}

TEST_CASE("delta kernel stays accurate for very large alpha")
{
  CHECK(delta_density(DeltaKernel(1e5, 1.0, 1), 1.0) ==
        approx(126.1565209705300562946852).epsilon(1e-11));
  CHECK(delta_density(DeltaKernel(1e6, 1.0, 1), 1.0) ==
        approx(398.942247156244029704544).epsilon(1e-11));
}

TEST_CASE("gamma kernel agrees with pow/tgamma arithmetic")
{
  for (double shape : { 1.5, 3.0, 7.25, 14.0, 16.0, 25.5, 60.0 }) {
    for (double rate : { 0.5, 2.0, 9.0 }) {
      const GammaKernel k(shape, rate);
      for (double u : { 0.1, 1.0, 3.3, 8.0 }) {
        const double naive = std::pow(rate, shape) * std::pow(u, shape - 1.0) *
                             std::exp(-rate * u) / std::tgamma(shape);
        CHECK(k.density(u) == approx(naive).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gamma kernel at the origin")
{
  CHECK(GammaKernel(3.0, 2.0).density(0.0) == 0.0);
  CHECK(GammaKernel(1.0, 2.0).density(0.0) == 2.0);
  CHECK(std::isinf(GammaKernel(0.5, 2.0).density(0.0)));
  CHECK_THROWS_AS(GammaKernel(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(GammaKernel(1.0, -1.0), DomainError);
}

TEST_CASE("delta kernel validation")
{
  CHECK_THROWS_AS(DeltaKernel(0.5, 1.0, 1), DomainError);
  CHECK_THROWS_AS(DeltaKernel(2.0, 0.0, 1), DomainError);
  CHECK_THROWS_AS(DeltaKernel(2.0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(delta_density(DeltaKernel(2.0, 1.0, 1), -0.1), DomainError);
}

TEST_CASE("delta_stats closed form")
{
  for (double alpha : { 2.0, 5.0, 100.0 }) {
    for (int k : { 1, 2, 3 }) {
      const DeltaKernel kernel(alpha, 1.5, k);
      const auto s = delta_stats(kernel);
      const double shape = k * (alpha - 2.0) + 2.0;
      CHECK(s.mean == approx(shape * 1.5 / (k * alpha)));
      CHECK(s.variance == approx(shape * 2.25 / (k * alpha * k * alpha)));
    }
  }
}

TEST_CASE("kernel quadrature reproduces Laplace transforms")
{
  // U ~ Gamma(a, rate r): E exp(-sU) = (r / (r + s))^a
  for (double alpha : { 4.0, 30.0, 500.0 }) {
    for (int k : { 1, 2 }) {
      const DeltaKernel kernel(alpha, 1.3, k);
      const double a = kernel.shape();
      const double r = kernel.rate();
      const double s = 0.7;
      const double expected = std::pow(r / (r + s), a);
      CHECK(integrate([s](double u) { return std::exp(-s * u); }, kernel) ==
            approx(expected).epsilon(1e-10));
      const double expected_u = a / (r + s) * expected;
      CHECK(integrate([s](double u) { return u * std::exp(-s * u); }, kernel) ==
            approx(expected_u).epsilon(1e-10));
    }
  }
}

TEST_CASE("half-line and interval quadrature")
{
  CHECK(integrate([](double u) { return std::exp(-u); }, std::nullopt) ==
        approx(1.0).epsilon(1e-12));
  CHECK(integrate([](double u) { return 1.0 / (1.0 + u * u); }, std::nullopt) ==
        approx(M_PI / 2).epsilon(1e-9));
  CHECK(integrate_interval([](double u) { return std::sin(u); }, 0.0, M_PI) ==
        approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature failure modes")
{
  CHECK_THROWS_AS(integrate_interval([](double) { return std::nan(""); }, 0.0, 1.0),
                  NumericError);
  QuadratureSpec tight;
  tight.max_subdivisions = 2;
  tight.relative_tolerance = 1e-15;
  tight.absolute_tolerance = 0.0;
  CHECK_THROWS_AS(
    integrate_interval([](double u) { return std::sin(1.0 / (u + 1e-3)); }, 0.0, 1.0, tight),
    NumericError);
  QuadratureSpec bad;
  bad.relative_tolerance = -1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("normal cdf and pdf")
{
  CHECK(normal_cdf(0.0) == approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == approx(0.975).epsilon(1e-12));
  CHECK(normal_cdf(-8.0) == approx(6.22096057427178e-16).epsilon(1e-8));
  CHECK(normal_pdf(0.0) == approx(0.3989422804014327));
}
