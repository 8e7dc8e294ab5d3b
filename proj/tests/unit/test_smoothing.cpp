#include <doctest.h>

#include "approx.hpp"

#include "momdens/errors.hpp"
#include "momdens/models.hpp"
#include "momdens/smoothing.hpp"

#include <cmath>

using namespace momdens;

TEST_CASE("global rule")
{
  CHECK(alpha_global(300, 0.4, false) == approx(9.7914836).epsilon(1e-7));
  CHECK(alpha_global(300, 0.4, true) == 10.0);
  CHECK(alpha_global(400, 0.4, true) == 11.0);
  CHECK(alpha_global(1600, 0.4, true) == 20.0);
  CHECK(alpha_global(6400, 0.4, true) == 34.0);
  CHECK(alpha_global(25600, 0.4, true) == 58.0);
  CHECK(alpha_global(2000, 0.6, false) == approx(95.635).epsilon(1e-5));
  // exact integer powers are not bumped up by rounding noise
  CHECK(alpha_global(32, 0.4, true) == 4.0);
  CHECK(alpha_global(1, 0.4, true) == 1.0);
  CHECK_THROWS_AS(alpha_global(100, 0.0, true), ConfigError);
  CHECK_THROWS_AS(alpha_global(100, 2.0, true), ConfigError);
}

TEST_CASE("local density rule")
{
  const auto s = builtin_scenario("lb-exp2").first;
  CHECK(alpha_local_density(s, 0.5, 1.0, 300, 0.4) ==
        approx(22.125998684377723014).epsilon(1e-13));
  CHECK(alpha_local_density(s, 0.5, 1.0, 300, 0.6) ==
        approx(69.23522902815352997).epsilon(1e-13));
  CHECK(alpha_local_density(s, 0.5, 1.0, 2000, 0.4) ==
        approx(47.257025093074664841).epsilon(1e-13));
  CHECK(alpha_local_density(s, 0.5, 1.0, 2000, 0.6) ==
        approx(216.10876314119473773).epsilon(1e-13));
  CHECK_THROWS_AS(alpha_local_density(s, 0.5, 1.0, 300, 0.3), ConfigError);
  const auto e = builtin_scenario("excess-gamma22").first;
  // f''(4) = 0
  CHECK_THROWS_AS(alpha_local_density(e, 4.0, 4.0, 300, 0.4), DomainError);
}

TEST_CASE("local survival rule")
{
  const auto e = builtin_scenario("excess-gamma22").first;
  CHECK(alpha_local_survival(e, 4.0, 4.0, 400, 0.4) ==
        approx(9.1876803770071870218).epsilon(1e-13));
  // f'(2) = 0
  CHECK_THROWS_AS(alpha_local_survival(e, 4.0, 2.0, 400, 0.4), DomainError);
}

TEST_CASE("rule parsing and printing")
{
  const auto a = AlphaRule::parse("global:0.4");
  CHECK(a.kind == AlphaKind::global_rate);
  CHECK(a.at(300, 1.0) == 10.0);
  const auto b = AlphaRule::parse("global:2/5:real");
  CHECK(b.at(300, 1.0) == approx(9.7914836).epsilon(1e-7));
  CHECK(AlphaRule::parse("fixed:12.5").at(10, 3.0) == 12.5);
  const auto c = AlphaRule::parse("local-density:3/5");
  CHECK(c.needs_scenario());
  CHECK(AlphaRule::parse(c.to_string()).delta == approx(0.6));
  CHECK_THROWS_AS(AlphaRule::parse("bogus:1"), ConfigError);
  CHECK_THROWS_AS(AlphaRule::parse("global"), ConfigError);
  CHECK_THROWS_AS(AlphaRule::parse("global:abc"), ConfigError);
  CHECK_THROWS_AS(AlphaRule::parse("fixed:0.5"), ConfigError);
}

TEST_CASE("rule evaluation floors at the minimum")
{
  const auto s = builtin_scenario("lb-exp2").first;
  CHECK(AlphaRule::fixed(1.5).at(10, 1.0, nullptr, 0.0, 2.0) == 2.0);
  const auto local = AlphaRule::local_density(0.4);
  CHECK_THROWS_AS(local.at(300, 1.0), ConfigError);
  CHECK(local.at(300, 1.0, &s, 0.5) == approx(22.125998684377723014));
  // far in the tail the local rule drops below one and is floored
  CHECK(local.at(300, 0.01, &s, 0.5) >= 1.0);
}
