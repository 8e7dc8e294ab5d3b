#include "momdens/random.hpp"

#include "momdens/errors.hpp"

#include <cmath>

namespace momdens {

std::uint64_t
mix64(std::uint64_t z)
{
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t
derive_seed(std::uint64_t root, std::uint64_t n, std::uint64_t r)
{
  if (n > 0xffffffffULL || r > 0xffffffffULL) {
    throw ConfigError("derive_seed: n and replicate index must fit in 32 bits");
  }
  // mix64 is a bijection, so distinct (n, r) keys give distinct seeds
  return mix64(mix64(root) + ((n << 32) | r));
}

Random::Random(std::uint64_t seed)
  : engine_(seed)
{}

double
Random::uniform()
{
  while (true) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u > 0.0) {
      return u;
    }
  }
}

double
Random::normal()
{
  if (spare_normal_) {
    const double z = *spare_normal_;
    spare_normal_.reset();
    return z;
  }
  // Marsaglia polar method
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double factor = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = v * factor;
  return u * factor;
}

double
Random::exponential()
{
  return -std::log(uniform());
}

double
Random::gamma(double shape, double scale)
{
  if (!(shape > 0.0) || !(scale > 0.0)) {
    throw DomainError("gamma variate: shape and scale must be positive");
  }
  if (shape < 1.0) {
    const double boost = std::pow(uniform(), 1.0 / shape);
    return gamma(shape + 1.0, scale) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) {
      return scale * d * v;
    }
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      return scale * d * v;
    }
  }
}

} // namespace momdens
