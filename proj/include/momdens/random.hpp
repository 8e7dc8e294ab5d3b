#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace momdens {

//! SplitMix64 finalizer; a bijection on 64-bit integers.
std::uint64_t mix64(std::uint64_t value);

//! Seed for replicate r at sample size n. Injective in (n, r) for a fixed
//! root as long as both fit in 32 bits.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t n, std::uint64_t r);

//! Deterministic variate source. Only the engine comes from the standard
//! library; uniform, normal and gamma transforms are implemented here so
//! streams are identical across standard library implementations.
class Random
{
public:
  explicit Random(std::uint64_t seed);

  //! Uniform on the open interval (0, 1), 53 bits of resolution.
  double uniform();
  double normal();
  double exponential();
  //! Gamma(shape, scale) by Marsaglia-Tsang rejection (shape >= 1) with the
  //! u^{1/shape} boost for shape < 1.
  double gamma(double shape, double scale);

private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

} // namespace momdens
