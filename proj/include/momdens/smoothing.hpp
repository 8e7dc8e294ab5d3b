#pragma once

#include "momdens/models.hpp"

#include <cstddef>
#include <optional>
#include <string>

namespace momdens {

enum class AlphaKind
{
  fixed,
  global_rate,
  local_density,
  local_survival
};

//! Smoothing-parameter policy.
struct AlphaRule
{
  AlphaKind kind = AlphaKind::global_rate;
  double fixed_value = 1.0;
  double delta = 0.4;
  bool integerize = true;

  static AlphaRule fixed(double value);
  static AlphaRule global(double delta, bool integerize = true);
  static AlphaRule local_density(double delta, bool integerize = false);
  static AlphaRule local_survival(double delta, bool integerize = false);

  //! Parses "fixed:<v>", "global:<delta>", "local-density:<delta>" or
  //! "local-survival:<delta>". An optional ":int" / ":real" suffix overrides
  //! the rounding mode.
  static AlphaRule parse(const std::string& text);
  std::string to_string() const;

  bool needs_scenario() const
  {
    return kind == AlphaKind::local_density || kind == AlphaKind::local_survival;
  }

  //! alpha for sample size n at point x, floored at `minimum`. Local rules
  //! need the scenario and W.
  double at(std::size_t n,
            double x,
            const TruthScenario* scenario = nullptr,
            double total_weight = 0.0,
            double minimum = 1.0) const;
};

//! n^delta, rounded up when integerize, floored at 1.
double alpha_global(std::size_t n, double delta, bool integerize);

//! n^delta (pi / (4 W^2))^{1/5} [x^3 |f''(x)| / sqrt(f(x))]^{4/5}.
//! delta must lie in [2/5, 2); f''(x) = 0 is rejected.
double alpha_local_density(const TruthScenario& scenario,
                           double total_weight,
                           double x,
                           std::size_t n,
                           double delta);

//! n^delta (pi / (4 W^2))^{1/5} x^2 [|f'(x)| / sqrt(S(x))]^{4/5}.
double alpha_local_survival(const TruthScenario& scenario,
                            double total_weight,
                            double x,
                            std::size_t n,
                            double delta);

} // namespace momdens
