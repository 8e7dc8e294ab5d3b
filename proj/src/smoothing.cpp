#include "momdens/smoothing.hpp"

#include "momdens/errors.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

namespace momdens {

namespace {

constexpr double kTwoFifths = 0.4;

void
check_local_delta(double delta)
{
  if (!(delta >= kTwoFifths && delta < 2.0)) {
    std::ostringstream msg;
    msg << "local alpha rule: delta must lie in [2/5, 2), got " << delta;
    throw ConfigError(msg.str());
  }
}

double
local_prefactor(double total_weight, std::size_t n, double delta)
{
  if (!(total_weight > 0.0)) {
    throw DomainError("local alpha rule: W must be positive");
  }
  if (n < 1) {
    throw DomainError("local alpha rule: n must be >= 1");
  }
  return std::pow(static_cast<double>(n), delta) *
         std::pow(std::numbers::pi / (4.0 * total_weight * total_weight), 0.2);
}

double
round_up(double value)
{
  // 1e-12 slack keeps exact powers such as 32^{2/5} = 4 from rounding to 5
  return std::ceil(value * (1.0 - 1e-12));
}

double
parse_number(const std::string& text, const std::string& whole)
{
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    // from_chars rejects fractions like "2/5"; accept them explicitly
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
      return parse_number(text.substr(0, slash), whole) /
             parse_number(text.substr(slash + 1), whole);
    }
    throw ConfigError("alpha rule '" + whole + "': bad number '" + text + "'");
  }
  return value;
}

} // namespace

AlphaRule
AlphaRule::fixed(double value)
{
  if (!(value >= 1.0) || !std::isfinite(value)) {
    throw ConfigError("fixed alpha must be >= 1");
  }
  AlphaRule r;
  r.kind = AlphaKind::fixed;
  r.fixed_value = value;
  r.integerize = false;
  return r;
}

AlphaRule
AlphaRule::global(double delta, bool integerize)
{
  if (!(delta > 0.0 && delta < 2.0)) {
    throw ConfigError("global alpha rule: delta must lie in (0, 2)");
  }
  AlphaRule r;
  r.kind = AlphaKind::global_rate;
  r.delta = delta;
  r.integerize = integerize;
  return r;
}

AlphaRule
AlphaRule::local_density(double delta, bool integerize)
{
  check_local_delta(delta);
  AlphaRule r;
  r.kind = AlphaKind::local_density;
  r.delta = delta;
  r.integerize = integerize;
  return r;
}

AlphaRule
AlphaRule::local_survival(double delta, bool integerize)
{
  check_local_delta(delta);
  AlphaRule r;
  r.kind = AlphaKind::local_survival;
  r.delta = delta;
  r.integerize = integerize;
  return r;
}

AlphaRule
AlphaRule::parse(const std::string& text)
{
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) {
      break;
    }
    start = colon + 1;
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw ConfigError("alpha rule '" + text +
                      "': expected <kind>:<value>[:int|:real]");
  }
  const double value = parse_number(parts[1], text);
  std::optional<bool> integerize;
  if (parts.size() == 3) {
    if (parts[2] == "int") {
      integerize = true;
    } else if (parts[2] == "real") {
      integerize = false;
    } else {
      throw ConfigError("alpha rule '" + text + "': unknown suffix '" +
                        parts[2] + "'");
    }
  }
  const std::string& kind = parts[0];
  if (kind == "fixed") {
    AlphaRule r = fixed(value);
    if (integerize && *integerize) {
      r.fixed_value = round_up(r.fixed_value);
    }
    return r;
  }
  if (kind == "global") {
    return global(value, integerize.value_or(true));
  }
  if (kind == "local-density") {
    return local_density(value, integerize.value_or(false));
  }
  if (kind == "local-survival") {
    return local_survival(value, integerize.value_or(false));
  }
  throw ConfigError("alpha rule '" + text + "': unknown kind '" + kind + "'");
}

std::string
AlphaRule::to_string() const
{
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case AlphaKind::fixed:
      out << "fixed:" << fixed_value;
      return out.str();
    case AlphaKind::global_rate:
      out << "global:";
      break;
    case AlphaKind::local_density:
      out << "local-density:";
      break;
    case AlphaKind::local_survival:
      out << "local-survival:";
      break;
  }
  out << delta << (integerize ? ":int" : ":real");
  return out.str();
}

double
AlphaRule::at(std::size_t n,
              double x,
              const TruthScenario* scenario,
              double total_weight,
              double minimum) const
{
  double value = 0.0;
  switch (kind) {
    case AlphaKind::fixed:
      value = fixed_value;
      break;
    case AlphaKind::global_rate:
      value = alpha_global(n, delta, integerize);
      break;
    case AlphaKind::local_density:
    case AlphaKind::local_survival:
      if (scenario == nullptr) {
        throw ConfigError("local alpha rules need a known truth scenario");
      }
      value = kind == AlphaKind::local_density
                ? alpha_local_density(*scenario, total_weight, x, n, delta)
                : alpha_local_survival(*scenario, total_weight, x, n, delta);
      if (integerize) {
        value = round_up(value);
      }
      break;
  }
  return std::max(value, minimum);
}

double
alpha_global(std::size_t n, double delta, bool integerize)
{
  if (!(delta > 0.0 && delta < 2.0)) {
    throw ConfigError("alpha_global: delta must lie in (0, 2)");
  }
  if (n < 1) {
    throw DomainError("alpha_global: n must be >= 1");
  }
  double value = std::pow(static_cast<double>(n), delta);
  if (integerize) {
    value = round_up(value);
  }
  return std::max(value, 1.0);
}

double
alpha_local_density(const TruthScenario& scenario,
                    double total_weight,
                    double x,
                    std::size_t n,
                    double delta)
{
  check_local_delta(delta);
  if (!(x > 0.0)) {
    throw DomainError("alpha_local_density: x must be positive");
  }
  const double f = scenario.density_at(x);
  if (!(f > 0.0)) {
    throw DomainError("alpha_local_density: f(x) must be positive");
  }
  const double f2 = scenario.second_derivative_at(x);
  if (f2 == 0.0) {
    throw DomainError("alpha_local_density: f''(x) = 0 (degenerate curvature)");
  }
  const double bracket = x * x * x * std::abs(f2) / std::sqrt(f);
  return local_prefactor(total_weight, n, delta) * std::pow(bracket, 0.8);
}

double
alpha_local_survival(const TruthScenario& scenario,
                     double total_weight,
                     double x,
                     std::size_t n,
                     double delta)
{
  check_local_delta(delta);
  if (!(x > 0.0)) {
    throw DomainError("alpha_local_survival: x must be positive");
  }
  const double S = scenario.survival(x);
  if (!(S > 0.0)) {
    throw DomainError("alpha_local_survival: S(x) must be positive");
  }
  const double f1 = scenario.derivative_at(x);
  if (f1 == 0.0) {
    throw DomainError("alpha_local_survival: f'(x) = 0 (degenerate slope)");
  }
  const double bracket = std::abs(f1) / std::sqrt(S);
  return local_prefactor(total_weight, n, delta) * x * x * std::pow(bracket, 0.8);
}

} // namespace momdens
