#include "momdens/special_math.hpp"

#include "momdens/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace momdens {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// shape above which the Stirling/deviance form is used
constexpr double kStirlingShape = 15.0;

// Gauss-Kronrod 10/21 nodes and weights (QUADPACK qk21). Odd indices of
// kXgk are the Gauss nodes.
constexpr std::array<double, 11> kXgk = {
  0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
  0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
  0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
  0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
  0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
  0.0
};
constexpr std::array<double, 11> kWgk = {
  0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
  0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
  0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
  0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
  0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
  0.149445554002916905664936468389821
};
constexpr std::array<double, 5> kWg = {
  0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
  0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
  0.295524224714752870173892994651338
};

struct Segment
{
  double a;
  double b;
  double result;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment
gauss_kronrod(const Integrand& f, double a, double b)
{
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_k = fc * kWgk[10];
  double res_g = 0.0;
  double res_abs = std::abs(res_k);
  std::array<double, 10> f1{};
  std::array<double, 10> f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    res_k += kWgk[j] * sum;
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) {
      res_g += kWg[j / 2] * sum;
    }
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double result = res_k * half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  if (!std::isfinite(result)) {
    std::ostringstream msg;
    msg << "integrand is not finite on [" << a << ", " << b << "]";
    throw NumericError(msg.str());
  }
  return { a, b, result, err };
}

double
integrate_panels(const Integrand& f,
                 const std::vector<double>& breaks,
                 const QuadratureSpec& spec)
{
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) {
      continue;
    }
    Segment s = gauss_kronrod(f, breaks[i], breaks[i + 1]);
    total += s.result;
    total_err += s.error;
    heap.push(s);
  }

  std::size_t count = heap.size();
  auto target = [&] {
    return std::max(spec.absolute_tolerance,
                    spec.relative_tolerance * std::abs(total));
  };
  while (total_err > target()) {
    if (count >= spec.max_subdivisions || heap.empty()) {
      std::ostringstream msg;
      msg << "quadrature did not converge: estimate=" << total
          << " error=" << total_err << " target=" << target()
          << " subdivisions=" << count;
      throw NumericError(msg.str());
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // interval cannot be split further in double precision
      std::ostringstream msg;
      msg << "quadrature hit resolution limit at [" << worst.a << ", "
          << worst.b << "]: estimate=" << total << " error=" << total_err;
      throw NumericError(msg.str());
    }
    heap.pop();
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.result + right.result - worst.result;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }

  // re-sum to shed the drift of incremental updates
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().result;
    heap.pop();
  }
  return sum;
}

} // namespace

double
log_gamma(double z)
{
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError("log_gamma: argument must be positive and finite");
  }
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(z, &sign);
#else
  return std::lgamma(z);
#endif
}

double
stirling_error(double a)
{
  if (a <= kStirlingShape) {
    return log_gamma(a) - (a - 0.5) * std::log(a) + a - kHalfLog2Pi;
  }
  constexpr double s0 = 1.0 / 12.0;
  constexpr double s1 = 1.0 / 360.0;
  constexpr double s2 = 1.0 / 1260.0;
  constexpr double s3 = 1.0 / 1680.0;
  constexpr double s4 = 1.0 / 1188.0;
  const double aa = a * a;
  if (a > 500.0) {
    return (s0 - s1 / aa) / a;
  }
  if (a > 80.0) {
    return (s0 - (s1 - s2 / aa) / aa) / a;
  }
  if (a > 35.0) {
    return (s0 - (s1 - (s2 - s3 / aa) / aa) / aa) / a;
  }
  return (s0 - (s1 - (s2 - (s3 - s4 / aa) / aa) / aa) / aa) / a;
}

double
deviance_term(double a, double z)
{
  if (std::abs(a - z) < 0.1 * (a + z)) {
    double v = (a - z) / (a + z);
    double s = (a - z) * v;
    double ej = 2.0 * a * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double next = s + ej / (2 * j + 1);
      if (next == s) {
        return next;
      }
      s = next;
    }
    return s;
  }
  return a * std::log(a / z) + z - a;
}

GammaKernel::GammaKernel(double shape, double rate)
  : shape_(shape)
  , rate_(rate)
{
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw DomainError("gamma kernel: shape must be positive");
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw DomainError("gamma kernel: rate must be positive");
  }
  log_rate_ = std::log(rate);
  stirling_ = shape > kStirlingShape;
  if (stirling_) {
    const_ = 0.5 * std::log(shape / (2.0 * std::numbers::pi)) -
             stirling_error(shape);
  } else {
    const_ = shape * log_rate_ - log_gamma(shape);
  }
}

double
GammaKernel::log_density(double u) const
{
  if (u < 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  if (u == 0.0) {
    if (shape_ < 1.0) {
      return std::numeric_limits<double>::infinity();
    }
    if (shape_ == 1.0) {
      return log_rate_;
    }
    return -std::numeric_limits<double>::infinity();
  }
  if (stirling_) {
    return const_ - deviance_term(shape_, rate_ * u) - std::log(u);
  }
  return const_ + (shape_ - 1.0) * std::log(u) - rate_ * u;
}

double
GammaKernel::density(double u) const
{
  return std::exp(log_density(u));
}

DeltaKernel::DeltaKernel(double alpha, double x, int k)
  : alpha(alpha)
  , x(x)
  , k(k)
{
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw DomainError("delta kernel: alpha must be >= 1");
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("delta kernel: x must be positive");
  }
  if (k < 1) {
    throw DomainError("delta kernel: k must be >= 1");
  }
  if (!(shape() > 0.0)) {
    throw DomainError("delta kernel: shape k(alpha - 2) + 2 must be positive");
  }
}

double
delta_density(const DeltaKernel& kernel, double u)
{
  if (u < 0.0) {
    throw DomainError("delta_density: u must be nonnegative");
  }
  return kernel.gamma().density(u);
}

KernelStats
delta_stats(const DeltaKernel& kernel)
{
  const double rate = kernel.rate();
  return { kernel.shape() / rate, kernel.shape() / (rate * rate) };
}

void
QuadratureSpec::validate() const
{
  if (!(relative_tolerance > 0.0 && relative_tolerance <= 1e-4)) {
    throw ConfigError("quadrature: relative tolerance must lie in (0, 1e-4]");
  }
  if (!(truncation_mass > 0.0 && truncation_mass <= 1e-6)) {
    throw ConfigError("quadrature: truncation mass must lie in (0, 1e-6]");
  }
  if (max_subdivisions < 1) {
    throw ConfigError("quadrature: max_subdivisions must be positive");
  }
  if (!(absolute_tolerance >= 0.0)) {
    throw ConfigError("quadrature: absolute tolerance must be nonnegative");
  }
}

double
integrate_interval(const Integrand& f,
                   double a,
                   double b,
                   const QuadratureSpec& spec)
{
  spec.validate();
  if (!(b >= a)) {
    throw DomainError("integrate_interval: require a <= b");
  }
  return integrate_panels(f, { a, b }, spec);
}

double
integrate(const Integrand& f,
          const std::optional<DeltaKernel>& kernel,
          const QuadratureSpec& spec)
{
  spec.validate();
  if (!kernel) {
    // u = t / (1 - t) maps [0, 1) onto [0, inf)
    auto mapped = [&f](double t) {
      const double s = 1.0 - t;
      const double value = f(t / s);
      return value == 0.0 ? 0.0 : value / (s * s);
    };
    return integrate_panels(
      mapped, { 0.0, 0.25, 0.5, 0.75, 0.9, 0.97, 0.99, 0.999, 1.0 }, spec);
  }

  const GammaKernel g = kernel->gamma();
  const double q = spec.truncation_mass;
  const double lower = boost::math::gamma_p_inv(g.shape(), q) / g.rate();
  const double upper = boost::math::gamma_q_inv(g.shape(), q) / g.rate();
  auto weighted = [&f, &g](double u) {
    const double h = g.density(u);
    return h == 0.0 ? 0.0 : h * f(u);
  };
  constexpr int kPanels = 8;
  std::vector<double> breaks{ 0.0 };
  for (int i = 0; i <= kPanels; ++i) {
    breaks.push_back(lower + (upper - lower) * i / kPanels);
  }
  return integrate_panels(weighted, breaks, spec);
}

double
normal_cdf(double z)
{
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double
normal_pdf(double z)
{
  return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

} // namespace momdens
