#include "momdens/baseline.hpp"
#include "momdens/errors.hpp"
#include "momdens/estimators.hpp"
#include "momdens/models.hpp"
#include "momdens/simulation.hpp"
#include "momdens/smoothing.hpp"
#include "momdens/special_math.hpp"
#include "momdens/theory.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace momdens;

namespace {

WeightedModel
model_from_name(const std::string& name)
{
  if (name == "length-biased") return WeightedModel::length_biased();
  if (name == "direct") return WeightedModel::direct();
  if (name == "excess-life") return WeightedModel::excess_life_unknown();
  throw ConfigError("model must be length-biased, excess-life or direct");
}

TruthScenario
scenario_from_name(const std::string& name)
{
  return builtin_scenario(name).first;
}

py::dict
report_dict(const AsymptoticReport& r)
{
  py::dict d;
  d["bias"] = r.bias;
  d["variance"] = r.variance;
  d["mse"] = r.mse;
  d["normal_mean"] = r.normal_mean;
  d["normal_variance"] = r.normal_variance;
  d["rate_exponent"] = r.rate_exponent;
  return d;
}

py::dict
optimum_dict(const OptimalMse& o)
{
  py::dict d;
  d["constant"] = o.constant;
  d["global"] = o.global;
  d["local"] = o.local ? py::cast(*o.local) : py::none();
  return d;
}

McConfig
mc_config(const std::string& scenario,
          const std::string& estimator,
          const std::vector<std::size_t>& n,
          const std::vector<double>& x,
          std::size_t replicates,
          const std::string& alpha,
          std::uint64_t seed,
          double bandwidth_exp,
          const std::string& weight_mode,
          unsigned threads)
{
  McConfig c;
  c.scenario = scenario;
  c.estimator = parse_estimator(estimator);
  c.n_grid = n;
  c.x_points = x;
  c.replicates = replicates;
  c.alpha_rule = AlphaRule::parse(alpha);
  c.root_seed = seed;
  c.bandwidth_exponent = bandwidth_exp;
  if (weight_mode == "known") c.weight_mode = WeightMode::known;
  else if (weight_mode == "estimated") c.weight_mode = WeightMode::estimated;
  else throw ConfigError("weight_mode must be 'known' or 'estimated'");
  c.threads = threads;
  return c;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "Moment-density estimators for biased sampling models";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<StateError>(m, "StateError", PyExc_RuntimeError);

  // special functions
  m.def("log_gamma", &log_gamma, py::arg("z"));
  m.def(
    "delta_density",
    [](double alpha, double x, int k, double u) { return delta_density(DeltaKernel(alpha, x, k), u); },
    py::arg("alpha"), py::arg("x"), py::arg("k"), py::arg("u"),
    "h_{alpha,x,k}(u): gamma density with shape k(alpha-2)+2 and rate k alpha / x.");
  m.def(
    "delta_stats",
    [](double alpha, double x, int k) {
      const auto s = delta_stats(DeltaKernel(alpha, x, k));
      return py::make_tuple(s.mean, s.variance);
    },
    py::arg("alpha"), py::arg("x"), py::arg("k") = 1);

  // scenarios
  m.def("scenario_names", &builtin_scenario_names);
  py::class_<TruthScenario>(m, "Scenario")
    .def(py::init(&scenario_from_name), py::arg("name"))
    .def_readonly("id", &TruthScenario::id)
    .def_readonly("total_weight", &TruthScenario::total_weight)
    .def("f", [](const TruthScenario& s, double x) { return s.f(x); }, py::arg("x"))
    .def("cdf", [](const TruthScenario& s, double x) { return s.cdf(x); }, py::arg("x"))
    .def("survival", [](const TruthScenario& s, double x) { return s.survival(x); }, py::arg("x"))
    .def("hazard", &TruthScenario::hazard_at, py::arg("x"))
    .def("__repr__", [](const TruthScenario& s) { return "<Scenario '" + s.id + "'>"; });
  m.def(
    "sample_scenario",
    [](const std::string& name, std::size_t n, std::uint64_t seed) {
      const Sample s = sample_scenario(name, n, seed);
      return std::vector<double>(s.values().begin(), s.values().end());
    },
    py::arg("name"), py::arg("n"), py::arg("seed"));

  // estimators; samples are sequences of positive floats
  m.def(
    "estimate_total_weight",
    [](std::vector<double> y, const std::string& model) {
      return estimate_total_weight(Sample(std::move(y)), model_from_name(model));
    },
    py::arg("sample"), py::arg("model") = "length-biased");
  m.def(
    "moment_density_star",
    [](std::vector<double> y, double weight, double alpha, double x) {
      return moment_density_star(Sample(std::move(y)), WeightedModel::length_biased(), weight,
                                 alpha, x);
    },
    py::arg("sample"), py::arg("weight"), py::arg("alpha"), py::arg("x"));
  m.def(
    "moment_density_basic",
    [](std::vector<double> y, double weight, double alpha, double x, const std::string& model) {
      return moment_density_basic(Sample(std::move(y)), model_from_name(model), weight, alpha, x);
    },
    py::arg("sample"), py::arg("weight"), py::arg("alpha"), py::arg("x"),
    py::arg("model") = "length-biased");
  m.def(
    "survival_estimate",
    [](std::vector<double> y, double weight, double alpha, double x) {
      return survival_estimate(Sample(std::move(y)), WeightedModel::excess_life_unknown(), weight,
                               alpha, x);
    },
    py::arg("sample"), py::arg("weight"), py::arg("alpha"), py::arg("x"));
  m.def(
    "direct_density",
    [](std::vector<double> y, double alpha, double at) {
      return direct_density(Sample(std::move(y)), alpha, at);
    },
    py::arg("sample"), py::arg("alpha"), py::arg("y"));
  m.def(
    "direct_density_derivative",
    [](std::vector<double> y, double alpha, double at) {
      return direct_density_derivative(Sample(std::move(y)), alpha, at);
    },
    py::arg("sample"), py::arg("alpha"), py::arg("y"));
  m.def(
    "excess_plugins",
    [](std::vector<double> y, double alpha, double at, std::optional<double> g0_point) {
      const Sample s(std::move(y));
      const auto p = excess_plugins(s, alpha, at, g0_point.value_or(default_g0_point(s)));
      py::dict d;
      d["f_hat"] = p.f_hat;
      d["hazard_hat"] = p.hazard_hat;
      d["w_hat"] = p.w_hat ? py::cast(*p.w_hat) : py::none();
      d["W_hat"] = p.W_hat;
      return d;
    },
    py::arg("sample"), py::arg("alpha"), py::arg("y"), py::arg("g0_point") = py::none());
  m.def(
    "jones_density",
    [](std::vector<double> y, double weight, double bandwidth, double x) {
      return jones_density(Sample(std::move(y)), WeightedModel::length_biased(), weight,
                           KernelSpec{ "standard-normal", bandwidth }, x);
    },
    py::arg("sample"), py::arg("weight"), py::arg("bandwidth"), py::arg("x"));
  m.def(
    "jones_survival",
    [](std::vector<double> y, double weight, double bandwidth, double x) {
      return jones_survival(Sample(std::move(y)), WeightedModel::excess_life_unknown(), weight,
                            KernelSpec{ "standard-normal", bandwidth }, x);
    },
    py::arg("sample"), py::arg("weight"), py::arg("bandwidth"), py::arg("x"));

  // smoothing
  m.def("alpha_global", &alpha_global, py::arg("n"), py::arg("delta"),
        py::arg("integerize") = true);
  m.def(
    "alpha_local_density",
    [](const std::string& s, double x, std::size_t n, double delta) {
      const auto sc = scenario_from_name(s);
      return alpha_local_density(sc, sc.total_weight, x, n, delta);
    },
    py::arg("scenario"), py::arg("x"), py::arg("n"), py::arg("delta"));
  m.def(
    "alpha_local_survival",
    [](const std::string& s, double x, std::size_t n, double delta) {
      const auto sc = scenario_from_name(s);
      return alpha_local_survival(sc, sc.total_weight, x, n, delta);
    },
    py::arg("scenario"), py::arg("x"), py::arg("n"), py::arg("delta"));

  // theory
  m.def(
    "density_asymptotics",
    [](const std::string& s, double x, double alpha, std::size_t n) {
      const auto sc = scenario_from_name(s);
      return report_dict(density_asymptotics(sc, sc.total_weight, x, alpha, n));
    },
    py::arg("scenario"), py::arg("x"), py::arg("alpha"), py::arg("n"));
  m.def(
    "survival_asymptotics",
    [](const std::string& s, double x, double alpha, std::size_t n) {
      const auto sc = scenario_from_name(s);
      return report_dict(survival_asymptotics(sc, sc.total_weight, x, alpha, n));
    },
    py::arg("scenario"), py::arg("x"), py::arg("alpha"), py::arg("n"));
  m.def(
    "density_mse_optimal",
    [](const std::string& s, double x, std::size_t n) {
      const auto sc = scenario_from_name(s);
      return optimum_dict(density_mse_optimal(sc, sc.total_weight, x, n));
    },
    py::arg("scenario"), py::arg("x"), py::arg("n"));
  m.def(
    "survival_mse_optimal",
    [](const std::string& s, double x, std::size_t n) {
      const auto sc = scenario_from_name(s);
      return optimum_dict(survival_mse_optimal(sc, sc.total_weight, x, n));
    },
    py::arg("scenario"), py::arg("x"), py::arg("n"));
  m.def(
    "jones_mse",
    [](const std::string& s, double x, double bandwidth, std::size_t n) {
      const auto sc = scenario_from_name(s);
      return jones_mse(sc, sc.total_weight, x, bandwidth, n);
    },
    py::arg("scenario"), py::arg("x"), py::arg("bandwidth"), py::arg("n"));
  m.def(
    "exact_density_bias",
    [](const std::string& s, double x, double alpha) {
      return exact_density_bias(scenario_from_name(s), x, alpha);
    },
    py::arg("scenario"), py::arg("x"), py::arg("alpha"));
  m.def(
    "exact_survival_bias",
    [](const std::string& s, double x, double alpha) {
      return exact_survival_bias(scenario_from_name(s), x, alpha);
    },
    py::arg("scenario"), py::arg("x"), py::arg("alpha"));
  m.def(
    "exact_estimator_moments",
    [](const std::string& s, double x, double alpha, int k) {
      const auto [sc, model] = builtin_scenario(s);
      return exact_estimator_moments(sc, model, x, alpha, k);
    },
    py::arg("scenario"), py::arg("x"), py::arg("alpha"), py::arg("k"));

  // simulation
  m.def(
    "run_mc",
    [](const std::string& scenario, const std::string& estimator, std::vector<std::size_t> n,
       std::vector<double> x, std::size_t replicates, const std::string& alpha, std::uint64_t seed,
       double bandwidth_exp, const std::string& weight_mode, unsigned threads) {
      const McConfig c = mc_config(scenario, estimator, n, x, replicates, alpha, seed,
                                   bandwidth_exp, weight_mode, threads);
      McResult r;
      {
        py::gil_scoped_release release;
        r = run_mc(c);
      }
      py::list rows;
      for (const auto& cell : r.cells) {
        py::dict d;
        d["n"] = cell.n;
        d["x"] = cell.x;
        d["smoothing"] = cell.smoothing;
        d["truth"] = cell.truth;
        d["mean"] = cell.mean;
        d["bias"] = cell.bias;
        d["variance"] = cell.variance;
        d["mse"] = cell.mse;
        d["se_bias"] = cell.se_bias;
        d["se_mse"] = cell.se_mse;
        rows.append(d);
      }
      return rows;
    },
    py::arg("scenario"), py::arg("estimator"), py::arg("n"), py::arg("x"),
    py::arg("replicates") = 200, py::arg("alpha") = "global:0.4", py::arg("seed") = 42,
    py::arg("bandwidth_exp") = 0.2, py::arg("weight_mode") = "known", py::arg("threads") = 0);
  m.def(
    "normality_experiment",
    [](const std::string& scenario, const std::string& estimator, std::size_t n, double x,
       std::size_t replicates, const std::string& alpha, std::uint64_t seed,
       const std::string& centering, const std::string& scaling, bool subtract_mean) {
      const McConfig c = mc_config(scenario, estimator, { n }, { x }, replicates, alpha, seed, 0.2,
                                   "known", 0);
      Centering ce;
      if (centering == "exact-mean") ce = Centering::exact_mean;
      else if (centering == "true-value") ce = Centering::true_value;
      else throw ConfigError("centering must be exact-mean or true-value");
      Scaling sc;
      if (scaling == "exact-variance") sc = Scaling::exact_variance;
      else if (scaling == "theory-variance") sc = Scaling::theory_variance;
      else throw ConfigError("scaling must be exact-variance or theory-variance");
      NormalityResult r;
      {
        py::gil_scoped_release release;
        r = normality_experiment(c, ce, sc, subtract_mean);
      }
      py::dict d;
      d["ks_distance"] = r.ks_distance;
      d["replicate_count"] = r.replicate_count;
      d["alpha"] = r.alpha;
      d["mean"] = r.mean;
      d["sd"] = r.sd;
      d["scaled_mean"] = r.scaled_mean;
      d["predicted_mean"] = r.predicted_mean;
      d["limit_variance"] = r.limit_variance;
      return d;
    },
    py::arg("scenario"), py::arg("estimator"), py::arg("n"), py::arg("x"),
    py::arg("replicates") = 2000, py::arg("alpha") = "global:0.6:real", py::arg("seed") = 42,
    py::arg("centering") = "exact-mean", py::arg("scaling") = "exact-variance",
    py::arg("subtract_mean") = false);
  m.def(
    "rate_fit",
    [](std::vector<double> ns, std::vector<double> mses) {
      const auto f = rate_fit(ns, mses);
      return py::make_tuple(f.slope, f.intercept, f.r2);
    },
    py::arg("ns"), py::arg("mses"));
  m.def(
    "ks_distance_normal",
    [](std::vector<double> v) { return ks_distance_normal(v); }, py::arg("values"));
}
