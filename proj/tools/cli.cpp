#include "cli.hpp"

#include "momdens/baseline.hpp"
#include "momdens/errors.hpp"
#include "momdens/estimators.hpp"
#include "momdens/models.hpp"
#include "momdens/simulation.hpp"
#include "momdens/smoothing.hpp"
#include "momdens/theory.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace momdens::cli {

namespace {

using nlohmann::json;

std::string
format_number(double v)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvWriter
{
public:
  explicit CsvWriter(std::vector<std::string> header)
    : width_(header.size())
  {
    line(header);
  }

  void row(const std::vector<double>& values)
  {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) {
      cells.push_back(format_number(v));
    }
    line(cells);
  }

  void line(const std::vector<std::string>& cells)
  {
    if (cells.size() != width_) {
      throw StateError("csv row width mismatch");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      buffer_ << (i ? "," : "") << cells[i];
    }
    buffer_ << '\n';
  }

  void comment(const std::string& text) { buffer_ << "# " << text << '\n'; }

  std::string str() const { return buffer_.str(); }

private:
  std::size_t width_;
  std::ostringstream buffer_;
};

std::vector<double>
linear_grid(double lo, double hi, int count)
{
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw ConfigError("grid: need 0 < min < max and count >= 2");
  }
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (count - 1);
  }
  return grid;
}

// (0, hi] in `count` equal steps, excluding 0
std::vector<double>
figure_grid(double hi, int count)
{
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 1; i <= count; ++i) {
    grid[static_cast<std::size_t>(i - 1)] = hi * i / count;
  }
  return grid;
}

Sample
read_data_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open data file '" + path + "'");
  }
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    double v = 0.0;
    if (!(fields >> v)) {
      std::string rest;
      fields.clear();
      if (fields >> rest) {
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": expected one number per line");
      }
      continue;
    }
    std::string extra;
    if (fields >> extra) {
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected one number per line");
    }
    values.push_back(v);
  }
  if (values.empty()) {
    throw ConfigError("data file '" + path + "' has no observations");
  }
  return Sample(std::move(values));
}

template<typename T>
std::vector<T>
json_list(const json& value)
{
  if (value.is_array()) {
    return value.get<std::vector<T>>();
  }
  return { value.get<T>() };
}

// Keys of the JSON config file, identical to the long flag names.
void
apply_json(RunConfig& c, const json& j)
{
  for (const auto& [key, value] : j.items()) {
    if (key == "scenario") c.scenario = value.get<std::string>();
    else if (key == "data") c.data_path = value.get<std::string>();
    else if (key == "model") c.model = value.get<std::string>();
    else if (key == "weight") c.total_weight = value.get<double>();
    else if (key == "estimator") c.estimator = value.get<std::string>();
    else if (key == "alpha") c.alpha = value.get<std::string>();
    else if (key == "baseline") c.baseline = value.get<std::string>();
    else if (key == "bandwidth-exp") c.bandwidth_exp = value.get<double>();
    else if (key == "grid-min") c.grid_min = value.get<double>();
    else if (key == "grid-max") c.grid_max = value.get<double>();
    else if (key == "grid-count") c.grid_count = value.get<int>();
    else if (key == "output") c.output = value.get<std::string>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "clamp-survival") c.clamp_survival = value.get<bool>();
    else if (key == "n") c.n = json_list<std::size_t>(value);
    else if (key == "x") c.x = json_list<double>(value);
    else if (key == "replicates") c.replicates = value.get<std::size_t>();
    else if (key == "threads") c.threads = value.get<unsigned>();
    else if (key == "centering") c.centering = value.get<std::string>();
    else if (key == "scaling") c.scaling = value.get<std::string>();
    else if (key == "subtract-mean") c.subtract_mean = value.get<bool>();
    else if (key == "weight-mode") c.weight_mode = value.get<std::string>();
    else if (key == "g0-point") c.g0_point = value.get<double>();
    else throw ConfigError("config file: unknown key '" + key + "'");
  }
}

json
load_json(const std::string& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  try {
    json j = json::parse(in);
    if (!j.is_object()) {
      throw ConfigError("config file must hold a JSON object");
    }
    return j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
}

struct Resolved
{
  TruthScenario scenario;
  WeightedModel model;
  bool has_truth;
};

Resolved
resolve_scenario(const std::string& name)
{
  auto [s, m] = builtin_scenario(name);
  return { std::move(s), std::move(m), true };
}

std::size_t
first_n(const RunConfig& c, std::size_t fallback)
{
  return c.n.empty() ? fallback : c.n.front();
}

WeightMode
parse_weight_mode(const std::string& s)
{
  if (s == "known") return WeightMode::known;
  if (s == "estimated") return WeightMode::estimated;
  throw ConfigError("weight-mode must be 'known' or 'estimated'");
}

WeightedModel
data_model(const RunConfig& c)
{
  if (c.model == "length-biased") return WeightedModel::length_biased(c.total_weight);
  if (c.model == "direct") return WeightedModel::direct();
  if (c.model == "excess-life") {
    if (c.total_weight) {
      return WeightedModel::custom([](double) { return 1.0; }, c.total_weight);
    }
    return WeightedModel::excess_life_unknown();
  }
  throw ConfigError("model must be length-biased, excess-life or direct");
}

std::string
resolve_output_path(const RunConfig& c)
{
  if (c.output) {
    return *c.output;
  }
  if (const char* dir = std::getenv("MOMDENS_OUTPUT_DIR"); dir && *dir) {
    return (std::filesystem::path(dir) / (c.command + ".csv")).string();
  }
  return {};
}

void
emit(const RunConfig& c, const std::string& text, std::ostream& out)
{
  const std::string path = resolve_output_path(c);
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw ConfigError("cannot write output file '" + path + "'");
  }
  file << text;
}

// ---------------------------------------------------------------- commands

struct CurveSource
{
  Sample sample;
  std::optional<Resolved> truth;
  WeightedModel model;
};

CurveSource
load_source(const RunConfig& c, std::size_t default_n)
{
  if (c.scenario && c.data_path) {
    throw ConfigError("give either --scenario or --data, not both");
  }
  if (c.scenario) {
    Resolved r = resolve_scenario(*c.scenario);
    Sample s = sample_scenario(*c.scenario, first_n(c, default_n), c.seed);
    WeightedModel m = r.model;
    return { std::move(s), std::move(r), std::move(m) };
  }
  if (c.data_path) {
    return { read_data_file(*c.data_path), std::nullopt, data_model(c) };
  }
  throw ConfigError("missing input: give --scenario <name> or --data <path>");
}

double
resolve_weight(const RunConfig& c, const CurveSource& src, double alpha_hint)
{
  if (src.truth && parse_weight_mode(c.weight_mode) == WeightMode::known) {
    return src.truth->scenario.total_weight;
  }
  if (!src.truth && src.model.total_weight()) {
    return *src.model.total_weight();
  }
  switch (src.model.kind()) {
    case WeightKind::direct:
      return 1.0;
    case WeightKind::excess_life: {
      const double g0 = c.g0_point.value_or(default_g0_point(src.sample));
      return 1.0 / direct_density(src.sample, std::max(2.0, alpha_hint), g0);
    }
    default:
      return estimate_total_weight(src.sample, src.model);
  }
}

int
cmd_estimate(const RunConfig& c, bool survival_command, std::ostream& out)
{
  const AlphaRule rule = AlphaRule::parse(c.alpha);
  if (c.baseline && *c.baseline != "jones") {
    throw ConfigError("unknown baseline '" + *c.baseline + "'");
  }
  CurveSource src = load_source(c, 300);
  const EstimatorId id =
    survival_command ? EstimatorId::survival : parse_estimator(c.estimator);
  if (is_kernel_baseline(id)) {
    throw ConfigError("use --baseline jones to add the kernel estimator");
  }
  if (rule.needs_scenario() && !src.truth) {
    throw ConfigError("local alpha rules need a known truth scenario");
  }
  const std::size_t n = src.sample.size();
  const TruthScenario* truth = src.truth ? &src.truth->scenario : nullptr;
  const double minimum = (id == EstimatorId::basic || id == EstimatorId::direct) ? 2.0 : 1.0;
  const double W_rule = truth ? truth->total_weight : 1.0;
  const double weight = resolve_weight(c, src, rule.at(n, 1.0, truth, W_rule, minimum));
  const std::vector<double> grid = linear_grid(c.grid_min, c.grid_max, c.grid_count);

  auto estimator = [&](double alpha, double x) -> double {
    switch (id) {
      case EstimatorId::star:
        return moment_density_star(src.sample, src.model, weight, alpha, x);
      case EstimatorId::basic:
        return moment_density_basic(src.sample, src.model, weight, alpha, x);
      case EstimatorId::direct:
        return direct_density(src.sample, alpha, x);
      case EstimatorId::survival: {
        const double s = survival_estimate(src.sample, src.model, weight, alpha, x);
        return c.clamp_survival ? std::clamp(s, 0.0, 1.0) : s;
      }
      default:
        throw ConfigError("estimator not available here");
    }
  };
  const EstimateCurve curve = evaluate_curve(
    to_string(id), grid,
    [&](double x) { return rule.at(n, x, truth, W_rule, minimum); }, estimator);

  std::vector<std::string> header{ "x", "alpha", "estimate" };
  if (truth) header.push_back("truth");
  if (c.baseline) header.push_back("jones");
  CsvWriter csv(header);
  const KernelSpec kspec{ "standard-normal", bandwidth_from_exponent(n, c.bandwidth_exp) };
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    std::vector<double> row{ x, curve.alphas[i], curve.values[i] };
    if (truth) {
      if (id == EstimatorId::survival) row.push_back(truth->survival(x));
      else if (id == EstimatorId::direct) row.push_back(observed_density(*truth, src.model, x));
      else row.push_back(truth->f(x));
    }
    if (c.baseline) {
      double v = id == EstimatorId::survival
                   ? jones_survival(src.sample, src.model, weight, kspec, x)
                   : jones_density(src.sample, src.model, weight, kspec, x);
      if (id == EstimatorId::survival && c.clamp_survival) v = std::clamp(v, 0.0, 1.0);
      row.push_back(v);
    }
    csv.row(row);
  }
  emit(c, csv.str(), out);
  return kOk;
}

McConfig
mc_config(const RunConfig& c)
{
  if (!c.scenario) {
    throw ConfigError("missing --scenario");
  }
  McConfig m;
  m.scenario = *c.scenario;
  m.estimator = parse_estimator(c.estimator);
  m.n_grid = c.n;
  m.replicates = c.replicates;
  m.x_points = c.x;
  m.alpha_rule = AlphaRule::parse(c.alpha);
  m.root_seed = c.seed;
  m.bandwidth_exponent = c.bandwidth_exp;
  m.weight_mode = parse_weight_mode(c.weight_mode);
  m.threads = c.threads;
  if (m.n_grid.empty()) throw ConfigError("missing --n");
  if (m.x_points.empty()) throw ConfigError("missing --x");
  m.validate();
  return m;
}

void
write_mc(CsvWriter& csv, const McResult& result)
{
  for (const McCell& cell : result.cells) {
    csv.row({ static_cast<double>(cell.n), cell.x, cell.smoothing, cell.truth, cell.mean,
              cell.bias, cell.variance, cell.mse, cell.se_bias, cell.se_mse });
  }
}

const std::vector<std::string> kMcHeader{ "n",    "x",        "smoothing", "truth",   "mean",
                                          "bias", "variance", "mse",       "se_bias", "se_mse" };

int
cmd_mse(const RunConfig& c, std::ostream& out)
{
  const McConfig m = mc_config(c);
  const McResult result = run_mc(m);
  CsvWriter csv(kMcHeader);
  write_mc(csv, result);
  emit(c, csv.str(), out);
  return kOk;
}

int
cmd_rate(const RunConfig& c, std::ostream& out)
{
  const McConfig m = mc_config(c);
  if (m.n_grid.size() < 3) {
    throw ConfigError("rate needs at least 3 sample sizes");
  }
  const McResult result = run_mc(m);
  CsvWriter csv(kMcHeader);
  write_mc(csv, result);
  std::vector<std::string> summaries;
  for (std::size_t j = 0; j < m.x_points.size(); ++j) {
    std::vector<double> ns;
    std::vector<double> mses;
    for (const McCell& cell : result.cells) {
      if (cell.x == m.x_points[j]) {
        ns.push_back(static_cast<double>(cell.n));
        mses.push_back(cell.mse);
      }
    }
    const RateFit fit = rate_fit(ns, mses);
    summaries.push_back("rate-fit x=" + format_number(m.x_points[j]) +
                        " slope=" + format_number(fit.slope) +
                        " intercept=" + format_number(fit.intercept) +
                        " r2=" + format_number(fit.r2));
  }
  for (const auto& s : summaries) csv.comment(s);
  emit(c, csv.str(), out);
  if (!resolve_output_path(c).empty()) {
    for (const auto& s : summaries) out << s << '\n';
  }
  return kOk;
}

int
cmd_normality(const RunConfig& c, std::ostream& out)
{
  const McConfig m = mc_config(c);
  Centering centering;
  if (c.centering == "exact-mean") centering = Centering::exact_mean;
  else if (c.centering == "true-value") centering = Centering::true_value;
  else throw ConfigError("centering must be exact-mean or true-value");
  Scaling scaling;
  if (c.scaling == "exact-variance") scaling = Scaling::exact_variance;
  else if (c.scaling == "theory-variance") scaling = Scaling::theory_variance;
  else throw ConfigError("scaling must be exact-variance or theory-variance");

  const NormalityResult r = normality_experiment(m, centering, scaling, c.subtract_mean);
  CsvWriter csv({ "n", "x", "alpha", "center", "scale", "ks_distance", "ks_band_5pct",
                  "replicates", "mean", "sd", "scaled_mean", "predicted_mean" });
  const double R = static_cast<double>(r.replicate_count);
  csv.row({ static_cast<double>(r.n), r.x, r.alpha, r.center, r.scale, r.ks_distance,
            1.36 / std::sqrt(R), R, r.mean, r.sd, r.scaled_mean, r.predicted_mean });
  emit(c, csv.str(), out);
  return kOk;
}

double
grid_ise(const std::vector<double>& grid,
         const std::vector<double>& est,
         const std::function<double(double)>& truth)
{
  const double dx = grid.size() > 1 ? grid[1] - grid[0] : 1.0;
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double d = est[i] - truth(grid[i]);
    s += d * d * dx;
  }
  return s;
}

int
cmd_compare(const RunConfig& c, std::ostream& out)
{
  if (!c.scenario) {
    throw ConfigError("missing --scenario");
  }
  const AlphaRule rule = AlphaRule::parse(c.alpha);
  const Resolved r = resolve_scenario(*c.scenario);
  const std::size_t n = first_n(c, 300);
  const Sample sample = sample_scenario(*c.scenario, n, c.seed);
  const bool survival = r.model.kind() == WeightKind::excess_life;
  const double W = parse_weight_mode(c.weight_mode) == WeightMode::known || survival
                     ? r.scenario.total_weight
                     : estimate_total_weight(sample, r.model);
  const KernelSpec kspec{ "standard-normal", bandwidth_from_exponent(n, c.bandwidth_exp) };
  const std::vector<double> grid = linear_grid(c.grid_min, c.grid_max, c.grid_count);

  CsvWriter csv({ "x", "alpha", "truth", "moment", "jones" });
  std::vector<double> moment;
  std::vector<double> jones;
  auto truth = [&](double x) { return survival ? r.scenario.survival(x) : r.scenario.f(x); };
  for (double x : grid) {
    const double alpha = rule.at(n, x, &r.scenario, r.scenario.total_weight);
    const double m = survival ? survival_estimate(sample, r.model, W, alpha, x)
                              : moment_density_star(sample, r.model, W, alpha, x);
    const double j = survival ? jones_survival(sample, r.model, W, kspec, x)
                              : jones_density(sample, r.model, W, kspec, x);
    moment.push_back(m);
    jones.push_back(j);
    csv.row({ x, alpha, truth(x), m, j });
  }
  csv.comment("ise moment=" + format_number(grid_ise(grid, moment, truth)) +
              " jones=" + format_number(grid_ise(grid, jones, truth)));
  emit(c, csv.str(), out);
  return kOk;
}

// figure1: length-biased sample, star estimator with known W against the
// kernel estimator with W_hat.
int
cmd_figure1(const RunConfig& c, std::ostream& out)
{
  const std::size_t n = first_n(c, 300);
  const Resolved r = resolve_scenario("lb-exp2");
  const Sample sample = sample_scenario("lb-exp2", n, c.seed);
  const double alpha = alpha_global(n, 0.4, true);
  const KernelSpec kspec{ "standard-normal", bandwidth_from_exponent(n, 0.2) };
  const double W = r.scenario.total_weight;
  const double W_hat = estimate_total_weight(sample, r.model);
  CsvWriter csv({ "x", "f_true", "f_star", "f_jones" });
  for (double x : figure_grid(5.0, 200)) {
    csv.row({ x, r.scenario.f(x), moment_density_star(sample, r.model, W, alpha, x),
              jones_density(sample, r.model, W_hat, kspec, x) });
  }
  emit(c, csv.str(), out);
  return kOk;
}

// figure2: excess-life sample, survival estimator and kernel analogue, W known.
int
cmd_figure2(const RunConfig& c, std::ostream& out)
{
  const std::size_t n = first_n(c, 400);
  const Resolved r = resolve_scenario("excess-gamma22");
  const Sample sample = sample_scenario("excess-gamma22", n, c.seed);
  const double alpha = alpha_global(n, 0.4, true);
  const KernelSpec kspec{ "standard-normal", bandwidth_from_exponent(n, 0.2) };
  const double W = r.scenario.total_weight;
  CsvWriter csv({ "x", "S_true", "S_alpha", "S_jones" });
  for (double x : figure_grid(10.0, 200)) {
    double s = survival_estimate(sample, r.model, W, alpha, x);
    double j = jones_survival(sample, r.model, W, kspec, x);
    if (c.clamp_survival) {
      s = std::clamp(s, 0.0, 1.0);
      j = std::clamp(j, 0.0, 1.0);
    }
    csv.row({ x, r.scenario.survival(x), s, j });
  }
  emit(c, csv.str(), out);
  return kOk;
}

void
report(std::ostream& err, const char* kind, const std::string& message)
{
  err << json{ { "error", kind }, { "message", message } }.dump() << '\n';
}

} // namespace

int
run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{ "Moment-density estimation for biased sampling models", "momdens" };
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig flags;
  std::string config_path;
  std::string scenario;
  std::string data;
  std::string baseline;
  std::string output;
  double weight = 0.0;
  double g0 = 0.0;

  app.add_option("--config", config_path, "JSON file with option values");
  app.add_option("--scenario", scenario, "built-in scenario: lb-exp2 | excess-gamma22");
  app.add_option("--data", data, "file with one positive observation per line");
  app.add_option("--model", flags.model, "model for --data: length-biased | excess-life | direct");
  app.add_option("--weight", weight, "known total weight W for --data");
  app.add_option("--estimator", flags.estimator, "star | basic | direct | survival | jones | jones-survival");
  app.add_option("--alpha", flags.alpha, "fixed:<v> | global:<delta> | local-density:<delta> | local-survival:<delta>");
  app.add_option("--baseline", baseline, "add a baseline column (jones)");
  app.add_option("--bandwidth-exp", flags.bandwidth_exp, "beta in h = n^-beta");
  app.add_option("--grid-min", flags.grid_min);
  app.add_option("--grid-max", flags.grid_max);
  app.add_option("--grid-count", flags.grid_count);
  app.add_option("--output", output, "output CSV path");
  app.add_option("--seed", flags.seed, "root seed");
  app.add_flag("--clamp-survival", flags.clamp_survival, "clamp survival estimates to [0, 1]");
  app.add_option("--n", flags.n, "sample size(s)")->delimiter(',');
  app.add_option("--x", flags.x, "evaluation point(s)")->delimiter(',');
  app.add_option("--replicates", flags.replicates);
  app.add_option("--threads", flags.threads, "worker threads (0 = all cores)");
  app.add_option("--centering", flags.centering, "exact-mean | true-value");
  app.add_option("--scaling", flags.scaling, "exact-variance | theory-variance");
  app.add_flag("--subtract-mean", flags.subtract_mean, "remove the predicted limit mean");
  app.add_option("--weight-mode", flags.weight_mode, "known | estimated");
  app.add_option("--g0-point", g0, "point standing in for 0 in W_hat = 1/g_hat(0)");

  for (const char* name : { "estimate", "survival", "mse", "rate", "normality", "compare",
                            "figure1", "figure2" }) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, "config", e.what());
    return kConfigError;
  }

  try {
    RunConfig c;
    c.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
      apply_json(c, load_json(config_path));
    }
    auto given = [&](const char* name) { return app.get_option(name)->count() > 0; };
    if (given("--scenario")) c.scenario = scenario;
    if (given("--data")) c.data_path = data;
    if (given("--model")) c.model = flags.model;
    if (given("--weight")) c.total_weight = weight;
    if (given("--estimator")) c.estimator = flags.estimator;
    if (given("--alpha")) c.alpha = flags.alpha;
    if (given("--baseline")) c.baseline = baseline;
    if (given("--bandwidth-exp")) c.bandwidth_exp = flags.bandwidth_exp;
    if (given("--grid-min")) c.grid_min = flags.grid_min;
    if (given("--grid-max")) c.grid_max = flags.grid_max;
    if (given("--grid-count")) c.grid_count = flags.grid_count;
    if (given("--output")) c.output = output;
    if (given("--seed")) c.seed = flags.seed;
    if (given("--clamp-survival")) c.clamp_survival = flags.clamp_survival;
    if (given("--n")) c.n = flags.n;
    if (given("--x")) c.x = flags.x;
    if (given("--replicates")) c.replicates = flags.replicates;
    if (given("--threads")) c.threads = flags.threads;
    if (given("--centering")) c.centering = flags.centering;
    if (given("--scaling")) c.scaling = flags.scaling;
    if (given("--subtract-mean")) c.subtract_mean = flags.subtract_mean;
    if (given("--weight-mode")) c.weight_mode = flags.weight_mode;
    if (given("--g0-point")) c.g0_point = g0;

    const std::string& cmd = c.command;
    if (cmd == "estimate") return cmd_estimate(c, false, out);
    if (cmd == "survival") return cmd_estimate(c, true, out);
    if (cmd == "mse") return cmd_mse(c, out);
    if (cmd == "rate") return cmd_rate(c, out);
    if (cmd == "normality") return cmd_normality(c, out);
    if (cmd == "compare") return cmd_compare(c, out);
    if (cmd == "figure1") return cmd_figure1(c, out);
    if (cmd == "figure2") return cmd_figure2(c, out);
    throw ConfigError("unknown command '" + cmd + "'");
  } catch (const NumericError& e) {
    report(err, "numeric", e.what());
    return kNumericError;
  } catch (const ConfigError& e) {
    report(err, "config", e.what());
    return kConfigError;
  } catch (const DomainError& e) {
    report(err, "domain", e.what());
    return kConfigError;
  } catch (const StateError& e) {
    report(err, "state", e.what());
    return kConfigError;
  } catch (const json::exception& e) {
    report(err, "config", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    report(err, "internal", e.what());
    return kUnexpected;
  }
}

} // namespace momdens::cli
