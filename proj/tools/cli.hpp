#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace momdens::cli {

enum ExitCode : int
{
  kOk = 0,
  kUnexpected = 1,
  kConfigError = 2,
  kNumericError = 3
};

//! Fully resolved invocation: defaults, then the JSON config file, then
//! explicit flags.
struct RunConfig
{
  std::string command;
  std::optional<std::string> scenario;
  std::optional<std::string> data_path;
  std::string model = "length-biased";
  std::optional<double> total_weight;
  std::string estimator = "star";
  std::string alpha = "global:0.4";
  std::optional<std::string> baseline;
  double bandwidth_exp = 0.2;
  double grid_min = 0.05;
  double grid_max = 5.0;
  int grid_count = 100;
  std::optional<std::string> output;
  std::uint64_t seed = 42;
  bool clamp_survival = false;
  std::vector<std::size_t> n;
  std::vector<double> x;
  std::size_t replicates = 200;
  unsigned threads = 0;
  std::string centering = "exact-mean";
  std::string scaling = "exact-variance";
  bool subtract_mean = false;
  std::string weight_mode = "known";
  std::optional<double> g0_point;
};

//! Runs one invocation. `args` excludes the program name. CSV goes to the
//! configured output (file, $MOMDENS_OUTPUT_DIR/<command>.csv, or `out`);
//! diagnostics go to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace momdens::cli
