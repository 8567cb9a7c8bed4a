#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bicomm/io.hpp"
#include "bicomm/symbols.hpp"

namespace bicomm::experiments {

const char* code_version();

/// Commands accepted by `run`, in documentation order.
const std::vector<std::string>& command_names();

struct Parameters {
  double delta = 0.5;
  double epsilon = 0.5;
  /// Bad-class threshold; defaults to delta^(1/3).
  std::optional<double> gamma;
  /// Threshold of the enlargement used by `decomposition`; defaults to delta.
  std::optional<double> enlargement_threshold;
  std::vector<double> deltas{0.1, 0.25, 0.4};
  std::vector<int> row_counts{4, 8, 16};
  double row_density = 2.0 / 3.0;
  int row_resolution = 7;
  int budget = 64;
  double tol = 1e-10;
  int max_iter = 5000;
  int restarts = 8;
  int dual_iters = 50;
  int max_boxes = 8;
};

struct PlotSpec {
  std::string source;  // CSV report to read
  std::string kind = "scatter";
  std::string x;
  std::string y;
  int bins = 20;
};

struct ExperimentConfig {
  std::string command;
  std::size_t grid = 0;  // N
  int resolution = 0;    // n
  std::uint64_t seed = 0;
  int instances = 0;
  int jobs = 1;
  FamilySpec family;
  Parameters params;
  PlotSpec plot;
  std::string out_dir = ".";
};

/// Parses and validates a configuration; unknown keys are rejected and
/// per-command defaults are filled in.
ExperimentConfig parse_config(const io::Json& j);
ExperimentConfig load_config(const std::string& path);

/// Canonical JSON of the settings that determine the results (everything but
/// the output directory and the job count).
io::Json canonical(const ExperimentConfig& c);
std::uint64_t fnv1a(const std::string& bytes);
std::string config_hash(const ExperimentConfig& c);

struct Check {
  std::string name;
  double value;
  std::string relation;  // "<=" or ">="
  double limit;
  bool passed;
};

struct Report {
  std::string command;
  io::CsvTable table{{}};
  /// Additional outputs keyed by file name relative to the output directory.
  std::map<std::string, std::string> files;
  std::vector<Check> checks;
  io::Json extra = io::Json::object();
  double runtime_seconds = 0.0;

  bool passed() const;
};

Report run(const ExperimentConfig& c);

/// Summary JSON: command, config hash, code version, per-column
/// {min,max,mean} metrics, checks and extras.
io::Json summary(const Report& r, const ExperimentConfig& c);

/// Writes `<command>.csv`, `<command>_summary.json` and the extra files into
/// the output directory; returns the paths written.
std::vector<std::string> write_report(const Report& r, const ExperimentConfig& c);

/// Plain-text plot data: "scatter" gives x y columns, "histogram" gives
/// bin_lo bin_hi count over `bins` equal bins of `x`.
std::string plotdata(const io::CsvTable& t, const PlotSpec& spec);

}  // namespace bicomm::experiments
