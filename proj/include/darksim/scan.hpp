#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "darksim/presets.hpp"

namespace darksim {

// Bad configuration (unknown names, malformed files).  Maps to CLI exit 1.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File read/write failure.  Maps to CLI exit 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AxisSpec {
  std::string name;
  double min = 0;
  double max = 0;
  int count = 0;
  bool log = false;
};

// Optional per-point linewidth extraction: sweep the named drive's detuning
// across center +- halfspan and measure the full width at half maximum of
// the observable population.
struct FwhmSpec {
  bool enabled = false;
  std::string drive;
  double halfspan = 0;
  int count = 41;
};

struct ScanSpec {
  Experiment base;
  std::vector<AxisSpec> axes;  // one or two
  FwhmSpec fwhm;
  int workers = 0;  // <= 0: hardware concurrency
  nlohmann::json config_echo;
};

struct ScanRecord {
  std::vector<double> params;
  double pf = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> populations;  // per level, same order as scheme
  std::optional<double> fwhm;
  bool fwhm_masked = false;
  double settle_time = 0;   // 0 for static solves
  double residual = 0;      // steady residual or period defect
  bool degenerate = false;
  std::string error;        // empty on success
};

struct ScanResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> pop_labels;
  std::vector<int> shape;  // grid extent per axis
  std::vector<ScanRecord> records;
  nlohmann::json config_echo;
};

// Set one named parameter on an experiment.  Recognized names:
//   delta_B, theta_BE (degrees), omega[_label], detuning[_label],
//   linewidth[_label], phi[_label] (phase-modulation excursion, degrees),
//   delta_mod[_label] (modulation rate; for a bichromatic drive this sets
//   symmetric shifts +value/-value).
// The bare form is allowed when the experiment has exactly one drive.
void apply_parameter(Experiment& ex, const std::string& name, double value);

// Solve a single configuration: stationary solve for static drives,
// settled one-period average for modulated ones.
ScanRecord solve_point(const Experiment& ex, const FwhmSpec& fwhm = {});

// Full-width at half maximum of a sampled line.  Narrow downward spikes
// (at most two samples wide) are replaced by a running median before
// interpolation; `masked` reports whether that happened.  The peak is
// refined on a monotone cubic interpolant and each half-maximum crossing is
// found by bisection.  Throws std::domain_error when fewer than 9 samples
// are given or a flank never drops below half maximum ("insufficient span").
double extract_fwhm(std::vector<std::pair<double, double>> samples,
                    bool* masked = nullptr);

// Deterministic threaded sweep: records are indexed by grid position
// (row-major, first axis outermost) regardless of worker count.  Per-point
// failures are recorded in the row's error field, not thrown.
ScanResult run_scan(const ScanSpec& spec);

// Index of the record with the largest observable population among rows
// without errors; ties resolve to the lowest index.
std::size_t find_optimum_index(const ScanResult& result);

// Least-squares slope of log(y) vs log(x); requires >= 2 positive samples.
double loglog_slope(const std::vector<double>& x,
                    const std::vector<double>& y);

ScanSpec parse_scan_config(const nlohmann::json& config);
ScanSpec load_scan_config(const std::string& path);

void write_csv(const ScanResult& result, const std::string& path);
// Writes <csv_path>.json with the configuration echo, column layout,
// grid shape and library version.
void write_sidecar(const ScanResult& result, const std::string& csv_path);

}  // namespace darksim
