#ifndef LFOPT_HARNESS_HPP_
#define LFOPT_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lfopt/data.hpp"
#include "lfopt/metrics.hpp"

namespace lfopt {

enum class Experiment { Benchmark, Convergence, SampleComplexity, TauSensitivity, CalibCheck };

std::optional<Experiment> experiment_from_name(const std::string& name);

struct ExperimentConfig {
  Experiment experiment = Experiment::Benchmark;
  MetricKind metric = MetricKind::fbeta(1.0);
  std::vector<std::string> methods{"U-GD", "U-BFGS", "ERM", "W-ERM", "Plug-in"};
  int trials = 50;
  std::optional<double> tau;  // metric-specific default when absent
  int iters = 300;
  std::vector<double> lr_grid{1e1, 1e-1, 1e-3, 1e-5};
  std::uint64_t seed = 1;
  std::vector<std::string> datasets;       // names resolved through the registry
  std::string registry_path = "datasets.txt";
  std::string synthetic;                   // e.g. "oracle2:n=10000", "" for none
  std::string out;                         // CSV path; empty writes to stdout
  bool force_tau = false;
  int jobs = 1;
  std::vector<int> sizes;    // sample-complexity grid; {20,40,...,400} when empty
  std::vector<double> taus;  // sensitivity grid; {0.1,...,0.9} when empty

  double resolved_tau() const;
  std::vector<int> resolved_sizes() const;
  std::vector<double> resolved_taus() const;
  void validate() const;  // throws InvalidInput on config errors
};

struct RunOutcome {
  std::string csv;
  int sources_run = 0;
  int sources_skipped = 0;
};

// Mean/stderr of the test utility per (dataset, method) over re-split trials.
// Columns: dataset,method,metric,mean,stderr,trials
RunOutcome run_benchmark(const ExperimentConfig& cfg);

// Per-iteration test-utility trajectories from random normal initializers,
// averaged over trials. Columns: dataset,method,iteration,mean,stderr
RunOutcome run_convergence(const ExperimentConfig& cfg);

// Test utility against stratified subsample size.
// Columns: dataset,method,metric,size,mean,stderr,trials
RunOutcome run_sample_complexity(const ExperimentConfig& cfg);

// Test utility against the discrepancy parameter, with a per-tau flag for the
// metric's admissible range.
// Columns: dataset,method,metric,tau,in_calibration_range,mean,stderr,trials
RunOutcome run_tau_sensitivity(const ExperimentConfig& cfg);

// A loadable data source: a registered dataset file or a synthetic spec.
struct DataSource {
  std::string name;
  std::optional<Dataset> fixed;      // loaded file data (re-split per trial)
  std::optional<SyntheticSpec> gen;  // regenerated per trial
};

// Resolves cfg.datasets through the registry (missing entries are reported,
// not fatal) and parses cfg.synthetic. Returns sources plus skipped names.
std::pair<std::vector<DataSource>, std::vector<std::string>> resolve_sources(
    const ExperimentConfig& cfg);

// Parses "oracle2:n=10000", "oracle3:n=2000" or
// "two-gauss:d=5,n=1000,pi=0.4,sep=2.0" into a synthetic spec.
SyntheticSpec parse_synthetic(const std::string& text, std::uint64_t seed);

}  // namespace lfopt

#endif  // LFOPT_HARNESS_HPP_
