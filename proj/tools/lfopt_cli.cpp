#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lfopt/calibration.hpp"
#include "lfopt/errors.hpp"
#include "lfopt/harness.hpp"
#include "lfopt/surrogate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitAllSkipped = 2;
constexpr int kExitInternal = 3;

lfopt::MetricKind parse_metric(const std::string& name, double beta, double alpha) {
  if (name == "f1") return lfopt::MetricKind::fbeta(1.0);
  if (name == "fbeta") return lfopt::MetricKind::fbeta(beta);
  if (name == "jaccard") return lfopt::MetricKind::jaccard();
  if (name == "accuracy") return lfopt::MetricKind::accuracy();
  if (name == "gower-legendre") return lfopt::MetricKind::gower_legendre(alpha);
  throw lfopt::InvalidInput("unknown metric '" + name + "'");
}

int run_calibcheck(const lfopt::MetricKind& metric, double tau, double pi,
                   std::optional<double> u_phi_star, std::optional<double> u_fstar) {
  using lfopt::Verdict;
  std::cout << "metric=" << metric.name() << "\n";
  std::cout << "tau=" << tau << "\n";

  lfopt::CalibrationReport report;
  if (metric.family == lfopt::MetricKind::Family::Accuracy) {
    const lfopt::TauDiscrepantLoss loss(tau);
    report = lfopt::check_accuracy([&](double t) { return lfopt::loss_value(loss, t); });
  } else {
    report = lfopt::check_general(lfopt::spec_for(metric, pi), tau, u_phi_star, u_fstar);
    lfopt::TauRange range{0.0, 1.0, true};
    if (metric.family == lfopt::MetricKind::Family::FBeta) {
      range = lfopt::tau_range_fbeta(metric.param);
    } else if (metric.family == lfopt::MetricKind::Family::Jaccard) {
      range = lfopt::tau_range_jaccard();
    }
    report.conditions.push_back({"tau_in_range",
                                 range.contains(tau) ? Verdict::Satisfied : Verdict::Violated,
                                 tau});
    report.overall = Verdict::Satisfied;
    for (const auto& c : report.conditions) {
      if (c.verdict == Verdict::Violated) report.overall = Verdict::Violated;
    }
  }

  for (const auto& c : report.conditions) {
    std::cout << c.name << "=" << lfopt::verdict_name(c.verdict) << "\n";
  }
  std::cout << "overall=" << lfopt::verdict_name(report.overall) << "\n";
  return report.overall == Verdict::Violated ? 1 : 0;
}

int emit(const lfopt::RunOutcome& outcome, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << outcome.csv;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kExitConfigError;
    }
    out << outcome.csv;
  }
  if (outcome.sources_run == 0 && outcome.sources_skipped > 0) return kExitAllSkipped;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear-fractional metric maximization experiments"};
  app.set_config("--config");

  std::string experiment = "benchmark";
  std::string metric_name = "f1";
  double beta = 1.0;
  double alpha = 1.0;
  double pi = 0.5;
  double tau = -1.0;
  std::vector<std::string> methods;
  int trials = 50;
  int iters = 300;
  std::vector<double> lr_grid;
  std::uint64_t seed = 1;
  std::vector<std::string> datasets;
  std::string registry = "datasets.txt";
  std::string synthetic;
  std::string out_path;
  bool force_tau = false;
  int jobs = 1;
  std::vector<int> sizes;
  std::vector<double> taus;
  double u_phi_star = -1.0;
  double u_fstar = -1.0;

  app.add_option("--experiment", experiment,
                 "benchmark | convergence | sample-complexity | tau-sensitivity | calibcheck");
  app.add_option("--metric", metric_name, "f1 | fbeta | jaccard | accuracy | gower-legendre");
  app.add_option("--beta", beta, "beta for --metric fbeta");
  app.add_option("--alpha", alpha, "alpha for --metric gower-legendre");
  app.add_option("--tau", tau, "discrepancy parameter (metric default when omitted)");
  app.add_option("--methods", methods, "subset of U-GD,U-BFGS,ERM,W-ERM,Plug-in")
      ->delimiter(',');
  app.add_option("--trials", trials, "trials per cell");
  app.add_option("--iters", iters, "gradient-update budget per phase");
  app.add_option("--lr-grid", lr_grid, "learning-rate grid")->delimiter(',');
  app.add_option("--seed", seed, "base seed; trial t uses seed+t");
  app.add_option("--data", datasets, "dataset names from the registry")->delimiter(',');
  app.add_option("--registry", registry, "registry file with 'name path' lines");
  app.add_option("--synthetic", synthetic,
                 "oracle2:n=... | oracle3:n=... | two-gauss:d=...,n=...,pi=...,sep=...");
  app.add_option("--out", out_path, "output CSV path (stdout when omitted)");
  app.add_flag("--force-tau", force_tau, "allow tau outside the calibration range");
  app.add_option("--jobs", jobs, "parallel trial workers");
  app.add_option("--sizes", sizes, "sample-complexity sizes")->delimiter(',');
  app.add_option("--taus", taus, "tau-sensitivity grid")->delimiter(',');
  app.add_option("--pi", pi, "class prior for calibcheck coefficient resolution");
  app.add_option("--u-phi-star", u_phi_star, "estimate of the optimal surrogate utility");
  app.add_option("--u-fstar", u_fstar, "estimate of the true utility at the surrogate optimum");

  CLI::App* calib = app.add_subcommand("calibcheck", "check calibration conditions");
  calib->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    const lfopt::MetricKind metric = parse_metric(metric_name, beta, alpha);
    const auto exp = lfopt::experiment_from_name(experiment);
    if (!exp) {
      std::cerr << "error: unknown experiment '" << experiment << "'\n";
      return kExitConfigError;
    }

    lfopt::ExperimentConfig cfg;
    cfg.experiment = *exp;
    cfg.metric = metric;
    if (!methods.empty()) cfg.methods = methods;
    if (*exp == lfopt::Experiment::Convergence || *exp == lfopt::Experiment::TauSensitivity) {
      if (methods.empty()) cfg.methods = {"U-GD", "U-BFGS"};
    }
    cfg.trials = trials;
    if (tau >= 0.0) cfg.tau = tau;
    cfg.iters = iters;
    if (!lr_grid.empty()) cfg.lr_grid = lr_grid;
    cfg.seed = seed;
    cfg.datasets = datasets;
    cfg.registry_path = registry;
    cfg.synthetic = synthetic;
    cfg.out = out_path;
    cfg.force_tau = force_tau;
    cfg.jobs = jobs;
    cfg.sizes = sizes;
    cfg.taus = taus;

    if (calib->parsed() || *exp == lfopt::Experiment::CalibCheck) {
      std::optional<double> ups, ufs;
      if (u_phi_star >= 0.0) ups = u_phi_star;
      if (u_fstar >= 0.0) ufs = u_fstar;
      return run_calibcheck(metric, cfg.resolved_tau(), pi, ups, ufs);
    }

    lfopt::RunOutcome outcome;
    switch (*exp) {
      case lfopt::Experiment::Benchmark:
        outcome = lfopt::run_benchmark(cfg);
        break;
      case lfopt::Experiment::Convergence:
        outcome = lfopt::run_convergence(cfg);
        break;
      case lfopt::Experiment::SampleComplexity:
        outcome = lfopt::run_sample_complexity(cfg);
        break;
      case lfopt::Experiment::TauSensitivity:
        outcome = lfopt::run_tau_sensitivity(cfg);
        break;
      case lfopt::Experiment::CalibCheck:
        return kExitInternal;  // handled above
    }
    return emit(outcome, out_path);
  } catch (const lfopt::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
