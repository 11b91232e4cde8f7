#include "lfopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <thread>

#include "lfopt/baselines.hpp"
#include "lfopt/calibration.hpp"
#include "lfopt/errors.hpp"
#include "lfopt/optimizer.hpp"
#include "lfopt/rng.hpp"

namespace lfopt {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

const std::vector<std::string> kAllMethods{"U-GD", "U-BFGS", "ERM", "W-ERM", "Plug-in"};
const std::vector<std::string> kGradientMethods{"U-GD", "U-BFGS"};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string csv_join(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\r\n";
}

struct MeanStderr {
  double mean = kNan;
  double stderr_ = 0.0;
  int count = 0;
};

MeanStderr aggregate(const std::vector<double>& values) {
  MeanStderr out;
  double sum = 0.0;
  for (double v : values) {
    if (std::isfinite(v)) {
      sum += v;
      ++out.count;
    }
  }
  if (out.count == 0) return out;
  out.mean = sum / out.count;
  if (out.count > 1) {
    double ss = 0.0;
    for (double v : values) {
      if (std::isfinite(v)) ss += (v - out.mean) * (v - out.mean);
    }
    out.stderr_ = std::sqrt(ss / (out.count - 1)) / std::sqrt(static_cast<double>(out.count));
  }
  return out;
}

void parallel_trials(int trials, int jobs, const std::function<void(int)>& body) {
  jobs = std::max(1, std::min(jobs, trials));
  if (jobs == 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) body(t);
    });
  }
  for (auto& th : pool) th.join();
}

struct TrialData {
  std::vector<Example> train;
  std::vector<int> test_labels;
  std::vector<std::vector<double>> test_features;
};

Dataset materialize(const DataSource& source, std::uint64_t trial_seed) {
  if (source.fixed) return *source.fixed;
  SyntheticSpec spec = *source.gen;
  spec.seed = trial_seed;
  Dataset ds = generate_synthetic(spec).data;
  ds.name = source.name;
  return ds;
}

TrialData make_trial(const Dataset& full, std::uint64_t trial_seed) {
  auto [train_raw, test_raw] = split(full, 0.8, trial_seed);
  const MinMaxScaler scaler = MinMaxScaler::fit(train_raw);
  const Dataset train = scaler.transform(train_raw);
  const Dataset test = scaler.transform(test_raw);
  TrialData td;
  td.train = to_examples(train);
  td.test_labels = test.labels;
  td.test_features = test.features;
  return td;
}

double sample_prior(const std::vector<Example>& sample) {
  std::size_t pos = 0;
  for (const auto& ex : sample) pos += ex.y > 0;
  return static_cast<double>(pos) / static_cast<double>(sample.size());
}

using ScoreFn = std::function<double(std::span<const double>)>;

double test_utility(const MetricKind& kind, const TrialData& td, const ScoreFn& score) {
  std::vector<double> scores;
  scores.reserve(td.test_features.size());
  for (const auto& x : td.test_features) scores.push_back(score(x));
  try {
    const ConfusionMatrix cm = confusion_from_sample(td.test_labels, scores);
    return metric_direct(kind, cm);
  } catch (const DegenerateMetric&) {
    return kNan;
  }
}

struct GradientRun {
  TrainResult result;
  bool ok = false;
};

// Shared path for U-GD / U-BFGS: resolve the spec on the training prior,
// select the learning rate on a 4:1 split, then train on the full sample.
GradientRun run_gradient_method(const std::string& method, const ExperimentConfig& cfg,
                                double tau, const std::vector<Example>& train,
                                std::uint64_t seed, const InitFactory& init_factory,
                                const ModelEvaluator& eval) {
  GradientRun run;
  const double pi = sample_prior(train);
  if (!(pi > 0.0 && pi < 1.0)) return run;

  const MetricSpec spec = spec_for(cfg.metric, pi);
  const TauDiscrepantLoss loss(tau);
  OptimizerConfig opt;
  opt.max_phase1_iters = cfg.iters;
  opt.max_phase2_iters = cfg.iters;
  opt.phase2_method = method == "U-BFGS" ? Phase2Method::NormalizedBfgs : Phase2Method::Nga;
  opt.seed = seed;

  const LrSelection lr = select_learning_rate(spec, loss, train, cfg.lr_grid, opt, init_factory);
  opt.learning_rate = lr.gamma;
  const SplitSample split_sample = make_split(train, seed + 2);
  run.result = hybrid_train(spec, loss, split_sample, opt, init_factory(train), eval);
  run.ok = true;
  return run;
}

ScoreFn train_method(const std::string& method, const ExperimentConfig& cfg, double tau,
                     const std::vector<Example>& train, std::uint64_t seed) {
  if (method == "U-GD" || method == "U-BFGS") {
    InitFactory init = [](const std::vector<Example>& sample) {
      return erm_hinge(sample, 1e-2, 2000);
    };
    GradientRun run = run_gradient_method(method, cfg, tau, train, seed, init, {});
    if (!run.ok) return {};
    LinearModel model = std::move(run.result.theta);
    return [model](std::span<const double> x) { return predict(model, x); };
  }

  const double pi = sample_prior(train);
  if (!(pi > 0.0 && pi < 1.0)) return {};
  const MetricSpec spec = spec_for(cfg.metric, pi);
  BaselineConfig bc;
  bc.seed = seed;
  if (method == "ERM") {
    LinearModel model = erm_hinge(train, bc.erm_lambda, bc.erm_iters);
    return [model](std::span<const double> x) { return predict(model, x); };
  }
  if (method == "W-ERM") {
    LinearModel model = weighted_erm(train, spec, bc);
    return [model](std::span<const double> x) { return predict(model, x); };
  }
  if (method == "Plug-in") {
    PluginClassifier clf = plugin(train, spec, bc);
    return [clf](std::span<const double> x) { return clf.score(x); };
  }
  throw InvalidInput("unknown method: " + method);
}

void sort_sources(std::vector<DataSource>& sources) {
  std::sort(sources.begin(), sources.end(),
            [](const DataSource& a, const DataSource& b) { return a.name < b.name; });
}

std::vector<std::string> sorted_methods(std::vector<std::string> methods) {
  std::sort(methods.begin(), methods.end());
  return methods;
}

void require_methods(const std::vector<std::string>& methods,
                     const std::vector<std::string>& allowed, const char* what) {
  for (const auto& m : methods) {
    if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
      throw InvalidInput(std::string(what) + ": method '" + m + "' not supported");
    }
  }
}

TauRange metric_tau_range(const MetricKind& kind) {
  switch (kind.family) {
    case MetricKind::Family::FBeta:
      return tau_range_fbeta(kind.param);
    case MetricKind::Family::Jaccard:
      return tau_range_jaccard();
    default:
      // No discrepancy requirement beyond the loss's own (0, 1) domain.
      return TauRange{0.0, 1.0, /*hi_open=*/true};
  }
}

}  // namespace

std::optional<Experiment> experiment_from_name(const std::string& name) {
  if (name == "benchmark") return Experiment::Benchmark;
  if (name == "convergence") return Experiment::Convergence;
  if (name == "sample-complexity") return Experiment::SampleComplexity;
  if (name == "tau-sensitivity") return Experiment::TauSensitivity;
  if (name == "calibcheck") return Experiment::CalibCheck;
  return std::nullopt;
}

double ExperimentConfig::resolved_tau() const {
  if (tau) return *tau;
  switch (metric.family) {
    case MetricKind::Family::FBeta:
      return 0.99 * tau_range_fbeta(metric.param).hi;  // 0.33 at beta = 1
    case MetricKind::Family::Jaccard:
      return 0.75;
    default:
      return 0.33;
  }
}

std::vector<int> ExperimentConfig::resolved_sizes() const {
  if (!sizes.empty()) return sizes;
  std::vector<int> out;
  for (int s = 20; s <= 400; s += 20) out.push_back(s);
  return out;
}

std::vector<double> ExperimentConfig::resolved_taus() const {
  if (!taus.empty()) return taus;
  std::vector<double> out;
  for (int i = 1; i <= 9; ++i) out.push_back(i / 10.0);
  return out;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidInput("config: trials must be >= 1");
  if (iters < 1) throw InvalidInput("config: iters must be >= 1");
  if (jobs < 1) throw InvalidInput("config: jobs must be >= 1");
  if (methods.empty()) throw InvalidInput("config: no methods selected");
  require_methods(methods, kAllMethods, "config");
  if (experiment == Experiment::Convergence || experiment == Experiment::TauSensitivity) {
    require_methods(methods, kGradientMethods, "config");
  }
  if (experiment != Experiment::CalibCheck && datasets.empty() && synthetic.empty()) {
    throw InvalidInput("config: no datasets and no synthetic spec");
  }
  if (lr_grid.empty()) throw InvalidInput("config: empty learning-rate grid");

  const double t = resolved_tau();
  if (!(t > 0.0 && t < 1.0)) throw InvalidInput("config: tau must lie in (0, 1)");
  if (!force_tau && experiment != Experiment::TauSensitivity &&
      !metric_tau_range(metric).contains(t)) {
    throw InvalidInput("config: tau outside the calibration range (use --force-tau to override)");
  }
}

SyntheticSpec parse_synthetic(const std::string& text, std::uint64_t seed) {
  const std::size_t colon = text.find(':');
  const std::string head = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t comma = rest.find(',', pos);
      if (comma == std::string::npos) comma = rest.size();
      const std::string item = rest.substr(pos, comma - pos);
      pos = comma + 1;
      const std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw InvalidInput("synthetic: expected key=value, got " + item);
      try {
        kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw InvalidInput("synthetic: bad value in " + item);
      }
    }
  }
  auto get = [&](const std::string& key, double fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
  };

  SyntheticSpec spec;
  spec.seed = seed;
  spec.n = static_cast<std::size_t>(get("n", 1000));
  if (head == "oracle2") {
    DiscreteDistribution dist;
    dist.points = {{{1.0, 0.0}, 0.9, 0.5}, {{0.0, 1.0}, 0.2, 0.5}};
    spec.kind = dist;
    return spec;
  }
  if (head == "oracle3") {
    DiscreteDistribution dist;
    dist.points = {{{1.0, 0.0}, 0.8, 0.3}, {{0.5, 0.5}, 0.45, 0.3}, {{0.0, 1.0}, 0.1, 0.4}};
    spec.kind = dist;
    return spec;
  }
  if (head == "two-gauss") {
    TwoGaussians g;
    g.dim = static_cast<std::size_t>(get("d", 5));
    if (g.dim == 0) throw InvalidInput("synthetic: d must be positive");
    g.pi = get("pi", 0.5);
    const double sep = get("sep", 2.0);
    const double component = 0.5 * sep / std::sqrt(static_cast<double>(g.dim));
    g.mean_pos.assign(g.dim, component);
    g.mean_neg.assign(g.dim, -component);
    g.covariance.assign(g.dim * g.dim, 0.0);
    for (std::size_t i = 0; i < g.dim; ++i) g.covariance[i * g.dim + i] = 1.0;
    spec.kind = g;
    return spec;
  }
  throw InvalidInput("synthetic: unknown generator '" + head + "'");
}

std::pair<std::vector<DataSource>, std::vector<std::string>> resolve_sources(
    const ExperimentConfig& cfg) {
  std::vector<DataSource> sources;
  std::vector<std::string> skipped;

  if (!cfg.datasets.empty()) {
    std::vector<std::pair<std::string, std::string>> registry;
    try {
      registry = load_registry(cfg.registry_path);
    } catch (const InvalidInput& e) {
      std::cerr << "warning: " << e.what() << "\n";
    }
    for (const auto& name : cfg.datasets) {
      const auto it = std::find_if(registry.begin(), registry.end(),
                                   [&](const auto& p) { return p.first == name; });
      if (it == registry.end()) {
        std::cerr << "warning: dataset '" << name << "' not in registry, skipping\n";
        skipped.push_back(name);
        continue;
      }
      try {
        DataSource src;
        src.name = name;
        src.fixed = load_dataset(it->second, name);
        sources.push_back(std::move(src));
      } catch (const std::exception& e) {
        std::cerr << "warning: dataset '" << name << "': " << e.what() << ", skipping\n";
        skipped.push_back(name);
      }
    }
  }
  if (!cfg.synthetic.empty()) {
    DataSource src;
    src.gen = parse_synthetic(cfg.synthetic, cfg.seed);
    src.name = cfg.synthetic;  // commas would force CSV quoting
    for (auto& ch : src.name) {
      if (ch == ',') ch = ';';
    }
    sources.push_back(std::move(src));
  }
  return {std::move(sources), std::move(skipped)};
}

RunOutcome run_benchmark(const ExperimentConfig& cfg) {
  cfg.validate();
  auto [sources, skipped] = resolve_sources(cfg);
  sort_sources(sources);
  const std::vector<std::string> methods = sorted_methods(cfg.methods);
  const double tau = cfg.resolved_tau();

  std::vector<std::string> lines;
  for (const auto& source : sources) {
    for (const auto& method : methods) {
      std::vector<double> utilities(cfg.trials, kNan);
      parallel_trials(cfg.trials, cfg.jobs, [&](int trial) {
        const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
        try {
          const Dataset full = materialize(source, trial_seed);
          const TrialData td = make_trial(full, trial_seed);
          const ScoreFn score = train_method(method, cfg, tau, td.train, trial_seed);
          if (score) utilities[trial] = test_utility(cfg.metric, td, score);
        } catch (const std::exception& e) {
          std::cerr << "warning: " << source.name << "/" << method << " trial " << trial
                    << ": " << e.what() << "\n";
        }
      });
      const MeanStderr agg = aggregate(utilities);
      lines.push_back(csv_join({source.name, method, cfg.metric.name(), fmt(agg.mean),
                                fmt(agg.stderr_), std::to_string(cfg.trials)}));
    }
  }

  RunOutcome out;
  out.sources_run = static_cast<int>(sources.size());
  out.sources_skipped = static_cast<int>(skipped.size());
  out.csv = csv_join({"dataset", "method", "metric", "mean", "stderr", "trials"});
  for (const auto& line : lines) out.csv += line;
  return out;
}

RunOutcome run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  auto [sources, skipped] = resolve_sources(cfg);
  sort_sources(sources);
  const std::vector<std::string> methods = sorted_methods(cfg.methods);
  const double tau = cfg.resolved_tau();
  const int rows = cfg.iters + 1;

  std::vector<std::string> lines;
  for (const auto& source : sources) {
    for (const auto& method : methods) {
      // trajectories[trial][k] = test utility after k updates (padded).
      std::vector<std::vector<double>> trajectories(cfg.trials,
                                                    std::vector<double>(rows, kNan));
      parallel_trials(cfg.trials, cfg.jobs, [&](int trial) {
        const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
        try {
          const Dataset full = materialize(source, trial_seed);
          const TrialData td = make_trial(full, trial_seed);
          InitFactory init = [&](const std::vector<Example>& sample) {
            LinearModel m;
            Rng rng(trial_seed + 7);
            m.theta.resize(sample.front().x.size());
            for (auto& v : m.theta) v = rng.normal();
            return m;
          };
          ModelEvaluator eval = [&](const LinearModel& model) {
            return test_utility(cfg.metric, td, [&](std::span<const double> x) {
              return predict(model, x);
            });
          };
          GradientRun run =
              run_gradient_method(method, cfg, tau, td.train, trial_seed, init, eval);
          if (!run.ok) return;
          auto& row = trajectories[trial];
          double last = kNan;
          for (int k = 0; k < rows; ++k) {
            if (k < static_cast<int>(run.result.trajectory.size())) {
              last = run.result.trajectory[k].eval;
            }
            row[k] = last;
          }
        } catch (const std::exception& e) {
          std::cerr << "warning: " << source.name << "/" << method << " trial " << trial
                    << ": " << e.what() << "\n";
        }
      });
      for (int k = 0; k < rows; ++k) {
        std::vector<double> at_k(cfg.trials);
        for (int t = 0; t < cfg.trials; ++t) at_k[t] = trajectories[t][k];
        const MeanStderr agg = aggregate(at_k);
        lines.push_back(csv_join({source.name, method, std::to_string(k), fmt(agg.mean),
                                  fmt(agg.stderr_)}));
      }
    }
  }

  RunOutcome out;
  out.sources_run = static_cast<int>(sources.size());
  out.sources_skipped = static_cast<int>(skipped.size());
  out.csv = csv_join({"dataset", "method", "iteration", "mean", "stderr"});
  for (auto& line : lines) out.csv += line;
  return out;
}

RunOutcome run_sample_complexity(const ExperimentConfig& cfg) {
  cfg.validate();
  auto [sources, skipped] = resolve_sources(cfg);
  sort_sources(sources);
  const std::vector<std::string> methods = sorted_methods(cfg.methods);
  const double tau = cfg.resolved_tau();
  const std::vector<int> size_grid = cfg.resolved_sizes();

  std::vector<std::string> lines;
  for (const auto& source : sources) {
    for (const auto& method : methods) {
      for (int size : size_grid) {
        if (size < 2) {
          std::cerr << "warning: subsample size " << size << " < 2, skipping cell\n";
          continue;
        }
        std::vector<double> utilities(cfg.trials, kNan);
        parallel_trials(cfg.trials, cfg.jobs, [&](int trial) {
          const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
          try {
            const Dataset full = materialize(source, trial_seed);
            auto [train_raw, test_raw] = split(full, 0.8, trial_seed);
            if (static_cast<std::size_t>(size) > train_raw.size()) return;

            // Stratification = redraw until both classes show up.
            Dataset sub;
            bool ok = false;
            for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
              const auto idx =
                  shuffled_indices(train_raw.size(), trial_seed + 1000 + attempt);
              sub = Dataset{};
              sub.name = train_raw.name;
              for (int i = 0; i < size; ++i) {
                sub.features.push_back(train_raw.features[idx[i]]);
                sub.labels.push_back(train_raw.labels[idx[i]]);
              }
              const double pi = sub.prior();
              ok = pi > 0.0 && pi < 1.0;
            }
            if (!ok) return;  // cell stays NaN

            const MinMaxScaler scaler = MinMaxScaler::fit(sub);
            TrialData td;
            td.train = to_examples(scaler.transform(sub));
            const Dataset test = scaler.transform(test_raw);
            td.test_labels = test.labels;
            td.test_features = test.features;

            const ScoreFn score = train_method(method, cfg, tau, td.train, trial_seed);
            if (score) utilities[trial] = test_utility(cfg.metric, td, score);
          } catch (const std::exception& e) {
            std::cerr << "warning: " << source.name << "/" << method << " trial "
                      << trial << ": " << e.what() << "\n";
          }
        });
        const MeanStderr agg = aggregate(utilities);
        if (agg.count == 0) {
          std::cerr << "warning: no usable trials for " << source.name << "/" << method
                    << " at size " << size << ", skipping cell\n";
          continue;
        }
        lines.push_back(csv_join({source.name, method, cfg.metric.name(),
                                  std::to_string(size), fmt(agg.mean), fmt(agg.stderr_),
                                  std::to_string(cfg.trials)}));
      }
    }
  }

  RunOutcome out;
  out.sources_run = static_cast<int>(sources.size());
  out.sources_skipped = static_cast<int>(skipped.size());
  out.csv = csv_join({"dataset", "method", "metric", "size", "mean", "stderr", "trials"});
  for (auto& line : lines) out.csv += line;
  return out;
}

RunOutcome run_tau_sensitivity(const ExperimentConfig& cfg) {
  cfg.validate();
  auto [sources, skipped] = resolve_sources(cfg);
  sort_sources(sources);
  const std::vector<std::string> methods = sorted_methods(cfg.methods);
  const TauRange range = metric_tau_range(cfg.metric);

  std::vector<std::string> lines;
  for (const auto& source : sources) {
    for (const auto& method : methods) {
      for (double tau : cfg.resolved_taus()) {
        if (!(tau > 0.0 && tau < 1.0)) {
          throw InvalidInput("config: sensitivity tau values must lie in (0, 1)");
        }
        std::vector<double> utilities(cfg.trials, kNan);
        parallel_trials(cfg.trials, cfg.jobs, [&](int trial) {
          const std::uint64_t trial_seed = cfg.seed + static_cast<std::uint64_t>(trial);
          try {
            const Dataset full = materialize(source, trial_seed);
            const TrialData td = make_trial(full, trial_seed);
            const ScoreFn score = train_method(method, cfg, tau, td.train, trial_seed);
            if (score) utilities[trial] = test_utility(cfg.metric, td, score);
          } catch (const std::exception& e) {
            std::cerr << "warning: " << source.name << "/" << method << " trial "
                      << trial << ": " << e.what() << "\n";
          }
        });
        const MeanStderr agg = aggregate(utilities);
        lines.push_back(csv_join({source.name, method, cfg.metric.name(), fmt(tau),
                                  range.contains(tau) ? "1" : "0", fmt(agg.mean),
                                  fmt(agg.stderr_), std::to_string(cfg.trials)}));
      }
    }
  }

  RunOutcome out;
  out.sources_run = static_cast<int>(sources.size());
  out.sources_skipped = static_cast<int>(skipped.size());
  out.csv = csv_join({"dataset", "method", "metric", "tau", "in_calibration_range",
                      "mean", "stderr", "trials"});
  for (auto& line : lines) out.csv += line;
  return out;
}

}  // namespace lfopt
