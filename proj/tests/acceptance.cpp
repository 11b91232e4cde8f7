// Acceptance suite: runs every binding criterion at its stated tolerance and
// prints one PASS/FAIL line each. Criterion 8 needs user-fetched benchmark
// datasets (data/registry.txt) and reports deviations without failing the
// suite.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "lfopt/baselines.hpp"
#include "lfopt/calibration.hpp"
#include "lfopt/data.hpp"
#include "lfopt/harness.hpp"
#include "lfopt/metrics.hpp"
#include "lfopt/optimizer.hpp"
#include "lfopt/rng.hpp"
#include "lfopt/surrogate.hpp"

using namespace lfopt;

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
int g_failures = 0;

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  if (!pass) ++g_failures;
}

double zero_one(double t) { return t <= 0.0 ? 1.0 : 0.0; }

double w0_true(const MetricSpec& s, double xi, double q) {
  return s.a0_pos * zero_one(-xi) * q + s.a0_neg * zero_one(-xi) * (1.0 - q) + s.b0;
}
double w1_true(const MetricSpec& s, double xi, double q) {
  return s.a1_pos * zero_one(-xi) * q + s.a1_neg * zero_one(-xi) * (1.0 - q) + s.b1;
}

std::vector<double> grad_w0(const MetricSpec& s, const TauDiscrepantLoss& loss,
                            const LinearModel& model, const Example& ex) {
  const double xi = predict(model, ex.x);
  const double c = ex.y > 0 ? -s.a0_pos * loss_derivative(loss, xi)
                            : -s.a0_neg * loss_derivative(loss, -xi);
  std::vector<double> g(ex.x.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = c * ex.x[j];
  return g;
}
std::vector<double> grad_w1(const MetricSpec& s, const TauDiscrepantLoss& loss,
                            const LinearModel& model, const Example& ex) {
  const double xi = predict(model, ex.x);
  const double c = ex.y > 0 ? s.a1_pos * loss_derivative(loss, xi)
                            : -s.a1_neg * loss_derivative(loss, -xi);
  std::vector<double> g(ex.x.size());
  for (std::size_t j = 0; j < g.size(); ++j) g[j] = c * ex.x[j];
  return g;
}

std::vector<MetricSpec> domination_specs(double pi) {
  return {spec_for(MetricKind::fbeta(0.5), pi), spec_for(MetricKind::fbeta(1.0), pi),
          spec_for(MetricKind::fbeta(2.0), pi), spec_for(MetricKind::jaccard(), pi),
          spec_for(MetricKind::accuracy(), pi), spec_for(MetricKind::gower_legendre(1.0), pi)};
}

SplitSample random_split(Rng& rng, std::size_t m, std::size_t k, std::size_t d) {
  SplitSample split;
  for (std::size_t i = 0; i < m + k; ++i) {
    Example ex;
    ex.y = rng.bernoulli(0.5) ? +1 : -1;
    for (std::size_t j = 0; j < d; ++j) ex.x.push_back(rng.uniform(-1.0, 1.0));
    (i < m ? split.s0 : split.s1).push_back(std::move(ex));
  }
  return split;
}

LinearModel random_model(Rng& rng, std::size_t d, double scale = 1.0) {
  LinearModel m;
  for (std::size_t j = 0; j < d; ++j) m.theta.push_back(scale * rng.normal());
  return m;
}

double vec_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

DiscreteDistribution oracle2() {
  DiscreteDistribution d;
  d.points = {{{1.0, 0.0}, 0.9, 0.5}, {{0.0, 1.0}, 0.2, 0.5}};
  return d;
}

DiscreteDistribution oracle3() {
  DiscreteDistribution d;
  d.points = {{{1.0, 0.0}, 0.8, 0.3}, {{0.5, 0.5}, 0.45, 0.3}, {{0.0, 1.0}, 0.1, 0.4}};
  return d;
}

// ---------------------------------------------------------------------------

void criterion1_domination() {
  const TauDiscrepantLoss loss(0.33);
  Rng rng(101);
  bool scores_ok = true;
  const auto specs = domination_specs(0.35);
  for (int i = 0; i < 100000 && scores_ok; ++i) {
    const double xi = rng.uniform(-10.0, 10.0);
    const double q = rng.uniform();
    for (const MetricSpec& s : specs) {
      if (!(score_w0_population(s, loss, xi, q) <= w0_true(s, xi, q)) ||
          !(score_w1_population(s, loss, xi, q) >= w1_true(s, xi, q))) {
        scores_ok = false;
        break;
      }
    }
  }

  int split_checks = 0;
  bool utility_ok = true;
  int attempts = 0;
  while (split_checks < 1000 && attempts < 20000 && utility_ok) {
    ++attempts;
    const SplitSample split = random_split(rng, 8, 8, 3);
    const LinearModel model = random_model(rng, 3);
    double pos = 0;
    for (const auto& ex : split.s0) pos += ex.y > 0;
    for (const auto& ex : split.s1) pos += ex.y > 0;
    const double pi = pos / 16.0;
    if (!(pi > 0.0 && pi < 1.0)) continue;
    const MetricSpec s = spec_for(MetricKind::fbeta(1.0), pi);
    double num01 = 0.0, den01 = 0.0, den_phi = 0.0;
    for (const auto& ex : split.s0) {
      num01 += (ex.y > 0 ? s.a0_pos : s.a0_neg) * zero_one(-predict(model, ex.x)) + s.b0;
    }
    for (const auto& ex : split.s1) {
      const double xi = predict(model, ex.x);
      den01 += (ex.y > 0 ? s.a1_pos : s.a1_neg) * zero_one(-xi) + s.b1;
      den_phi += score_w1(s, loss, xi, ex.y);
    }
    num01 /= split.s0.size();
    den01 /= split.s1.size();
    den_phi /= split.s1.size();
    if (den01 <= 0.0 || den_phi <= 0.0) continue;
    ++split_checks;
    if (!(surrogate_utility(s, loss, model, split) <= num01 / den01 + 1e-12)) {
      utility_ok = false;
    }
  }

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "pointwise scores on 1e5 draws x %zu presets, utility bound on %d splits",
                specs.size(), split_checks);
  report(1, "surrogate domination", scores_ok && utility_ok && split_checks == 1000, detail);
}

void criterion2_gradient_identity() {
  const TauDiscrepantLoss loss(0.33);
  Rng rng(202);
  double worst_fd = 0.0, worst_pair = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const SplitSample split = random_split(rng, 12, 12, 3);
    LinearModel model = random_model(rng, 3);
    const MetricSpec spec = spec_for(MetricKind::fbeta(1.0), 0.45);

    const SurrogateParts parts = surrogate_parts(spec, loss, model, split);
    const GradientDirection v = gradient_direction(spec, loss, model, split);

    std::vector<double> expected(3);
    const double h = 1e-6;
    for (int j = 0; j < 3; ++j) {
      LinearModel up = model, dn = model;
      up.theta[j] += h;
      dn.theta[j] -= h;
      expected[j] = parts.den * parts.den *
                    (surrogate_utility(spec, loss, up, split) -
                     surrogate_utility(spec, loss, dn, split)) / (2.0 * h);
    }
    std::vector<double> diff(3);
    for (int j = 0; j < 3; ++j) diff[j] = v.v[j] - expected[j];
    worst_fd = std::max(worst_fd, vec_norm(diff) / std::max(vec_norm(expected), 1e-12));

    // double-loop oracle against the factorized form
    std::vector<double> slow(3, 0.0);
    for (const auto& zi : split.s0) {
      const double w0 = score_w0(spec, loss, predict(model, zi.x), zi.y);
      const auto g0 = grad_w0(spec, loss, model, zi);
      for (const auto& zj : split.s1) {
        const double w1 = score_w1(spec, loss, predict(model, zj.x), zj.y);
        const auto g1 = grad_w1(spec, loss, model, zj);
        for (int k = 0; k < 3; ++k) slow[k] += w1 * g0[k] - w0 * g1[k];
      }
    }
    for (int k = 0; k < 3; ++k) {
      slow[k] /= static_cast<double>(split.s0.size()) * split.s1.size();
      worst_pair = std::max(worst_pair, std::abs(slow[k] - v.v[k]));
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max FD relative error %.3g (<= 1e-4), max double-loop gap %.3g (<= 1e-10)",
                worst_fd, worst_pair);
  report(2, "gradient identity", worst_fd <= 1e-4 && worst_pair <= 1e-10, detail);
}

void criterion3_unbiasedness() {
  const TauDiscrepantLoss loss(0.33);
  const DiscreteDistribution dist = oracle3();
  const MetricSpec spec = spec_for(MetricKind::fbeta(1.0), dist.implied_prior());
  Rng theta_rng(303);
  bool ok = true;
  double worst_t = 0.0;
  for (int rep = 0; rep < 5; ++rep) {
    const LinearModel theta = random_model(theta_rng, 2);

    double ew0 = 0.0, ew1 = 0.0;
    std::vector<double> eg0(2, 0.0), eg1(2, 0.0);
    for (const auto& p : dist.points) {
      const double xi = predict(theta, p.x);
      ew0 += p.mass * (p.eta * score_w0(spec, loss, xi, +1) +
                       (1.0 - p.eta) * score_w0(spec, loss, xi, -1));
      ew1 += p.mass * (p.eta * score_w1(spec, loss, xi, +1) +
                       (1.0 - p.eta) * score_w1(spec, loss, xi, -1));
      const Example pos{p.x, +1}, neg{p.x, -1};
      const auto g0p = grad_w0(spec, loss, theta, pos), g0n = grad_w0(spec, loss, theta, neg);
      const auto g1p = grad_w1(spec, loss, theta, pos), g1n = grad_w1(spec, loss, theta, neg);
      for (int j = 0; j < 2; ++j) {
        eg0[j] += p.mass * (p.eta * g0p[j] + (1.0 - p.eta) * g0n[j]);
        eg1[j] += p.mass * (p.eta * g1p[j] + (1.0 - p.eta) * g1n[j]);
      }
    }
    std::vector<double> analytic(2);
    for (int j = 0; j < 2; ++j) analytic[j] = ew1 * eg0[j] - ew0 * eg1[j];

    const int resamples = 10000, n = 50;
    std::vector<std::vector<double>> draws(2, std::vector<double>(resamples));
    for (int r = 0; r < resamples; ++r) {
      SyntheticSpec gen;
      gen.kind = dist;
      gen.n = n;
      gen.seed = 400000ull + rep * 100000ull + r;
      const Dataset sample = generate_synthetic(gen).data;
      SplitSample split;
      for (int i = 0; i < n; ++i) {
        (i < n / 2 ? split.s0 : split.s1).push_back({sample.features[i], sample.labels[i]});
      }
      const GradientDirection v = gradient_direction(spec, loss, theta, split);
      for (int j = 0; j < 2; ++j) draws[j][r] = v.v[j];
    }
    for (int j = 0; j < 2; ++j) {
      double mean = 0.0;
      for (double v : draws[j]) mean += v;
      mean /= resamples;
      double var = 0.0;
      for (double v : draws[j]) var += (v - mean) * (v - mean);
      var /= (resamples - 1);
      const double t = std::abs(mean - analytic[j]) / std::sqrt(var / resamples);
      worst_t = std::max(worst_t, t);
      if (t > 3.0) ok = false;
    }
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail), "worst |t| = %.2f over 5 thetas x 2 components (<= 3)",
                worst_t);
  report(3, "unbiased gradient direction", ok, detail);
}

void criterion4_concavity() {
  const TauDiscrepantLoss loss(0.33);
  Rng rng(404);
  const SplitSample split = random_split(rng, 25, 25, 3);
  const MetricSpec spec = spec_for(MetricKind::fbeta(1.0), 0.5);

  bool midpoint_ok = true;
  for (int rep = 0; rep < 1000 && midpoint_ok; ++rep) {
    const LinearModel a = random_model(rng, 3, 2.0);
    const LinearModel b = random_model(rng, 3, 2.0);
    LinearModel mid{{0, 0, 0}};
    for (int j = 0; j < 3; ++j) mid.theta[j] = 0.5 * (a.theta[j] + b.theta[j]);
    const double lhs = surrogate_numerator(spec, loss, mid, split.s0);
    const double rhs = 0.5 * (surrogate_numerator(spec, loss, a, split.s0) +
                              surrogate_numerator(spec, loss, b, split.s0));
    if (!(lhs >= rhs - 1e-10)) midpoint_ok = false;
  }

  // level sets along segments inside the positive-numerator region
  SyntheticSpec gen;
  TwoGaussians g;
  g.dim = 3;
  g.mean_pos = {0.8, 0.8, 0.8};
  g.mean_neg = {-0.8, -0.8, -0.8};
  g.covariance = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  g.pi = 0.5;
  gen.kind = g;
  gen.n = 60;
  gen.seed = 4040;
  const Dataset ds = generate_synthetic(gen).data;
  const SplitSample gsplit = make_split(to_examples(ds), 1);
  const MetricSpec gspec = spec_for(MetricKind::fbeta(1.0), ds.prior());

  bool quasi_ok = true;
  int segments = 0, attempts = 0;
  while (segments < 100 && attempts < 20000 && quasi_ok) {
    ++attempts;
    LinearModel a{{1.0, 1.0, 1.0}}, b{{1.0, 1.0, 1.0}};
    for (int j = 0; j < 3; ++j) {
      a.theta[j] += rng.normal();
      b.theta[j] += rng.normal();
    }
    if (surrogate_numerator(gspec, loss, a, gsplit.s0) <= 0.0) continue;
    if (surrogate_numerator(gspec, loss, b, gsplit.s0) <= 0.0) continue;
    const double alpha = std::min(surrogate_utility(gspec, loss, a, gsplit),
                                  surrogate_utility(gspec, loss, b, gsplit));
    ++segments;
    for (int s = 1; s < 10; ++s) {
      const double w = s / 10.0;
      LinearModel mid{{0, 0, 0}};
      for (int j = 0; j < 3; ++j) mid.theta[j] = (1 - w) * a.theta[j] + w * b.theta[j];
      if (!(surrogate_utility(gspec, loss, mid, gsplit) >= alpha - 1e-9)) quasi_ok = false;
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "midpoint concavity on 1000 pairs, level sets on %d segments", segments);
  report(4, "concavity and quasi-concavity", midpoint_ok && quasi_ok && segments == 100,
         detail);
}

void criterion5_tau() {
  bool ok = true;
  std::string note;

  for (double tau : {0.1, 0.33, 0.5, 0.75, 0.9}) {
    const TauDiscrepantLoss loss(tau);
    const double ratio = loss_derivative(loss, 1e-300) / loss_derivative(loss, 0.0);
    if (std::abs(ratio - tau) > 1e-12) {
      ok = false;
      note = "derivative ratio off";
    }
  }

  const TauRange r = tau_range_fbeta(1.0);
  if (!(r.lo == 0.0 && std::abs(r.hi - 1.0 / 3.0) <= 1e-15 && !r.hi_open &&
        r.contains(1.0 / 3.0) && !r.contains(0.34))) {
    ok = false;
    note = "f1 range wrong";
  }

  for (const MetricSpec& s :
       {spec_for(MetricKind::fbeta(1.0), 0.4), spec_for(MetricKind::jaccard(), 0.4)}) {
    const CalibrationReport rep = check_general(s, 0.2);
    for (const auto& c : rep.conditions) {
      if (c.name.rfind("cond1", 0) == 0 || c.name.rfind("cond2", 0) == 0 ||
          c.name.rfind("cond3", 0) == 0 || c.name.rfind("cond4", 0) == 0 ||
          c.name.rfind("cond5", 0) == 0) {
        if (c.verdict != Verdict::Satisfied) {
          ok = false;
          note = "coefficient condition " + c.name + " not satisfied";
        }
      }
    }
  }
  report(5, "tau discrepancy and calibration ranges", ok,
         ok ? "ratio exact to 1e-12; ranges and conditions (1)-(5) hold" : note);
}

void criterion6_oracle_convergence() {
  const DiscreteDistribution dist = oracle2();
  const double oracle =
      bayes_optimal_discrete(spec_for(MetricKind::fbeta(1.0), dist.implied_prior()), dist)
          .utility;

  SyntheticSpec gen;
  gen.kind = dist;
  gen.n = 10000;
  gen.seed = 606;
  const Dataset train = generate_synthetic(gen).data;
  gen.seed = 607;
  const Dataset test = generate_synthetic(gen).data;

  const TauDiscrepantLoss loss(0.33);
  const MetricSpec spec = spec_for(MetricKind::fbeta(1.0), train.prior());
  bool ok = true;
  char detail[200];
  std::string values;
  for (Phase2Method method : {Phase2Method::Nga, Phase2Method::NormalizedBfgs}) {
    OptimizerConfig cfg;
    cfg.phase2_method = method;
    cfg.max_phase1_iters = 300;
    cfg.max_phase2_iters = 300;
    cfg.seed = 608;
    InitFactory init = [](const std::vector<Example>& sample) {
      return erm_hinge(sample, 1e-2, 2000);
    };
    const std::vector<Example> examples = to_examples(train);
    const LrSelection lr = select_learning_rate(spec, loss, examples,
                                                {1e1, 1e-1, 1e-3, 1e-5}, cfg, init);
    cfg.learning_rate = lr.gamma;
    const TrainResult fit =
        hybrid_train(spec, loss, make_split(examples, 609), cfg, init(examples));

    std::vector<double> scores;
    for (const auto& x : test.features) scores.push_back(predict(fit.theta, x));
    const double u =
        metric_direct(MetricKind::fbeta(1.0), confusion_from_sample(test.labels, scores));
    values += (method == Phase2Method::Nga ? "U-GD " : "U-BFGS ") + std::to_string(u) + " ";
    if (!(u >= oracle - 0.02 && fit.phase2_iters <= 300)) ok = false;
  }
  std::snprintf(detail, sizeof(detail), "%starget %.6f - 0.02", values.c_str(), oracle);
  report(6, "oracle convergence on the two-point distribution", ok, detail);
}

void criterion7_consistency_trend() {
  const TauDiscrepantLoss loss(0.33);
  const DiscreteDistribution dist = oracle3();
  const MetricSpec spec = spec_for(MetricKind::fbeta(1.0), dist.implied_prior());

  Rng theta_rng(707);
  std::vector<LinearModel> thetas;
  for (int i = 0; i < 50; ++i) thetas.push_back(random_model(theta_rng, 2, 1.5));

  // analytic population direction per theta
  auto population_v = [&](const LinearModel& theta) {
    double ew0 = 0.0, ew1 = 0.0;
    std::vector<double> eg0(2, 0.0), eg1(2, 0.0);
    for (const auto& p : dist.points) {
      const double xi = predict(theta, p.x);
      ew0 += p.mass * (p.eta * score_w0(spec, loss, xi, +1) +
                       (1.0 - p.eta) * score_w0(spec, loss, xi, -1));
      ew1 += p.mass * (p.eta * score_w1(spec, loss, xi, +1) +
                       (1.0 - p.eta) * score_w1(spec, loss, xi, -1));
      const Example pos{p.x, +1}, neg{p.x, -1};
      const auto g0p = grad_w0(spec, loss, theta, pos), g0n = grad_w0(spec, loss, theta, neg);
      const auto g1p = grad_w1(spec, loss, theta, pos), g1n = grad_w1(spec, loss, theta, neg);
      for (int j = 0; j < 2; ++j) {
        eg0[j] += p.mass * (p.eta * g0p[j] + (1.0 - p.eta) * g0n[j]);
        eg1[j] += p.mass * (p.eta * g1p[j] + (1.0 - p.eta) * g1n[j]);
      }
    }
    std::vector<double> v(2);
    for (int j = 0; j < 2; ++j) v[j] = ew1 * eg0[j] - ew0 * eg1[j];
    return v;
  };
  std::vector<std::vector<double>> population;
  for (const auto& theta : thetas) population.push_back(population_v(theta));

  auto sup_gap_at = [&](std::size_t n, std::uint64_t seed) {
    SyntheticSpec gen;
    gen.kind = dist;
    gen.n = n;
    gen.seed = seed;
    const Dataset sample = generate_synthetic(gen).data;
    SplitSample split;
    for (std::size_t i = 0; i < n; ++i) {
      (i < n / 2 ? split.s0 : split.s1).push_back({sample.features[i], sample.labels[i]});
    }
    double sup = 0.0;
    for (std::size_t t = 0; t < thetas.size(); ++t) {
      const GradientDirection v = gradient_direction(spec, loss, thetas[t], split);
      std::vector<double> diff(2);
      for (int j = 0; j < 2; ++j) diff[j] = v.v[j] - population[t][j];
      sup = std::max(sup, vec_norm(diff));
    }
    return sup;
  };

  double small = 0.0, large = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    small += sup_gap_at(1000, 70000 + seed);
    large += sup_gap_at(4000, 80000 + seed);
  }
  small /= 20.0;
  large /= 20.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "mean sup-gap n=4000: %.5f vs 0.6 x n=1000: %.5f",
                large, 0.6 * small);
  report(7, "root-n consistency trend", large <= 0.6 * small, detail);
}

void criterion8_benchmark_spot_checks() {
  const char* registry = "data/registry.txt";
  if (!std::ifstream(registry).good()) {
    std::printf("[SKIP] criterion 8: benchmark spot checks (optional; %s not found)\n",
                registry);
    return;
  }

  struct Check {
    const char* dataset;
    MetricKind metric;
    const char* method;
    double target;
    double tol;
  };
  const std::vector<Check> checks = {
      {"breast-cancer", MetricKind::fbeta(1.0), "U-GD", 0.963, 0.02},
      {"breast-cancer", MetricKind::fbeta(1.0), "U-BFGS", 0.960, 0.02},
      {"breast-cancer", MetricKind::fbeta(1.0), "Plug-in", 0.953, 0.02},
      {"diabetes", MetricKind::jaccard(), "U-GD", 0.714, 0.03},
  };
  for (const auto& check : checks) {
    ExperimentConfig cfg;
    cfg.metric = check.metric;
    cfg.methods = {check.method};
    cfg.trials = 50;
    cfg.registry_path = registry;
    cfg.datasets = {check.dataset};
    cfg.seed = 808;
    const RunOutcome out = run_benchmark(cfg);
    if (out.sources_run == 0) {
      std::printf("[SKIP] criterion 8: %s not loadable\n", check.dataset);
      continue;
    }
    // parse the single data row: mean is column 4 (0-based 3)
    double mean = kNan;
    std::size_t pos = out.csv.find("\r\n");
    if (pos != std::string::npos) {
      const std::string row = out.csv.substr(pos + 2);
      int col = 0;
      std::size_t start = 0;
      for (std::size_t i = 0; i <= row.size(); ++i) {
        if (i == row.size() || row[i] == ',' || row[i] == '\r') {
          if (col == 3) mean = std::atof(row.substr(start, i - start).c_str());
          ++col;
          start = i + 1;
          if (row[i] == '\r') break;
        }
      }
    }
    const bool within = std::abs(mean - check.target) <= check.tol;
    // reported, never a hard failure: seeding and optimizer details differ
    std::printf("[%s] criterion 8: %s %s %s mean=%.4f target=%.3f+-%.3f\n",
                within ? "PASS" : "NOTE", check.dataset, check.metric.name().c_str(),
                check.method, mean, check.target, check.tol);
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  criterion1_domination();
  criterion2_gradient_identity();
  criterion3_unbiasedness();
  criterion4_concavity();
  criterion5_tau();
  criterion6_oracle_convergence();
  criterion7_consistency_trend();
  criterion8_benchmark_spot_checks();
  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s (%d failing, %llds)\n", g_failures == 0 ? "ALL BINDING CRITERIA PASS" : "FAILURES PRESENT",
              g_failures, static_cast<long long>(seconds));
  return g_failures == 0 ? 0 : 1;
}
